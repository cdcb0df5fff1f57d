// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

/* C interface to the nlse-comb solvers.
 *
 * Units: hbar = m = 1. Every function returns an nlse_status; on failure the
 * message is available from nlse_last_error() on the calling thread. Handles
 * are opaque and released with the matching *_free function (NULL is a
 * no-op). */

#ifndef NLSE_NLSE_H
#define NLSE_NLSE_H

#include <stddef.h>
#include <stdint.h>

#if defined(NLSE_BUILDING_LIBRARY)
#define NLSE_API __attribute__((visibility("default")))
#else
#define NLSE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nlse_status {
    NLSE_OK = 0,
    NLSE_ERR_DOMAIN = 1,
    NLSE_ERR_CONVERGENCE = 2,
    NLSE_ERR_POLE = 3,
    NLSE_ERR_NEAR_POLE = 4,
    NLSE_ERR_DEGENERATE = 5,
    NLSE_ERR_RECOVERY = 6,
    NLSE_ERR_REDUNDANCY = 7,
    NLSE_ERR_UNPHYSICAL = 8,
    NLSE_ERR_SCALING_ANGLE = 9,
    NLSE_ERR_CONTOUR_MISMATCH = 10,
    NLSE_ERR_NUMERICAL = 11,
    NLSE_ERR_CONFIG = 12,
    NLSE_ERR_IO = 13,
    NLSE_ERR_INVALID_ARGUMENT = 100,
    NLSE_ERR_INDEX = 101,
    NLSE_ERR_INTERNAL = 102
} nlse_status;

NLSE_API const char* nlse_version(void);
NLSE_API const char* nlse_status_name(nlse_status status);
/* Message of the last failure on this thread, "" if none. */
NLSE_API const char* nlse_last_error(void);

typedef struct nlse_potential {
    int n;         /* number of barriers */
    double lambda; /* barrier strength */
    double d;      /* spacing */
} nlse_potential;

/* n = 2, lambda = 10, d = 2 */
NLSE_API nlse_potential nlse_potential_default(void);

/* ---- elliptic functions ---------------------------------------------- */

typedef struct nlse_complex {
    double re;
    double im;
} nlse_complex;

NLSE_API nlse_status nlse_jacobi(nlse_complex u, nlse_complex p, nlse_complex* sn, nlse_complex* cn,
                                 nlse_complex* dn);
NLSE_API nlse_status nlse_complete_K(nlse_complex p, nlse_complex* K);

/* ---- linear comb ------------------------------------------------------ */

typedef struct nlse_resonance {
    int n;
    int l;
    double mu;
    double gamma;
} nlse_resonance;

NLSE_API nlse_status nlse_transmission_linear(const nlse_potential* spec, double mu, double* tsq);
/* Writes up to capacity resonances below mu_max; *count receives the total. */
NLSE_API nlse_status nlse_find_resonances(const nlse_potential* spec, double mu_max, nlse_resonance* out,
                                          size_t capacity, size_t* count);

/* ---- nonlinear transfer map ------------------------------------------- */

typedef struct nlse_transfer_config {
    nlse_potential spec;
    double g;
    double A;
    int grid_points;
    double csq_max_factor; /* |C|^2 search range in units of |A|^2 */
    double tolerance;
    int exact_kc; /* nonzero: downstream wavenumber from the full dispersion */
    int threads;  /* 0: NLSE_THREADS or hardware concurrency */
} nlse_transfer_config;

NLSE_API nlse_transfer_config nlse_transfer_config_default(void);

typedef struct nlse_branch_point {
    double mu;
    double Csq;
    double Tsq;
    double residual;
    int branch_id;
    int stable; /* 1 stable, 0 unstable, -1 unknown */
} nlse_branch_point;

typedef struct nlse_branch_set nlse_branch_set;

/* Roots at every mu, labelled by branch. */
NLSE_API nlse_status nlse_transfer_sweep(const nlse_transfer_config* cfg, const double* mus, size_t count,
                                         nlse_branch_set** out);
NLSE_API size_t nlse_branch_set_size(const nlse_branch_set* set);
NLSE_API nlse_status nlse_branch_set_get(const nlse_branch_set* set, size_t index, nlse_branch_point* point);
NLSE_API void nlse_branch_set_free(nlse_branch_set* set);

/* Sorts by (mu, Tsq) and assigns branch_id in place. */
NLSE_API nlse_status nlse_assemble_branches(nlse_branch_point* points, size_t count);

typedef struct nlse_profile nlse_profile;

/* samples >= 2 points on [-d, n d] for the solution with outgoing |C|^2 = csq. */
NLSE_API nlse_status nlse_density_profile(const nlse_transfer_config* cfg, double mu, double csq, int samples,
                                          nlse_profile** out);
NLSE_API size_t nlse_profile_size(const nlse_profile* profile);
NLSE_API nlse_status nlse_profile_get(const nlse_profile* profile, size_t index, double* x, double* S,
                                      double* phase);
NLSE_API int nlse_profile_phase_warning(const nlse_profile* profile);
NLSE_API void nlse_profile_free(nlse_profile* profile);

/* Left-right asymmetry of the density inside the comb. */
NLSE_API nlse_status nlse_asymmetry(const nlse_transfer_config* cfg, double mu, double csq, double* alpha);

/* ---- Siegert resonances ---------------------------------------------- */

typedef struct nlse_mode_info {
    int n;
    int l;
    double mu;
    double gamma;
    nlse_complex k;
    nlse_complex a; /* u(0) */
    nlse_complex B; /* u(x_R) */
    double theta_c;
    double residual;
    int iterations;
} nlse_mode_info;

typedef struct nlse_mode_set nlse_mode_set;

/* Normalized modes seeded from the first resonance group, with overlaps. */
NLSE_API nlse_status nlse_siegert_modes(const nlse_potential* spec, double theta_c, nlse_mode_set** out);
NLSE_API size_t nlse_mode_set_size(const nlse_mode_set* set);
NLSE_API nlse_status nlse_mode_set_get(const nlse_mode_set* set, size_t index, nlse_mode_info* info);
NLSE_API nlse_status nlse_mode_set_overlap(const nlse_mode_set* set, int j, int i, int l, int m, nlse_complex* w);
NLSE_API void nlse_mode_set_free(nlse_mode_set* set);

/* ---- few-mode oscillator --------------------------------------------- */

typedef struct nlse_oscillator_config {
    double g;
    double A;
    uint64_t seed;
    int random_draws;
    int coarse_points;
    int threads;
} nlse_oscillator_config;

NLSE_API nlse_oscillator_config nlse_oscillator_config_default(void);

typedef struct nlse_osc_point {
    double mu;
    double Tsq;
    double residual;
    double max_growth;
    int growth_modes;
    int stable;
    int branch_id;
} nlse_osc_point;

typedef struct nlse_osc_sweep nlse_osc_sweep;

NLSE_API nlse_status nlse_oscillator_sweep(const nlse_mode_set* modes, const nlse_oscillator_config* cfg,
                                           double mu_min, double mu_max, int mu_steps, nlse_osc_sweep** out);
NLSE_API size_t nlse_osc_sweep_size(const nlse_osc_sweep* sweep);
/* Number of mode occupations per point. */
NLSE_API size_t nlse_osc_sweep_modes(const nlse_osc_sweep* sweep);
NLSE_API nlse_status nlse_osc_sweep_get(const nlse_osc_sweep* sweep, size_t index, nlse_osc_point* point,
                                        double* occupations);
NLSE_API void nlse_osc_sweep_free(nlse_osc_sweep* sweep);

/* Positive |T|^2 roots of the single-mode model for mode `index`, at most 3. */
NLSE_API nlse_status nlse_nonlinear_lorentzian(const nlse_mode_set* modes, size_t index, double g, double A,
                                               double mu, double* roots, size_t* count);

#ifdef __cplusplus
}
#endif

#endif /* NLSE_NLSE_H */
