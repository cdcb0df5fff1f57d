// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "nlse/elliptic.hpp"
#include "nlse/linear.hpp"

namespace nlse {

struct ScatterContext {
    double mu = 1.0;
    double g = 0.0;
    double A = 0.1;
    PotentialSpec spec;

    void validate() const;
    [[nodiscard]] double k() const { return wavenumber(mu); }
};

/// Density S, its derivative S' and the conserved current j at one position.
struct DensityState {
    double S = 0.0;
    double Sp = 0.0;
    double j = 0.0;
};

/// S(x) = eps + phi dn^2(rho (x - x0) + delta | p), possibly complex.
struct EllipticParams {
    cplx eps{0.0};
    cplx phi{0.0};
    cplx rho{0.0};
    cplx delta{0.0};
    cplx p{0.0};
};

/// One assignment of the three turning densities (roots of the density cubic)
/// to the roles (s_a, s_b, s_c) = (eps, eps + phi, eps + phi (1 - p)).
struct Parametrization {
    EllipticParams params;  // delta left at zero, see recover_params
    EllipticTriple at_ref;  // (sn, cn, dn) at the reference point
    cplx phi_p{0.0};        // phi p = s_b - s_c
    double sp_residual = 0.0;
};

struct EllipticRecoveryOptions {
    /// Propagate every admissible parametrization and require them to agree.
    bool verify_redundancy = false;
};

/// The three roots of g e^3 - 2 mu e^2 + (S'^2/4S + j^2/S + 2 mu S - g S^2) e - j^2.
std::array<cplx, 3> density_cubic_roots(const DensityState& state, double mu_eff, double g);

/// Admissible parametrizations, primary one first. Throws DegenerateError for
/// S <= 0 or g = 0 and RecoveryError when none reproduces (S, S').
std::vector<Parametrization> parametrizations(const DensityState& state, double mu_eff, double g);

/// Primary parametrization with the phase delta at the reference point x0 = 0,
/// so that eps + phi dn^2(delta | p) = S and the derivative matches S'.
EllipticParams recover_params(const DensityState& state, double mu_eff, double g);

/// Density and derivative of the elliptic solution at x (relative to x0 = 0).
DensityState evaluate_params(const EllipticParams& params, double x, double j);

/// Transport (S, S') by dx through a region of constant potential.
DensityState propagate_constant(const DensityState& state, double mu_eff, double g, double dx,
                                const EllipticRecoveryOptions& opts = {});

/// g = 0 (S, S') transport, used for the linear limit and the upstream region.
DensityState propagate_linear(const DensityState& state, double mu_eff, double dx);

/// Matching across a delta barrier of strength lambda: S' -> S' - 4 lambda S.
DensityState delta_jump(const DensityState& state, double lambda);

struct TransferOptions {
    bool exact_kc = false;
    EllipticRecoveryOptions recovery;
};

/// Downstream wavenumber sqrt(2 (mu - g |C|^2)); UnphysicalError if not real positive.
double downstream_wavenumber(const ScatterContext& ctx, double Csq);

/// Transport the outgoing plane wave |C|^2 from the right of the last barrier
/// to the left of the first one.
DensityState transfer_multi(const ScatterContext& ctx, double Csq, const TransferOptions& opts = {});

/// 4 k^2 S(0-) |A|^2 - S'(0-)^2/4 - (k_eff |C|^2 + k S(0-))^2, zero at a
/// scattering solution. k_eff = k unless exact_kc is set.
double upstream_residual(const ScatterContext& ctx, double Csq, const TransferOptions& opts = {});

/// |T|^2 = j_t / j_in for a root |C|^2.
double transmission_from_csq(const ScatterContext& ctx, double Csq, const TransferOptions& opts = {});

struct BranchPoint {
    double mu = 0.0;
    double Csq = 0.0;
    double Tsq = 0.0;
    double residual = 0.0;  // upstream residual at the root in units of (k |A|^2)^2
    int branch_id = -1;
    std::optional<bool> stable;
};

struct SolverOptions {
    int grid_points = 4000;
    /// Upper end of the |C|^2 grid in units of |A|^2.
    double csq_max_factor = 1.05;
    double tolerance = 1e-12;
    TransferOptions transfer;
};

/// All roots of the upstream residual on (0, csq_max_factor |A|^2], ascending in |C|^2.
std::vector<BranchPoint> solve_branches(const ScatterContext& ctx, const SolverOptions& opts = {});

struct ProfileSample {
    double x = 0.0;
    double S = 0.0;
    double Phi = 0.0;
};

struct DensityProfile {
    std::vector<ProfileSample> samples;
    bool phase_warning = false;  // S came close to zero, Phi is unreliable
};

/// Density at x for the solution with outgoing |C|^2.
double density_at(const ScatterContext& ctx, double Csq, double x, const TransferOptions& opts = {});

/// samples points on [-d, n d] with the phase Phi' = j/S integrated from x = -d.
DensityProfile density_profile(const ScatterContext& ctx, double Csq, int samples,
                               const TransferOptions& opts = {});

/// int_0^L |S(x) - S(L - x)| dx / int_0^L S dx with L = (n - 1) d.
double asymmetry(const ScatterContext& ctx, double Csq, int intervals = 2000,
                 const TransferOptions& opts = {});

/// mu in [mu_lo, mu_hi] closest to full transmission |C|^2 = |A|^2, by
/// maximizing the (non-positive) residual there.
double refine_full_transmission(const ScatterContext& ctx, double mu_lo, double mu_hi,
                                const TransferOptions& opts = {});

struct BranchExtremum {
    double mu = 0.0;
    double Csq = 0.0;
};

/// Local maximum of |C|^2 along the branch through (mu0, Csq0), searched in
/// [mu0 - dmu, mu0 + dmu].
BranchExtremum refine_branch_maximum(const ScatterContext& ctx, double mu0, double Csq0, double dmu,
                                     const TransferOptions& opts = {});

}  // namespace nlse
