// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#pragma once

#include <cstdint>
#include <vector>

#include "nlse/siegert.hpp"

namespace nlse {

/// Stationary solution of the few-mode model
///   (E_j - mu) c_j + g sum_{ilm} conj(c_i) c_l c_m w(j; i,l,m) = -i f0 a_j
/// with E_j the Siegert eigenvalues, a_j = u_j(0) and f0 = i k A.
struct GalerkinState {
    std::vector<cplx> c;
    double mu = 0.0;
    double g = 0.0;
    cplx f0{0.0};
    double Tsq = 0.0;
    std::vector<double> occupations;  // |c_j|^2
    double residual = 0.0;            // max-norm of the model equations
    int iterations = 0;
    bool converged = false;
};

struct StabilityReport {
    std::vector<cplx> eigenfrequencies;
    bool unstable = false;
    double max_growth = 0.0;  // largest positive Im(omega), 0 if none
    int growth_modes = 0;     // eigenfrequencies with Im(omega) > 1e-9
};

struct GalerkinOptions {
    int max_iterations = 60;
    double tolerance = 1e-13;
};

/// Source amplitude f0 = i k A with k = sqrt(2 mu).
cplx source_strength(double mu, double A);

/// Closed-form solution of the decoupled g = 0 equations.
std::vector<cplx> decoupled_solution(const std::vector<SiegertMode>& modes, double mu, double A);

/// Residual of the model equations at coefficients c.
std::vector<cplx> galerkin_residual(const std::vector<SiegertMode>& modes, const OverlapTensor& w, double mu, double g,
                                    double A, const std::vector<cplx>& c);

/// Transmission j_t / j_in from the skeleton wave function at x_R.
double galerkin_transmission(const std::vector<SiegertMode>& modes, const std::vector<cplx>& c, double mu, double A);

/// Damped Newton from c_seed. On failure the last iterate is returned with
/// converged = false.
GalerkinState galerkin_solve(const std::vector<SiegertMode>& modes, const OverlapTensor& w, double mu, double g,
                             double A, const std::vector<cplx>& c_seed, const GalerkinOptions& opts = {});

/// Single-mode nonlinear Lorentzian: positive real roots of the cubic in |T|^2,
/// ascending.
std::vector<double> nonlinear_lorentzian(const SiegertMode& mode, cplx w1111, double g, double A, double mu);

/// Skeleton curves of the single-mode model at a given |T|^2: position mu_sk
/// and width Gamma_sk.
struct Skeleton {
    double mu = 0.0;
    double gamma = 0.0;
};
Skeleton skeleton(const SiegertMode& mode, cplx w1111, double g, double A, double mu, double Tsq);

/// Bogoliubov-de Gennes spectrum of a converged state. Throws NumericalError
/// if the eigen solver fails.
StabilityReport bdg_stability(const GalerkinState& state, const std::vector<SiegertMode>& modes,
                              const OverlapTensor& w);

struct OscillatorPoint {
    GalerkinState state;
    StabilityReport stability;
    int branch_id = -1;
};

struct OscillatorSweepOptions {
    int random_draws = 64;     // multi-mode random seeds per coarse point
    int coarse_points = 41;    // mu values that receive random seeds
    std::uint64_t seed = 20260101;
    int passes = 3;            // alternating forward/backward continuation passes
    GalerkinOptions newton;
};

/// All stationary states found on the refined mu grid covering [mu_min,
/// mu_max]. The step is the smaller of the requested spacing and
/// Gamma_min/20. Points are ordered by (mu, Tsq) and labelled by branch.
std::vector<OscillatorPoint> sweep_oscillator(const std::vector<SiegertMode>& modes, const OverlapTensor& w,
                                              double mu_min, double mu_max, int mu_steps, double g, double A,
                                              const OscillatorSweepOptions& opts = {}, int threads = 0);

}  // namespace nlse
