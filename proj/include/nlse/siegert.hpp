// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#pragma once

#include <vector>

#include "nlse/elliptic.hpp"
#include "nlse/linear.hpp"

namespace nlse {

/// Purely outgoing resonance state of the delta comb,
///   u = a e^{-ikx}                 x < 0
///   u = I_j sin(kx + theta_j)      (j-1) d < x < j d
///   u = B e^{ik(x - x_R)}          x > x_R = (n-1) d
/// with eigenvalue k^2/2 = mu_j - i Gamma_j/2.
struct SiegertMode {
    PotentialSpec spec;
    int l = 0;  // index of the seeding linear resonance within its group
    cplx k{0.0};
    cplx eigenvalue{0.0};
    std::vector<cplx> I;
    std::vector<cplx> theta;
    cplx a{1.0};
    cplx B{0.0};
    double theta_c = 0.0;
    bool normalized = false;
    double residual = 0.0;  // max-norm of the matching conditions
    int iterations = 0;
    bool seed_mismatch = false;  // converged farther than 3 widths from the seed

    [[nodiscard]] double mu() const { return eigenvalue.real(); }
    [[nodiscard]] double gamma() const { return -2.0 * eigenvalue.imag(); }
};

struct SiegertOptions {
    int max_iterations = 100;
    double tolerance = 1e-12;
};

/// Newton solve of the matching conditions seeded from a linear resonance.
/// The result has a = 1 and is not normalized. Throws DomainError for n < 2
/// and ConvergenceError if Newton fails.
SiegertMode solve_siegert(const PotentialSpec& spec, double seed_mu, double seed_gamma,
                          const SiegertOptions& opts = {});

/// Matching-condition residuals for an arbitrary (k, theta, I).
std::vector<cplx> siegert_residual(const PotentialSpec& spec, cplx k, const std::vector<cplx>& theta,
                                   const std::vector<cplx>& I);

/// Analytic Jacobian of siegert_residual, row-major, unknowns ordered
/// (k, theta_1..theta_{n-1}, I_1..I_{n-1}).
std::vector<std::vector<cplx>> siegert_jacobian(const PotentialSpec& spec, cplx k, const std::vector<cplx>& theta,
                                                const std::vector<cplx>& I);

/// |u'(0-) + i k u(0)| and |u'(x_R+) - i k u(x_R)| with u' taken from the
/// interior and carried across the outer barriers, relative to |u|.
double siegert_boundary_residual(const SiegertMode& mode);

/// u(x) and u'(x) on the real axis (exterior tails by analytic formula).
cplx mode_value(const SiegertMode& mode, double x);
cplx mode_derivative(const SiegertMode& mode, double x);

/// Rescale so that int u^2 dx = 1 along the contour rotated by theta_c
/// outside [0, x_R]. Tails are integrated in closed form, the interior by
/// adaptive Gauss-Kronrod. Throws ScalingAngleError if the rotated tails do
/// not decay.
SiegertMode normalize_with_ecs(const SiegertMode& mode, double theta_c = 0.6);

/// int_0^inf exp(i K s e^{i theta}) e^{i theta} ds in closed form (= i/K).
/// Throws ScalingAngleError when Im(K e^{i theta}) <= 0.
cplx rotated_tail(cplx K, double theta_c);

/// The same integral by adaptive quadrature along the rotated ray.
cplx rotated_tail_quadrature(cplx K, double theta_c);

/// int_0^{x_R} f(x) dx for the product u_j ubar_i u_l u_m, or u^2 with the
/// default arguments, by adaptive Gauss-Kronrod on every segment.
cplx interior_integral(const std::vector<const SiegertMode*>& plain, const std::vector<const SiegertMode*>& barred,
                       double tolerance = 1e-11);

/// Modes seeded from every resonance of the first group, normalized at
/// theta_c; duplicates (eigenvalues within 1e-8) are merged.
std::vector<SiegertMode> first_group_modes(const PotentialSpec& spec, double theta_c = 0.6,
                                           const SiegertOptions& opts = {});

/// w(j; i, l, m) = int u_j ubar_i u_l u_m dx over the scaled contour, where
/// ubar(x) = conj(u(conj x)) continues the complex conjugate off the real axis.
struct OverlapTensor {
    int size = 0;
    double theta_c = 0.0;
    std::vector<cplx> w;

    [[nodiscard]] cplx operator()(int j, int i, int l, int m) const {
        return w[((static_cast<std::size_t>(j) * size + i) * size + l) * size + m];
    }
};

/// Throws ContourMismatchError unless all modes are normalized with the same
/// theta_c, ScalingAngleError if a tail diverges for some index tuple.
OverlapTensor overlaps(const std::vector<SiegertMode>& modes);

}  // namespace nlse
