// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#include "nlse/siegert.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlse/error.hpp"

namespace nlse {
namespace {

const cplx kI(0.0, 1.0);

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

struct Layout {
    int segments;
    [[nodiscard]] int size() const { return 2 * segments + 1; }
    [[nodiscard]] int theta(int j) const { return j; }             // j = 1..segments
    [[nodiscard]] int amp(int j) const { return segments + j; }     // j = 1..segments
};

Eigen::VectorXcd residual_vec(const PotentialSpec& spec, const Eigen::VectorXcd& z) {
    const Layout L{spec.n - 1};
    const double lam = spec.lambda;
    const double d = spec.d;
    const cplx k = z[0];
    Eigen::VectorXcd F(L.size());
    const cplx t1 = z[L.theta(1)];
    const cplx I1 = z[L.amp(1)];
    F[0] = I1 * std::sin(t1) - 1.0;
    F[1] = k * I1 * std::cos(t1) - 2.0 * lam + kI * k;
    for (int b = 1; b < L.segments; ++b) {
        const double x = b * d;
        const cplx Ib = z[L.amp(b)];
        const cplx In = z[L.amp(b + 1)];
        const cplx sb = std::sin(k * x + z[L.theta(b)]);
        const cplx cb = std::cos(k * x + z[L.theta(b)]);
        const cplx sn = std::sin(k * x + z[L.theta(b + 1)]);
        const cplx cn = std::cos(k * x + z[L.theta(b + 1)]);
        F[2 * b] = Ib * sb - In * sn;
        F[2 * b + 1] = k * In * cn - k * Ib * cb - 2.0 * lam * Ib * sb;
    }
    const int N = L.segments;
    const double xr = N * d;
    const cplx IN = z[L.amp(N)];
    const cplx s = std::sin(k * xr + z[L.theta(N)]);
    const cplx c = std::cos(k * xr + z[L.theta(N)]);
    F[2 * N] = IN * (k * c + 2.0 * lam * s - kI * k * s);
    return F;
}

Eigen::MatrixXcd jacobian(const PotentialSpec& spec, const Eigen::VectorXcd& z) {
    const Layout L{spec.n - 1};
    const double lam = spec.lambda;
    const double d = spec.d;
    const cplx k = z[0];
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(L.size(), L.size());
    const cplx t1 = z[L.theta(1)];
    const cplx I1 = z[L.amp(1)];
    J(0, L.theta(1)) = I1 * std::cos(t1);
    J(0, L.amp(1)) = std::sin(t1);
    J(1, 0) = I1 * std::cos(t1) + kI;
    J(1, L.theta(1)) = -k * I1 * std::sin(t1);
    J(1, L.amp(1)) = k * std::cos(t1);
    for (int b = 1; b < L.segments; ++b) {
        const double x = b * d;
        const cplx Ib = z[L.amp(b)];
        const cplx In = z[L.amp(b + 1)];
        const cplx sb = std::sin(k * x + z[L.theta(b)]);
        const cplx cb = std::cos(k * x + z[L.theta(b)]);
        const cplx sn = std::sin(k * x + z[L.theta(b + 1)]);
        const cplx cn = std::cos(k * x + z[L.theta(b + 1)]);
        const int r0 = 2 * b;
        J(r0, 0) = Ib * x * cb - In * x * cn;
        J(r0, L.theta(b)) = Ib * cb;
        J(r0, L.theta(b + 1)) = -In * cn;
        J(r0, L.amp(b)) = sb;
        J(r0, L.amp(b + 1)) = -sn;
        const int r1 = 2 * b + 1;
        J(r1, 0) = In * cn - k * In * x * sn - Ib * cb + k * Ib * x * sb - 2.0 * lam * Ib * x * cb;
        J(r1, L.theta(b + 1)) = -k * In * sn;
        J(r1, L.theta(b)) = k * Ib * sb - 2.0 * lam * Ib * cb;
        J(r1, L.amp(b + 1)) = k * cn;
        J(r1, L.amp(b)) = -k * cb - 2.0 * lam * sb;
    }
    const int N = L.segments;
    const double xr = N * d;
    const cplx IN = z[L.amp(N)];
    const cplx s = std::sin(k * xr + z[L.theta(N)]);
    const cplx c = std::cos(k * xr + z[L.theta(N)]);
    const int r = 2 * N;
    J(r, 0) = IN * (c - k * xr * s + 2.0 * lam * xr * c - kI * s - kI * k * xr * c);
    J(r, L.theta(N)) = IN * (-k * s + 2.0 * lam * c - kI * k * c);
    J(r, L.amp(N)) = k * c + 2.0 * lam * s - kI * k * s;
    return J;
}

// Segment data by propagating u(0) = 1 outward with the given k.
Eigen::VectorXcd seed_vector(const PotentialSpec& spec, cplx k) {
    const Layout L{spec.n - 1};
    Eigen::VectorXcd z(L.size());
    z[0] = k;
    cplx u = 1.0;
    cplx du = -kI * k + 2.0 * spec.lambda;
    for (int j = 1; j <= L.segments; ++j) {
        const double x0 = (j - 1) * spec.d;
        cplx ratio = k * u / du;
        if (!finite(ratio)) {
            ratio = 1e12;
        }
        const cplx phase = std::atan(ratio);
        z[L.theta(j)] = phase - k * x0;
        z[L.amp(j)] = u / std::sin(phase);
        const double x1 = j * spec.d;
        u = z[L.amp(j)] * std::sin(k * x1 + z[L.theta(j)]);
        du = k * z[L.amp(j)] * std::cos(k * x1 + z[L.theta(j)]) + 2.0 * spec.lambda * u;
    }
    return z;
}

double max_norm(const Eigen::VectorXcd& v) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        m = std::max(m, std::abs(v[i]));
    }
    return m;
}

int segment_of(const SiegertMode& mode, double x) {
    const int N = mode.spec.n - 1;
    const int j = static_cast<int>(std::floor(x / mode.spec.d)) + 1;
    return std::clamp(j, 1, N);
}

}  // namespace

namespace {

Eigen::VectorXcd pack(const PotentialSpec& spec, cplx k, const std::vector<cplx>& theta, const std::vector<cplx>& I) {
    const Layout L{spec.n - 1};
    if (spec.n < 2 || static_cast<int>(theta.size()) != L.segments || static_cast<int>(I.size()) != L.segments) {
        throw DomainError("siegert system needs n >= 2 and n - 1 segment values");
    }
    Eigen::VectorXcd z(L.size());
    z[0] = k;
    for (int j = 1; j <= L.segments; ++j) {
        z[L.theta(j)] = theta[j - 1];
        z[L.amp(j)] = I[j - 1];
    }
    return z;
}

}  // namespace

std::vector<cplx> siegert_residual(const PotentialSpec& spec, cplx k, const std::vector<cplx>& theta,
                                   const std::vector<cplx>& I) {
    const Eigen::VectorXcd F = residual_vec(spec, pack(spec, k, theta, I));
    return {F.data(), F.data() + F.size()};
}

std::vector<std::vector<cplx>> siegert_jacobian(const PotentialSpec& spec, cplx k, const std::vector<cplx>& theta,
                                                const std::vector<cplx>& I) {
    const Eigen::MatrixXcd J = jacobian(spec, pack(spec, k, theta, I));
    std::vector<std::vector<cplx>> out(J.rows(), std::vector<cplx>(J.cols()));
    for (Eigen::Index r = 0; r < J.rows(); ++r) {
        for (Eigen::Index c = 0; c < J.cols(); ++c) {
            out[r][c] = J(r, c);
        }
    }
    return out;
}

SiegertMode solve_siegert(const PotentialSpec& spec, double seed_mu, double seed_gamma, const SiegertOptions& opts) {
    spec.validate();
    if (spec.n < 2) {
        throw DomainError("solve_siegert: a single barrier has no resonances");
    }
    if (!(seed_mu > 0.0) || !(seed_gamma >= 0.0)) {
        throw DomainError("solve_siegert: needs seed_mu > 0 and seed_gamma >= 0");
    }
    const Layout L{spec.n - 1};
    Eigen::VectorXcd z = seed_vector(spec, std::sqrt(2.0 * cplx(seed_mu, -0.5 * seed_gamma)));
    Eigen::VectorXcd F = residual_vec(spec, z);
    double res = max_norm(F);
    int it = 0;
    for (; it < opts.max_iterations && !(res < opts.tolerance); ++it) {
        const Eigen::MatrixXcd J = jacobian(spec, z);
        const Eigen::VectorXcd step = J.fullPivLu().solve(F);
        double t = 1.0;
        Eigen::VectorXcd trial;
        double trial_res = std::numeric_limits<double>::infinity();
        for (int h = 0; h < 10; ++h) {
            trial = z - t * step;
            trial_res = max_norm(residual_vec(spec, trial));
            if (trial_res < res) {
                break;
            }
            t *= 0.5;
        }
        if (!(trial_res < res)) {
            // Stagnation at roundoff: accept if already tiny.
            if (res < 1e3 * opts.tolerance) {
                break;
            }
            std::ostringstream os;
            os << "solve_siegert: Newton stalled at residual " << res << " after " << it << " iterations";
            throw ConvergenceError(os.str());
        }
        z = trial;
        F = residual_vec(spec, z);
        res = trial_res;
    }
    if (!(res < 1e3 * opts.tolerance)) {
        std::ostringstream os;
        os << "solve_siegert: no convergence after " << it << " iterations, residual " << res;
        throw ConvergenceError(os.str());
    }
    SiegertMode mode;
    mode.spec = spec;
    mode.k = z[0];
    if (mode.k.real() < 0.0) {
        throw ConvergenceError("solve_siegert: converged to an incoming (Re k < 0) solution");
    }
    mode.eigenvalue = 0.5 * mode.k * mode.k;
    for (int j = 1; j <= L.segments; ++j) {
        mode.theta.push_back(z[L.theta(j)]);
        mode.I.push_back(z[L.amp(j)]);
    }
    mode.a = 1.0;
    const double xr = spec.length();
    mode.B = mode.I.back() * std::sin(mode.k * xr + mode.theta.back());
    mode.residual = res;
    mode.iterations = it;
    mode.seed_mismatch = std::abs(mode.mu() - seed_mu) > 3.0 * std::max(seed_gamma, mode.gamma());
    return mode;
}

cplx mode_value(const SiegertMode& mode, double x) {
    const double xr = mode.spec.length();
    if (x < 0.0) {
        return mode.a * std::exp(-kI * mode.k * x);
    }
    if (x > xr) {
        return mode.B * std::exp(kI * mode.k * (x - xr));
    }
    const int j = segment_of(mode, x);
    return mode.I[j - 1] * std::sin(mode.k * x + mode.theta[j - 1]);
}

cplx mode_derivative(const SiegertMode& mode, double x) {
    const double xr = mode.spec.length();
    if (x < 0.0) {
        return -kI * mode.k * mode.a * std::exp(-kI * mode.k * x);
    }
    if (x > xr) {
        return kI * mode.k * mode.B * std::exp(kI * mode.k * (x - xr));
    }
    const int j = segment_of(mode, x);
    return mode.k * mode.I[j - 1] * std::cos(mode.k * x + mode.theta[j - 1]);
}

double siegert_boundary_residual(const SiegertMode& mode) {
    const double lam = mode.spec.lambda;
    const double xr = mode.spec.length();
    const int N = mode.spec.n - 1;
    const cplx u0 = mode.I[0] * std::sin(mode.theta[0]);
    const cplx du0 = mode.k * mode.I[0] * std::cos(mode.theta[0]) - 2.0 * lam * u0;
    const cplx uR = mode.I[N - 1] * std::sin(mode.k * xr + mode.theta[N - 1]);
    const cplx duR = mode.k * mode.I[N - 1] * std::cos(mode.k * xr + mode.theta[N - 1]) + 2.0 * lam * uR;
    const double scale = std::abs(mode.k) * std::max(std::abs(u0), std::abs(uR));
    return std::max(std::abs(du0 + kI * mode.k * u0), std::abs(duR - kI * mode.k * uR)) / scale;
}

cplx rotated_tail(cplx K, double theta_c) {
    const cplx rot = K * std::exp(kI * theta_c);
    if (!(rot.imag() > 0.0)) {
        std::ostringstream os;
        os << "rotated tail diverges: Im(K e^{i theta_c}) = " << rot.imag() << " for theta_c = " << theta_c;
        throw ScalingAngleError(os.str());
    }
    return kI / K;
}

cplx rotated_tail_quadrature(cplx K, double theta_c) {
    const cplx e = std::exp(kI * theta_c);
    if (!((K * e).imag() > 0.0)) {
        throw ScalingAngleError("rotated_tail_quadrature: divergent integrand");
    }
    auto f = [&](double s) { return std::exp(kI * K * s * e) * e; };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, 0.0, std::numeric_limits<double>::infinity(), 20, 1e-14);
}

cplx interior_integral(const std::vector<const SiegertMode*>& plain, const std::vector<const SiegertMode*>& barred,
                       double tolerance) {
    if (plain.empty()) {
        throw DomainError("interior_integral: needs at least one mode");
    }
    const PotentialSpec& spec = plain.front()->spec;
    auto f = [&](double x) {
        cplx v = 1.0;
        for (const auto* m : plain) {
            v *= mode_value(*m, x);
        }
        for (const auto* m : barred) {
            v *= std::conj(mode_value(*m, x));
        }
        return v;
    };
    cplx total = 0.0;
    for (int j = 1; j < spec.n; ++j) {
        const double a = (j - 1) * spec.d;
        const double b = j * spec.d;
        // Evaluate strictly inside the segment so the piece formula is used.
        auto g = [&](double x) { return f(std::clamp(x, a, std::nextafter(b, a))); };
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 15, tolerance);
    }
    return total;
}

SiegertMode normalize_with_ecs(const SiegertMode& mode, double theta_c) {
    const cplx tail = rotated_tail(2.0 * mode.k, theta_c);
    const cplx interior = interior_integral({&mode, &mode}, {}, 1e-13);
    const cplx norm = interior + (mode.a * mode.a + mode.B * mode.B) * tail;
    if (!(std::abs(norm) > 0.0) || !finite(norm)) {
        throw NumericalError("normalize_with_ecs: vanishing or non-finite norm");
    }
    const cplx scale = 1.0 / std::sqrt(norm);
    SiegertMode out = mode;
    for (auto& v : out.I) {
        v *= scale;
    }
    out.a *= scale;
    out.B *= scale;
    out.theta_c = theta_c;
    out.normalized = true;
    return out;
}

std::vector<SiegertMode> first_group_modes(const PotentialSpec& spec, double theta_c, const SiegertOptions& opts) {
    std::vector<SiegertMode> out;
    for (const auto& r : first_group(spec)) {
        SiegertMode m = solve_siegert(spec, r.mu_r, r.gamma, opts);
        m.l = r.l;
        const bool dup = std::any_of(out.begin(), out.end(), [&](const SiegertMode& o) {
            return std::abs(o.eigenvalue - m.eigenvalue) < 1e-8;
        });
        if (!dup) {
            out.push_back(normalize_with_ecs(m, theta_c));
        }
    }
    return out;
}

OverlapTensor overlaps(const std::vector<SiegertMode>& modes) {
    if (modes.empty()) {
        throw DomainError("overlaps: no modes");
    }
    const double theta_c = modes.front().theta_c;
    for (const auto& m : modes) {
        if (!m.normalized) {
            throw ContourMismatchError("overlaps: mode is not normalized");
        }
        if (m.theta_c != theta_c) {
            throw ContourMismatchError("overlaps: modes normalized on different contours");
        }
    }
    const int n = static_cast<int>(modes.size());
    OverlapTensor T;
    T.size = n;
    T.theta_c = theta_c;
    T.w.assign(static_cast<std::size_t>(n) * n * n * n, cplx(0.0));
    auto at = [&](int j, int i, int l, int m) -> cplx& {
        return T.w[((static_cast<std::size_t>(j) * n + i) * n + l) * n + m];
    };
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            for (int l = 0; l < n; ++l) {
                for (int m = l; m < n; ++m) {
                    const auto& uj = modes[j];
                    const auto& ui = modes[i];
                    const auto& ul = modes[l];
                    const auto& um = modes[m];
                    const cplx K = uj.k - std::conj(ui.k) + ul.k + um.k;
                    const cplx tail = rotated_tail(K, theta_c);
                    const cplx left = uj.a * std::conj(ui.a) * ul.a * um.a;
                    const cplx right = uj.B * std::conj(ui.B) * ul.B * um.B;
                    const cplx v = interior_integral({&uj, &ul, &um}, {&ui}) + (left + right) * tail;
                    at(j, i, l, m) = v;
                    at(j, i, m, l) = v;
                }
            }
        }
    }
    return T;
}

}  // namespace nlse
