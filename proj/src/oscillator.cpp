// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#include "nlse/oscillator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "nlse/branches.hpp"
#include "nlse/error.hpp"
#include "nlse/parallel.hpp"
#include "polynomial.hpp"

namespace nlse {
namespace {

const cplx kI(0.0, 1.0);

void check_sizes(const std::vector<SiegertMode>& modes, const OverlapTensor& w, std::size_t nc) {
    if (modes.empty() || w.size != static_cast<int>(modes.size()) || nc != modes.size()) {
        throw DomainError("oscillator: modes, overlaps and coefficients differ in size");
    }
}

double max_norm(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const cplx& x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

struct Blocks {
    Eigen::MatrixXcd M11;
    Eigen::MatrixXcd M12;
};

// Derivatives of the residual with respect to c (M11) and conj(c) (M12).
Blocks linearization(const std::vector<SiegertMode>& modes, const OverlapTensor& w, double mu, double g,
                     const std::vector<cplx>& c) {
    const int n = static_cast<int>(modes.size());
    Blocks b{Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n)};
    for (int j = 0; j < n; ++j) {
        b.M11(j, j) = modes[j].eigenvalue - mu;
        for (int a = 0; a < n; ++a) {
            cplx s11 = 0.0;
            cplx s12 = 0.0;
            for (int i = 0; i < n; ++i) {
                for (int m = 0; m < n; ++m) {
                    s11 += std::conj(c[i]) * c[m] * w(j, i, a, m);
                    s12 += c[i] * c[m] * w(j, a, i, m);
                }
            }
            b.M11(j, a) += 2.0 * g * s11;
            b.M12(j, a) = g * s12;
        }
    }
    return b;
}

bool same_state(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    return diff <= 1e-7 * std::max({max_norm(a), max_norm(b), 1e-300});
}

}  // namespace

cplx source_strength(double mu, double A) {
    if (!(mu > 0.0)) {
        throw DomainError("source_strength: needs mu > 0");
    }
    return kI * std::sqrt(2.0 * mu) * A;
}

std::vector<cplx> decoupled_solution(const std::vector<SiegertMode>& modes, double mu, double A) {
    const cplx f0 = source_strength(mu, A);
    std::vector<cplx> c;
    c.reserve(modes.size());
    for (const auto& m : modes) {
        c.push_back(-kI * f0 * m.a / (m.eigenvalue - mu));
    }
    return c;
}

std::vector<cplx> galerkin_residual(const std::vector<SiegertMode>& modes, const OverlapTensor& w, double mu, double g,
                                    double A, const std::vector<cplx>& c) {
    check_sizes(modes, w, c.size());
    const int n = static_cast<int>(modes.size());
    const cplx f0 = source_strength(mu, A);
    std::vector<cplx> F(n);
    for (int j = 0; j < n; ++j) {
        cplx nl = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int l = 0; l < n; ++l) {
                for (int m = 0; m < n; ++m) {
                    nl += std::conj(c[i]) * c[l] * c[m] * w(j, i, l, m);
                }
            }
        }
        F[j] = (modes[j].eigenvalue - mu) * c[j] + g * nl + kI * f0 * modes[j].a;
    }
    return F;
}

double galerkin_transmission(const std::vector<SiegertMode>& modes, const std::vector<cplx>& c, double mu, double A) {
    cplx psi = 0.0;
    cplx dpsi = 0.0;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        psi += c[j] * modes[j].B;
        dpsi += c[j] * kI * modes[j].k * modes[j].B;
    }
    return (std::conj(psi) * dpsi).imag() / (std::sqrt(2.0 * mu) * A * A);
}

GalerkinState galerkin_solve(const std::vector<SiegertMode>& modes, const OverlapTensor& w, double mu, double g,
                             double A, const std::vector<cplx>& c_seed, const GalerkinOptions& opts) {
    check_sizes(modes, w, c_seed.size());
    const int n = static_cast<int>(modes.size());
    GalerkinState st;
    st.mu = mu;
    st.g = g;
    st.f0 = source_strength(mu, A);
    st.c = c_seed;
    auto F = galerkin_residual(modes, w, mu, g, A, st.c);
    double res = max_norm(F);
    constexpr double accept = 1e-10;
    int it = 0;
    bool failed = false;
    for (; it < opts.max_iterations && !(res < opts.tolerance); ++it) {
        const Blocks b = linearization(modes, w, mu, g, st.c);
        const Eigen::MatrixXcd P = b.M11 + b.M12;
        const Eigen::MatrixXcd Q = kI * (b.M11 - b.M12);
        Eigen::MatrixXd R(2 * n, 2 * n);
        R << P.real(), Q.real(), P.imag(), Q.imag();
        Eigen::VectorXd rhs(2 * n);
        for (int j = 0; j < n; ++j) {
            rhs[j] = F[j].real();
            rhs[n + j] = F[j].imag();
        }
        const Eigen::VectorXd step = R.fullPivLu().solve(rhs);
        if (!step.allFinite()) {
            failed = true;
            break;
        }
        double t = 1.0;
        bool improved = false;
        std::vector<cplx> trial(n);
        std::vector<cplx> Ft;
        double trial_res = res;
        for (int h = 0; h < 10; ++h) {
            for (int j = 0; j < n; ++j) {
                trial[j] = st.c[j] - t * cplx(step[j], step[n + j]);
            }
            Ft = galerkin_residual(modes, w, mu, g, A, trial);
            trial_res = max_norm(Ft);
            if (trial_res < res) {
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if (!improved) {
            failed = !(res < accept);
            break;
        }
        st.c = trial;
        F = Ft;
        res = trial_res;
    }
    st.iterations = it;
    st.residual = res;
    st.converged = !failed && res < accept;
    st.occupations.clear();
    for (const cplx& x : st.c) {
        st.occupations.push_back(std::norm(x));
    }
    st.Tsq = galerkin_transmission(modes, st.c, mu, A);
    return st;
}

namespace {

struct LorentzCoefficients {
    double alpha, beta, N, delta, gamma;
};

LorentzCoefficients lorentz_coefficients(const SiegertMode& mode, cplx w1111, double g, double A, double mu) {
    const double k = std::sqrt(2.0 * mu);
    const double kappa = std::norm(mode.B) * mode.k.real() / (k * A * A);
    if (!(kappa > 0.0)) {
        throw DomainError("nonlinear_lorentzian: mode has no outgoing flux");
    }
    return {g * w1111.real() / kappa, g * w1111.imag() / kappa, kappa * k * k * A * A * std::norm(mode.a),
            mode.mu() - mu, 0.5 * mode.gamma()};
}

}  // namespace

std::vector<double> nonlinear_lorentzian(const SiegertMode& mode, cplx w1111, double g, double A, double mu) {
    const auto L = lorentz_coefficients(mode, w1111, g, A, mu);
    const double a3 = L.alpha * L.alpha + L.beta * L.beta;
    const double a2 = 2.0 * (L.alpha * L.delta - L.beta * L.gamma);
    const double a1 = L.delta * L.delta + L.gamma * L.gamma;
    const double a0 = -L.N;
    if (a3 == 0.0) {
        return {L.N / a1};
    }
    const auto poly = [&](double t) { return ((a3 * t + a2) * t + a1) * t + a0; };
    const auto dpoly = [&](double t) { return (3.0 * a3 * t + 2.0 * a2) * t + a1; };
    std::vector<double> roots;
    for (const cplx& r : detail::cubic_roots(a3, a2, a1, a0)) {
        if (std::abs(r.imag()) > 1e-7 * std::max(1.0, std::abs(r.real()))) {
            continue;
        }
        double t = r.real();
        for (int i = 0; i < 4; ++i) {
            const double d = dpoly(t);
            if (d == 0.0) {
                break;
            }
            const double nt = t - poly(t) / d;
            if (!(std::abs(poly(nt)) < std::abs(poly(t)))) {
                break;
            }
            t = nt;
        }
        if (t > 0.0) {
            roots.push_back(t);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, y); }),
                roots.end());
    return roots;
}

Skeleton skeleton(const SiegertMode& mode, cplx w1111, double g, double A, double mu, double Tsq) {
    const auto L = lorentz_coefficients(mode, w1111, g, A, mu);
    return {mode.mu() + L.alpha * Tsq, 2.0 * (L.gamma - L.beta * Tsq)};
}

StabilityReport bdg_stability(const GalerkinState& state, const std::vector<SiegertMode>& modes,
                              const OverlapTensor& w) {
    check_sizes(modes, w, state.c.size());
    const int n = static_cast<int>(modes.size());
    const Blocks b = linearization(modes, w, state.mu, state.g, state.c);
    Eigen::MatrixXcd H(2 * n, 2 * n);
    H << b.M11, b.M12, -b.M12.conjugate(), -b.M11.conjugate();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H, false);
    if (es.info() != Eigen::Success) {
        throw NumericalError("bdg_stability: eigen solver failed");
    }
    StabilityReport rep;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const cplx om = es.eigenvalues()[i];
        rep.eigenfrequencies.push_back(om);
        if (om.imag() > 1e-9) {
            ++rep.growth_modes;
        }
        rep.max_growth = std::max(rep.max_growth, om.imag());
    }
    std::sort(rep.eigenfrequencies.begin(), rep.eigenfrequencies.end(), [](cplx x, cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    rep.unstable = rep.max_growth > 1e-9;
    return rep;
}

std::vector<OscillatorPoint> sweep_oscillator(const std::vector<SiegertMode>& modes, const OverlapTensor& w,
                                              double mu_min, double mu_max, int mu_steps, double g, double A,
                                              const OscillatorSweepOptions& opts, int threads) {
    if (modes.empty() || w.size != static_cast<int>(modes.size())) {
        throw DomainError("sweep_oscillator: modes and overlaps differ in size");
    }
    if (!(mu_min > 0.0) || !(mu_max > mu_min) || mu_steps < 2) {
        throw DomainError("sweep_oscillator: needs 0 < mu_min < mu_max and mu_steps >= 2");
    }
    const int n = static_cast<int>(modes.size());
    double gamma_min = modes.front().gamma();
    for (const auto& m : modes) {
        gamma_min = std::min(gamma_min, m.gamma());
    }
    const double step = std::min((mu_max - mu_min) / (mu_steps - 1), gamma_min / 20.0);
    const int nf = static_cast<int>(std::ceil((mu_max - mu_min) / step - 1e-9)) + 1;
    const std::vector<double> mus = linspace(mu_min, mu_max, std::max(nf, 2));
    const int count = static_cast<int>(mus.size());

    std::vector<std::vector<GalerkinState>> sols(count);
    auto add = [&](int i, const GalerkinState& s) {
        if (!s.converged) {
            return false;
        }
        for (const auto& o : sols[i]) {
            if (same_state(o.c, s.c)) {
                return false;
            }
        }
        sols[i].push_back(s);
        return true;
    };

    // Random multi-mode seeds on a coarse subset of the grid.
    const int coarse = std::clamp(opts.coarse_points, 2, count);
    std::vector<int> coarse_idx;
    for (int q = 0; q < coarse; ++q) {
        coarse_idx.push_back(static_cast<int>(std::lround(static_cast<double>(q) * (count - 1) / (coarse - 1))));
    }
    std::vector<std::vector<GalerkinState>> seeded(coarse);
    parallel_for(
        coarse,
        [&](std::size_t q) {
            const int i = coarse_idx[q];
            const double mu = mus[i];
            const double k = std::sqrt(2.0 * mu);
            std::seed_seq ss{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                             static_cast<std::uint32_t>(i)};
            std::mt19937_64 rng(ss);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            std::vector<GalerkinState> found;
            auto keep = [&](const GalerkinState& s) {
                if (!s.converged) {
                    return;
                }
                for (const auto& o : found) {
                    if (same_state(o.c, s.c)) {
                        return;
                    }
                }
                found.push_back(s);
            };
            keep(galerkin_solve(modes, w, mu, g, A, decoupled_solution(modes, mu, A), opts.newton));
            for (int r = 0; r < opts.random_draws; ++r) {
                std::vector<cplx> c(n);
                for (int j = 0; j < n; ++j) {
                    const double peak = 1.5 * k * A * std::abs(modes[j].a) / (0.5 * modes[j].gamma());
                    const double rad = peak * std::sqrt(unit(rng));
                    const double phase = 2.0 * 3.141592653589793 * unit(rng);
                    c[j] = std::polar(rad, phase);
                }
                keep(galerkin_solve(modes, w, mu, g, A, c, opts.newton));
            }
            seeded[q] = std::move(found);
        },
        threads);
    for (int q = 0; q < coarse; ++q) {
        for (const auto& s : seeded[q]) {
            add(coarse_idx[q], s);
        }
    }

    // Continuation: every known state seeds Newton at the neighbouring mu.
    auto sweep = [&](int from, int to, int dir) {
        bool grew = false;
        for (int i = from; i != to; i += dir) {
            const int prev = i - dir;
            const std::size_t known = sols[prev].size();
            for (std::size_t s = 0; s < known; ++s) {
                const auto seed = sols[prev][s].c;
                grew |= add(i, galerkin_solve(modes, w, mus[i], g, A, seed, opts.newton));
            }
        }
        return grew;
    };
    for (int pass = 0; pass < std::max(opts.passes, 1); ++pass) {
        const bool fwd = sweep(1, count, 1);
        const bool bwd = sweep(count - 2, -1, -1);
        if (!fwd && !bwd) {
            break;
        }
    }

    std::vector<OscillatorPoint> out;
    for (int i = 0; i < count; ++i) {
        for (const auto& s : sols[i]) {
            out.push_back({s, {}, -1});
        }
    }
    parallel_for(
        out.size(), [&](std::size_t p) { out[p].stability = bdg_stability(out[p].state, modes, w); }, threads);
    std::stable_sort(out.begin(), out.end(), [](const OscillatorPoint& a, const OscillatorPoint& b) {
        if (a.state.mu != b.state.mu) {
            return a.state.mu < b.state.mu;
        }
        return a.state.Tsq < b.state.Tsq;
    });
    std::vector<BranchPoint> bp;
    bp.reserve(out.size());
    for (const auto& p : out) {
        BranchPoint b;
        b.mu = p.state.mu;
        b.Tsq = p.state.Tsq;
        b.Csq = 0.0;
        for (double o : p.state.occupations) {
            b.Csq += o;
        }
        b.residual = p.state.residual;
        b.stable = !p.stability.unstable;
        bp.push_back(b);
    }
    assemble_branches(bp);
    for (std::size_t p = 0; p < out.size(); ++p) {
        out[p].branch_id = bp[p].branch_id;
    }
    return out;
}

}  // namespace nlse
