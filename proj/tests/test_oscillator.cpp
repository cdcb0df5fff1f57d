// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "nlse/error.hpp"
#include "nlse/linear.hpp"
#include "nlse/oscillator.hpp"

using nlse::cplx;
using nlse::SiegertMode;

namespace {

struct Basis {
    std::vector<SiegertMode> modes;
    nlse::OverlapTensor w;
};

const Basis& basis(int n) {
    static std::map<int, Basis> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        Basis b;
        b.modes = nlse::first_group_modes({n, 10.0, 2.0});
        b.w = nlse::overlaps(b.modes);
        it = cache.emplace(n, std::move(b)).first;
    }
    return it->second;
}

double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const cplx& x : v) m = std::max(m, std::abs(x));
    return m;
}

// Real roots of the single-mode cubic found by dense sampling and bisection.
std::vector<double> scan_single_mode(const Basis& b, double g, double A, double mu) {
    const double strength = std::sqrt(2.0 * mu) * A;
    auto f = [&](double csq) {
        const cplx lhs = b.modes[0].eigenvalue - mu + g * b.w(0, 0, 0, 0) * csq;
        return csq * std::norm(lhs) - strength * strength * std::norm(b.modes[0].a);
    };
    const double top = 4.0 * std::norm(strength * b.modes[0].a / (0.5 * b.modes[0].gamma()));
    std::vector<double> out;
    const int m = 20000;
    double x0 = 0.0;
    double f0 = f(x0);
    for (int i = 1; i <= m; ++i) {
        const double x1 = top * i / m;
        const double f1 = f(x1);
        if ((f0 < 0.0) != (f1 < 0.0)) {
            double lo = x0, hi = x1;
            for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                ((f(mid) < 0.0) == (f(lo) < 0.0) ? lo : hi) = mid;
            }
            const double csq = 0.5 * (lo + hi);
            out.push_back(csq * std::norm(b.modes[0].B) * b.modes[0].k.real() / (std::sqrt(2.0 * mu) * A * A));
        }
        x0 = x1;
        f0 = f1;
    }
    return out;
}

}  // namespace

TEST_CASE("decoupled limit is exact") {
    const auto& b = basis(3);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (double mu : {1.0, 1.07, 1.12, 1.175, 1.3}) {
        const auto exact = nlse::decoupled_solution(b.modes, mu, 0.1);
        CHECK(max_abs(nlse::galerkin_residual(b.modes, b.w, mu, 0.0, 0.1, exact)) < 1e-12);
        std::vector<cplx> seed{cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
        const auto st = nlse::galerkin_solve(b.modes, b.w, mu, 0.0, 0.1, seed);
        REQUIRE(st.converged);
        for (std::size_t j = 0; j < exact.size(); ++j) {
            CHECK(std::abs(st.c[j] - exact[j]) < 1e-12 * std::max(1.0, std::abs(exact[j])));
        }
        CHECK(st.occupations[0] == doctest::Approx(std::norm(st.c[0])));
    }
}

TEST_CASE("linear oscillator transmission follows the comb near resonance") {
    const auto& b = basis(2);
    const nlse::PotentialSpec spec{2, 10.0, 2.0};
    const double mu1 = b.modes[0].mu();
    const double G = b.modes[0].gamma();
    for (double x : {-1.0, -0.3, 0.0, 0.4, 1.0}) {
        const double mu = mu1 + x * G;
        const auto c = nlse::decoupled_solution(b.modes, mu, 0.1);
        const double T = nlse::galerkin_transmission(b.modes, c, mu, 0.1);
        CHECK(std::abs(T - nlse::transmission_linear(spec, mu)) < 0.02);
    }
}

TEST_CASE("nonlinear lorentzian") {
    const auto& b = basis(2);
    const auto& m = b.modes[0];
    const cplx w = b.w(0, 0, 0, 0);

    SUBCASE("g = 0 reduces to the linear profile") {
        for (double mu : {1.1, 1.12, 1.13}) {
            const auto roots = nlse::nonlinear_lorentzian(m, w, 0.0, 0.1, mu);
            REQUIRE(roots.size() == 1);
            const double T = nlse::galerkin_transmission(b.modes, nlse::decoupled_solution(b.modes, mu, 0.1), mu, 0.1);
            CHECK(roots[0] == doctest::Approx(T).epsilon(1e-12));
        }
    }
    SUBCASE("roots agree with a direct scan of the single-mode equation") {
        for (double g : {0.05, -0.05, 0.1}) {
            for (double mu : {1.10, 1.13, 1.16, 1.17, 1.18, 1.05, 1.08}) {
                const auto roots = nlse::nonlinear_lorentzian(m, w, g, 0.1, mu);
                const auto scan = scan_single_mode(b, g, 0.1, mu);
                CAPTURE(g);
                CAPTURE(mu);
                REQUIRE(roots.size() == scan.size());
                for (std::size_t i = 0; i < roots.size(); ++i) {
                    CHECK(std::abs(roots[i] - scan[i]) < 1e-8);
                }
            }
        }
    }
    SUBCASE("peak bends toward the sign of g") {
        const double k = std::sqrt(2.0 * m.mu());
        const double slope = 0.05 * w.real() * 2.0 * 0.01 * k / m.gamma();
        const auto s0 = nlse::skeleton(m, w, 0.05, 0.1, m.mu(), 0.0);
        const auto s1 = nlse::skeleton(m, w, 0.05, 0.1, m.mu(), 1.0);
        CHECK(s0.mu == doctest::Approx(m.mu()));
        CHECK(s0.gamma == doctest::Approx(m.gamma()));
        CHECK(s1.mu - s0.mu > 0.0);
        CHECK(std::abs((s1.mu - s0.mu) - slope) < 0.01 * slope);
        const auto sn = nlse::skeleton(m, w, -0.05, 0.1, m.mu(), 1.0);
        CHECK(sn.mu < s0.mu);
    }
    SUBCASE("three-root window for g = 0.1") {
        int widest = 0;
        for (double mu = 1.12; mu < 1.30; mu += 0.002) {
            widest = std::max(widest, static_cast<int>(nlse::nonlinear_lorentzian(m, w, 0.1, 0.1, mu).size()));
        }
        CHECK(widest == 3);
    }
}

TEST_CASE("single-mode newton reproduces the lorentzian roots") {
    const auto& b = basis(2);
    const nlse::OscillatorSweepOptions opts;
    const auto pts = nlse::sweep_oscillator(b.modes, b.w, 1.10, 1.20, 21, 0.05, 0.1, opts);
    std::map<double, std::vector<double>> by_mu;
    for (const auto& p : pts) {
        CHECK(p.state.residual < 1e-10);
        by_mu[p.state.mu].push_back(p.state.Tsq);
    }
    int triple = 0;
    for (const auto& [mu, ts] : by_mu) {
        const auto roots = nlse::nonlinear_lorentzian(b.modes[0], b.w(0, 0, 0, 0), 0.05, 0.1, mu);
        REQUIRE(roots.size() == ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i) {
            CHECK(std::abs(roots[i] - ts[i]) < 1e-8);
        }
        triple += ts.size() == 3;
    }
    CHECK(triple > 5);
}

TEST_CASE("BdG spectrum") {
    SUBCASE("linear limit") {
        const auto& b = basis(3);
        const double mu = 1.1;
        const auto st = nlse::galerkin_solve(b.modes, b.w, mu, 0.0, 0.1, nlse::decoupled_solution(b.modes, mu, 0.1));
        const auto rep = nlse::bdg_stability(st, b.modes, b.w);
        CHECK_FALSE(rep.unstable);
        CHECK(rep.growth_modes == 0);
        REQUIRE(rep.eigenfrequencies.size() == 4);
        for (const auto& m : b.modes) {
            const cplx e = m.eigenvalue - mu;
            auto near = [&](cplx target) {
                return std::any_of(rep.eigenfrequencies.begin(), rep.eigenfrequencies.end(),
                                   [&](cplx om) { return std::abs(om - target) < 1e-12; });
            };
            CHECK(near(e));
            CHECK(near(-std::conj(e)));
        }
    }
    SUBCASE("pairing and the middle branch") {
        const auto& b = basis(2);
        const auto pts = nlse::sweep_oscillator(b.modes, b.w, 1.14, 1.19, 11, 0.05, 0.1);
        std::map<double, std::vector<const nlse::OscillatorPoint*>> by_mu;
        for (const auto& p : pts) {
            by_mu[p.state.mu].push_back(&p);
            const auto& ev = p.stability.eigenfrequencies;
            for (const cplx om : ev) {
                const bool paired = std::any_of(ev.begin(), ev.end(),
                                                [&](cplx o) { return std::abs(o + std::conj(om)) < 1e-9; });
                CHECK(paired);
            }
        }
        int triples = 0;
        for (const auto& [mu, v] : by_mu) {
            if (v.size() != 3) {
                CHECK(std::none_of(v.begin(), v.end(), [](auto* p) { return p->stability.unstable; }));
                continue;
            }
            ++triples;
            CHECK_FALSE(v[0]->stability.unstable);
            CHECK(v[1]->stability.growth_modes == 1);
            CHECK_FALSE(v[2]->stability.unstable);
        }
        CHECK(triples > 5);
    }
}

TEST_CASE("linear sweep is one stable branch") {
    const auto& b = basis(3);
    const auto pts = nlse::sweep_oscillator(b.modes, b.w, 1.0, 1.3, 31, 0.0, 0.1);
    std::set<int> ids;
    std::set<double> mus;
    for (const auto& p : pts) {
        ids.insert(p.branch_id);
        CHECK_FALSE(p.stability.unstable);
        mus.insert(p.state.mu);
    }
    CHECK(ids.size() == 1);
    CHECK(mus.size() == pts.size());
    // the refined step resolves the narrowest width
    CHECK(mus.size() >= static_cast<std::size_t>(0.3 / (b.modes[0].gamma() / 20.0)));
}

TEST_CASE("triple barrier: one-mode and mixed branches") {
    const auto& b = basis(3);
    const auto pts = nlse::sweep_oscillator(b.modes, b.w, 1.03, 1.35, 33, 0.1, 0.1);
    const int main_id = pts.front().branch_id;
    bool mixed_detached = false;
    int dominated = 0;
    for (const auto& p : pts) {
        const double a = p.state.occupations[0];
        const double c = p.state.occupations[1];
        const double ratio = std::max(a, c) / std::min(a, c);
        if (p.branch_id == main_id && p.state.mu < 1.2 && p.state.Tsq > 0.3) {
            CHECK(ratio > 5.0);
            ++dominated;
        }
        if (p.branch_id != main_id && p.state.Tsq > 0.1 && ratio < 5.0) {
            mixed_detached = true;
        }
    }
    CHECK(dominated > 10);
    CHECK(mixed_detached);
    bool mixed_stability = std::any_of(pts.begin(), pts.end(), [](const auto& p) { return p.stability.unstable; }) &&
                           std::any_of(pts.begin(), pts.end(), [](const auto& p) { return !p.stability.unstable; });
    CHECK(mixed_stability);
}

TEST_CASE("sweeps are deterministic across thread counts") {
    const auto& b = basis(3);
    const auto a = nlse::sweep_oscillator(b.modes, b.w, 1.15, 1.26, 12, 0.0366, 0.1, {}, 1);
    const auto c = nlse::sweep_oscillator(b.modes, b.w, 1.15, 1.26, 12, 0.0366, 0.1, {}, 3);
    REQUIRE(a.size() == c.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].state.mu == c[i].state.mu);
        CHECK(a[i].state.Tsq == c[i].state.Tsq);
        CHECK(a[i].branch_id == c[i].branch_id);
    }
}

TEST_CASE("oscillator errors") {
    const auto& b = basis(2);
    CHECK_THROWS_AS(nlse::source_strength(-1.0, 0.1), nlse::DomainError);
    CHECK_THROWS_AS(nlse::galerkin_residual(b.modes, b.w, 1.1, 0.1, 0.1, {0.0, 0.0}), nlse::DomainError);
    CHECK_THROWS_AS(nlse::sweep_oscillator(b.modes, b.w, 1.2, 1.2, 2, 0.1, 0.1), nlse::DomainError);
    const auto diverged = nlse::galerkin_solve(b.modes, b.w, 1.18, 0.05, 0.1, {cplx(1e9, 0.0)},
                                               nlse::GalerkinOptions{3, 1e-13});
    CHECK_FALSE(diverged.converged);
    CHECK(diverged.c.size() == 1);
}
