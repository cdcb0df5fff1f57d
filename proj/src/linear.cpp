// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#include "nlse/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlse/error.hpp"

namespace nlse {

void PotentialSpec::validate() const {
    if (n < 1 || !(lambda > 0.0) || !(d > 0.0) || !std::isfinite(lambda) || !std::isfinite(d)) {
        throw DomainError("PotentialSpec requires n >= 1, lambda > 0, d > 0");
    }
}

double chebyshev_U(int order, double z) {
    if (order < 0) {
        throw DomainError("chebyshev_U: negative order");
    }
    double prev = 1.0;
    if (order == 0) {
        return prev;
    }
    double cur = 2.0 * z;
    for (int m = 1; m < order; ++m) {
        const double next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double chebyshev_U_derivative(int order, double z) {
    if (order <= 0) {
        return 0.0;
    }
    const double one_minus = 1.0 - z * z;
    if (std::abs(one_minus) < 1e-12) {
        // U_m'(1) = m (m + 1) (m + 2) / 3, odd/even parity at -1.
        const double m = order;
        const double v = m * (m + 1.0) * (m + 2.0) / 3.0;
        return (z > 0.0 || order % 2 == 1) ? v : -v;
    }
    return ((order + 1) * chebyshev_U(order - 1, z) - order * z * chebyshev_U(order, z)) / one_minus;
}

double wavenumber(double mu) { return std::sqrt(2.0 * mu); }

double comb_z(const PotentialSpec& spec, double mu) {
    const double k = wavenumber(mu);
    return std::cos(k * spec.d) + (spec.lambda / k) * std::sin(k * spec.d);
}

namespace {

double z_of_k(const PotentialSpec& spec, double k) {
    return std::cos(k * spec.d) + (spec.lambda / k) * std::sin(k * spec.d);
}

double dz_dk(const PotentialSpec& spec, double k) {
    const double kd = k * spec.d;
    return -spec.d * std::sin(kd) + (spec.lambda / k) * spec.d * std::cos(kd) -
           (spec.lambda / (k * k)) * std::sin(kd);
}

}  // namespace

double comb_z_derivative(const PotentialSpec& spec, double mu) {
    const double k = wavenumber(mu);
    return dz_dk(spec, k) / k;
}

double transmission_linear(const PotentialSpec& spec, double mu) {
    if (!(mu > 0.0)) {
        throw DomainError("transmission_linear: mu must be positive");
    }
    const double k = wavenumber(mu);
    const double u = chebyshev_U(spec.n - 1, comb_z(spec, mu));
    const double r = spec.lambda / k;
    return 1.0 / (1.0 + r * r * u * u);
}

std::vector<LinearResonance> find_resonances(const PotentialSpec& spec, double mu_max) {
    spec.validate();
    if (!(mu_max > 0.0)) {
        throw DomainError("find_resonances: mu_max must be positive");
    }
    std::vector<LinearResonance> out;
    if (spec.n == 1) {
        return out;
    }
    const double k_max = wavenumber(mu_max);
    const double dk = std::numbers::pi / (40.0 * spec.d);
    for (int l = 1; l < spec.n; ++l) {
        const double zl = std::cos(l * std::numbers::pi / spec.n);
        auto f = [&](double k) { return z_of_k(spec, k) - zl; };
        double k_lo = 1e-3 * dk;
        double f_lo = f(k_lo);
        while (k_lo < k_max) {
            const double k_hi = std::min(k_lo + dk, k_max);
            const double f_hi = f(k_hi);
            if ((f_lo < 0.0) != (f_hi < 0.0)) {
                double a = k_lo;
                double b = k_hi;
                double fa = f_lo;
                while (b - a > 1e-13) {
                    const double mid = 0.5 * (a + b);
                    const double fm = f(mid);
                    if ((fm < 0.0) == (fa < 0.0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                const double k = 0.5 * (a + b);
                const double mu = 0.5 * k * k;
                if (mu <= mu_max) {
                    LinearResonance res;
                    res.n = spec.n;
                    res.l = l;
                    res.mu_r = mu;
                    res.z_root = zl;
                    const double slope = (spec.lambda / k) * chebyshev_U_derivative(spec.n - 1, zl) *
                                         comb_z_derivative(spec, mu);
                    res.gamma = 2.0 / std::abs(slope);
                    out.push_back(res);
                }
            }
            k_lo = k_hi;
            f_lo = f_hi;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const LinearResonance& a, const LinearResonance& b) { return a.mu_r < b.mu_r; });
    return out;
}

std::vector<LinearResonance> first_group(const PotentialSpec& spec) {
    const double k_edge = std::numbers::pi / spec.d;
    auto all = find_resonances(spec, 0.5 * k_edge * k_edge);
    if (all.size() > static_cast<std::size_t>(spec.n - 1)) {
        all.resize(spec.n - 1);
    }
    return all;
}

double lorentzian_profile(const LinearResonance& res, double mu) {
    const double h = 0.25 * res.gamma * res.gamma;
    const double dmu = mu - res.mu_r;
    return h / (dmu * dmu + h);
}

}  // namespace nlse
