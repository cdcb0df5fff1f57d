// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#pragma once

#include <vector>

namespace nlse {

/// n identical delta barriers of strength lambda (in units hbar^2/m) placed at
/// x = 0, d, ..., (n-1)d. Units hbar = m = 1 throughout the library.
struct PotentialSpec {
    int n = 2;
    double lambda = 10.0;
    double d = 2.0;

    /// Throws DomainError unless n >= 1, lambda > 0 and d > 0.
    void validate() const;
    [[nodiscard]] double length() const { return (n - 1) * d; }
};

struct LinearResonance {
    int n = 0;
    int l = 0;
    double mu_r = 0.0;
    double gamma = 0.0;  // full width at half maximum
    double z_root = 0.0;
};

/// Chebyshev polynomial of the second kind U_order(z) by the three-term recurrence.
double chebyshev_U(int order, double z);

/// dU_order/dz, from (1 - z^2) U_m' = (m + 1) U_{m-1} - m z U_m, with the
/// closed form U_m'(+-1) at the endpoints.
double chebyshev_U_derivative(int order, double z);

/// Wavenumber k = sqrt(2 mu).
double wavenumber(double mu);

/// z(mu) = cos(kd) + (lambda/k) sin(kd).
double comb_z(const PotentialSpec& spec, double mu);

/// dz/dmu, analytic.
double comb_z_derivative(const PotentialSpec& spec, double mu);

/// Exact g = 0 transmission [1 + (lambda/k)^2 U_{n-1}(z)^2]^-1. Throws DomainError for mu <= 0.
double transmission_linear(const PotentialSpec& spec, double mu);

/// All resonances with mu_R <= mu_max, sorted ascending. Empty for n = 1.
std::vector<LinearResonance> find_resonances(const PotentialSpec& spec, double mu_max);

/// The n-1 resonances of the lowest allowed band (kd < pi).
std::vector<LinearResonance> first_group(const PotentialSpec& spec);

/// Gamma^2/4 / ((mu - mu_R)^2 + Gamma^2/4).
double lorentzian_profile(const LinearResonance& res, double mu);

}  // namespace nlse
