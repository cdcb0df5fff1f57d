// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#include "polynomial.hpp"

#include <cmath>
#include <limits>

#include "nlse/error.hpp"

namespace nlse::detail {
namespace {

template <typename T>
T horner(double a3, double a2, double a1, double a0, T x) {
    return ((a3 * x + a2) * x + a1) * x + a0;
}

template <typename T>
T horner_deriv(double a3, double a2, double a1, T x) {
    return (3.0 * a3 * x + 2.0 * a2) * x + a1;
}

template <typename T>
T polish(double a3, double a2, double a1, double a0, T x) {
    auto fx = horner(a3, a2, a1, a0, x);
    for (int it = 0; it < 8; ++it) {
        const auto df = horner_deriv(a3, a2, a1, x);
        if (df == T(0.0)) {
            break;
        }
        const T next = x - fx / df;
        const auto fn = horner(a3, a2, a1, a0, next);
        if (!(std::abs(fn) < std::abs(fx))) {
            break;
        }
        x = next;
        fx = fn;
        if (fx == T(0.0)) {
            break;
        }
    }
    return x;
}

}  // namespace

std::array<cplx, 2> quadratic_roots(cplx a, cplx b, cplx c) {
    const cplx disc = std::sqrt(b * b - 4.0 * a * c);
    // Pick the sign that avoids cancellation with b.
    const cplx q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
    if (q == cplx(0.0)) {
        return {cplx(0.0), cplx(0.0)};
    }
    return {q / a, c / q};
}

std::array<cplx, 3> cubic_roots(double a3, double a2, double a1, double a0) {
    if (a3 == 0.0) {
        throw DomainError("cubic_roots: leading coefficient vanishes");
    }
    const double b = a2 / a3;
    const double c = a1 / a3;
    const double d = a0 / a3;

    // Cardano guesses on the depressed cubic t^3 + P t + Q.
    const double shift = b / 3.0;
    const double P = c - b * shift;
    const double Q = 2.0 * shift * shift * shift - c * shift + d;
    const cplx disc = std::sqrt(cplx(0.25 * Q * Q + P * P * P / 27.0));
    cplx w1 = -0.5 * Q + disc;
    cplx w2 = -0.5 * Q - disc;
    const cplx w = std::abs(w1) >= std::abs(w2) ? w1 : w2;
    std::array<cplx, 3> guess{};
    if (w == cplx(0.0)) {
        guess = {cplx(-shift), cplx(-shift), cplx(-shift)};
    } else {
        const cplx C = std::pow(w, 1.0 / 3.0);
        const cplx omega(-0.5, std::sqrt(3.0) / 2.0);
        cplx ck = C;
        for (int i = 0; i < 3; ++i) {
            guess[i] = ck - P / (3.0 * ck) - shift;
            ck *= omega;
        }
    }

    // The most real guess; among near-real guesses the largest in magnitude.
    int best = 0;
    double best_imag = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        best_imag = std::min(best_imag, std::abs(guess[i].imag()) / std::max(std::abs(guess[i]), 1e-300));
    }
    double best_mag = -1.0;
    for (int i = 0; i < 3; ++i) {
        const double rel = std::abs(guess[i].imag()) / std::max(std::abs(guess[i]), 1e-300);
        if (rel <= std::max(1e-6, 10.0 * best_imag) && std::abs(guess[i]) > best_mag) {
            best = i;
            best_mag = std::abs(guess[i]);
        }
    }
    const double r = polish(a3, a2, a1, a0, guess[best].real());

    // Remaining pair x^2 - sigma x + prod = 0.
    const double e1 = -b;
    const double e2 = c;
    const double e3 = -d;
    std::array<cplx, 3> roots{};
    roots[0] = r;
    if (r == 0.0) {
        const auto q = quadratic_roots(1.0, b, c);
        roots[1] = q[0];
        roots[2] = q[1];
    } else {
        const double prod = e3 / r;
        const double sigma = (std::abs(r) > 0.5 * std::abs(e1)) ? (e2 - prod) / r : e1 - r;
        const auto q = quadratic_roots(1.0, -sigma, prod);
        roots[1] = polish(a3, a2, a1, a0, q[0]);
        roots[2] = polish(a3, a2, a1, a0, q[1]);
        if (std::abs(roots[1].imag()) > 0.0 && std::abs(roots[1] - std::conj(roots[2])) >
                                                    1e-12 * std::abs(roots[1])) {
            // Polishing a conjugate pair independently can drift; keep the pair conjugate.
            roots[2] = std::conj(roots[1]);
        }
    }
    return roots;
}

}  // namespace nlse::detail
