// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#pragma once

#include <array>
#include <complex>

namespace nlse::detail {

using cplx = std::complex<double>;

/// Stable roots of a x^2 + b x + c (complex coefficients allowed).
std::array<cplx, 2> quadratic_roots(cplx a, cplx b, cplx c);

/// Roots of a3 x^3 + a2 x^2 + a1 x + a0 with real coefficients, a3 != 0.
///
/// A real root (largest magnitude among the real ones) is found first and
/// Newton-polished, the remaining pair follows from Vieta relations chosen to
/// avoid cancellation, then each is polished. Element 0 is always real.
/// Accurate when one root is far larger than the others (small a3).
std::array<cplx, 3> cubic_roots(double a3, double a2, double a1, double a0);

}  // namespace nlse::detail
