// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#pragma once

#include <complex>

namespace nlse {

using cplx = std::complex<double>;

/// Jacobi elliptic functions sn, cn, dn at one point, parameter convention
/// m = p (so dn^2 + p sn^2 = 1).
struct EllipticTriple {
    cplx sn{0.0};
    cplx cn{1.0};
    cplx dn{1.0};
};

/// sn(u|p), cn(u|p), dn(u|p) for complex argument and complex parameter.
///
/// |p| > 1 is mapped to 1/p by the reciprocal-modulus transformation, the
/// remainder is evaluated by descending Landen (Gauss) transformations until
/// the parameter drops below 1e-14 (at most 32 levels). p = 0, p = 1 and
/// u = 0 are returned exactly. Throws DomainError on non-finite input and
/// ConvergenceError if the descent does not terminate.
EllipticTriple jacobi(cplx u, cplx p);

/// Complete elliptic integral of the first kind K(p), principal branch, by the
/// arithmetic-geometric mean. Throws PoleError at p = 1.
cplx complete_K(cplx p);

/// Incomplete elliptic integral of the first kind F(phi|p) through Carlson's
/// R_F. Valid for |Re phi| <= pi/2.
cplx elliptic_F(cplx phi, cplx p);

/// Carlson's symmetric integral R_F(x, y, z) by duplication.
cplx carlson_rf(cplx x, cplx y, cplx z);

/// Amplitude am(u) recovered from dn(u) and a sign: am = sign*asin(sqrt((1 - dn^2)/p)).
/// Both square root and arcsine use the principal branch; sin(am) and cos(am)
/// then reproduce sn and cn up to the sign choice. Throws DegenerateError at p = 0.
cplx am_from_dn(cplx dn_val, cplx p, int sign);

/// Addition theorem: the triple at u + v from the triple at u and jacobi(v, p).
/// Throws NearPoleError if |1 - p sn^2(u) sn^2(v)| < 1e-14.
EllipticTriple addition_shift(const EllipticTriple& at_u, cplx v, cplx p);

/// Like addition_shift, but near a pole the step is bisected recursively (at
/// most 8 levels) and applied piecewise. Poles are detected by a denominator
/// below 1e-10 or by |sn(v)| exceeding 1e8.
EllipticTriple shift_by(const EllipticTriple& at_u, cplx v, cplx p);

}  // namespace nlse
