// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#include "nlse/elliptic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nlse/error.hpp"

namespace nlse {
namespace {

constexpr int kMaxLandenDepth = 32;
constexpr double kLandenTolerance = 1e-14;
constexpr double kAdditionPoleThreshold = 1e-14;
constexpr double kSubdivideThreshold = 1e-10;
constexpr double kSnBlowup = 1e8;
constexpr int kMaxBisections = 8;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string describe(cplx u, cplx p) {
    std::ostringstream os;
    os.precision(17);
    os << "u=" << u << ", p=" << p;
    return os.str();
}

// Descending Landen transformation for |p| <= 1, p != 1.
EllipticTriple jacobi_landen(cplx u, cplx p) {
    std::array<cplx, kMaxLandenDepth> k1s{};
    int depth = 0;
    cplx m = p;
    cplx z = u;
    while (std::abs(m) > kLandenTolerance) {
        if (depth == kMaxLandenDepth) {
            throw ConvergenceError("jacobi: Landen descent did not converge for " + describe(u, p));
        }
        const cplx kc = std::sqrt(1.0 - m);
        const cplx k1 = (1.0 - kc) / (1.0 + kc);
        k1s[depth++] = k1;
        z /= (1.0 + k1);
        m = k1 * k1;
    }

    // Small-parameter expansion at the bottom, first order in m.
    const cplx s = std::sin(z);
    const cplx c = std::cos(z);
    const cplx t = 0.25 * m * (z - s * c);
    cplx sn = s - t * c;
    cplx cn = c + t * s;
    cplx dn = 1.0 - 0.5 * m * s * s;

    for (int i = depth - 1; i >= 0; --i) {
        const cplx k1 = k1s[i];
        const cplx sn2 = sn * sn;
        const cplx den = 1.0 + k1 * sn2;
        const cplx sn_up = (1.0 + k1) * sn / den;
        const cplx cn_up = cn * dn / den;
        const cplx dn_up = (1.0 - k1 * sn2) / den;
        sn = sn_up;
        cn = cn_up;
        dn = dn_up;
    }
    return {sn, cn, dn};
}

}  // namespace

EllipticTriple jacobi(cplx u, cplx p) {
    if (!finite(u) || !finite(p)) {
        throw DomainError("jacobi: non-finite input " + describe(u, p));
    }
    if (u == cplx(0.0)) {
        return {0.0, 1.0, 1.0};
    }
    if (p == cplx(0.0)) {
        return {std::sin(u), std::cos(u), 1.0};
    }
    if (p == cplx(1.0)) {
        const cplx sech = 1.0 / std::cosh(u);
        return {std::tanh(u), sech, sech};
    }
    if (std::abs(p) > 1.0) {
        // sn(u|p) = sn(sqrt(p) u | 1/p)/sqrt(p), cn <-> dn.
        const cplx root = std::sqrt(p);
        const EllipticTriple r = jacobi(root * u, 1.0 / p);
        return {r.sn / root, r.dn, r.cn};
    }
    return jacobi_landen(u, p);
}

cplx complete_K(cplx p) {
    if (!finite(p)) {
        throw DomainError("complete_K: non-finite parameter");
    }
    if (p == cplx(1.0)) {
        throw PoleError("complete_K: logarithmic pole at p = 1");
    }
    cplx a = 1.0;
    cplx b = std::sqrt(1.0 - p);
    for (int i = 0; i < 64; ++i) {
        const cplx an = 0.5 * (a + b);
        cplx bn = std::sqrt(a * b);
        if (std::abs(an - bn) > std::abs(an + bn)) {
            bn = -bn;
        }
        a = an;
        b = bn;
        if (std::abs(a - b) <= 1e-14 * std::abs(a)) {
            return std::numbers::pi / (a + b);
        }
    }
    throw ConvergenceError("complete_K: AGM did not converge for p=" + describe(0.0, p));
}

cplx carlson_rf(cplx x, cplx y, cplx z) {
    constexpr double kErrTol = 0.0025;
    for (int it = 0; it < 200; ++it) {
        const cplx sx = std::sqrt(x);
        const cplx sy = std::sqrt(y);
        const cplx sz = std::sqrt(z);
        const cplx lam = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        const cplx ave = (x + y + z) / 3.0;
        const cplx dx = (ave - x) / ave;
        const cplx dy = (ave - y) / ave;
        const cplx dz = (ave - z) / ave;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < kErrTol) {
            const cplx e2 = dx * dy - dz * dz;
            const cplx e3 = dx * dy * dz;
            return (1.0 + (e2 / 24.0 - 0.1 - 3.0 / 44.0 * e3) * e2 + e3 / 14.0) / std::sqrt(ave);
        }
    }
    throw ConvergenceError("carlson_rf: duplication did not converge");
}

cplx elliptic_F(cplx phi, cplx p) {
    const cplx s = std::sin(phi);
    const cplx c = std::cos(phi);
    if (s == cplx(0.0)) {
        return 0.0;
    }
    return s * carlson_rf(c * c, 1.0 - p * s * s, 1.0);
}

cplx am_from_dn(cplx dn_val, cplx p, int sign) {
    if (p == cplx(0.0)) {
        throw DegenerateError("am_from_dn: p = 0, use the trigonometric limit");
    }
    const cplx am = std::asin(std::sqrt((1.0 - dn_val * dn_val) / p));
    return sign < 0 ? -am : am;
}

EllipticTriple addition_shift(const EllipticTriple& at_u, cplx v, cplx p) {
    if (v == cplx(0.0)) {
        return at_u;
    }
    const EllipticTriple tv = jacobi(v, p);
    const cplx den = 1.0 - p * at_u.sn * at_u.sn * tv.sn * tv.sn;
    if (!(std::abs(den) >= kAdditionPoleThreshold)) {
        throw NearPoleError("addition_shift: vanishing denominator at " + describe(v, p));
    }
    return {
        (tv.sn * at_u.cn * at_u.dn + at_u.sn * tv.cn * tv.dn) / den,
        (tv.cn * at_u.cn - tv.sn * tv.dn * at_u.sn * at_u.dn) / den,
        (tv.dn * at_u.dn - p * tv.sn * tv.cn * at_u.sn * at_u.cn) / den,
    };
}

namespace {

EllipticTriple shift_recursive(const EllipticTriple& at_u, cplx v, cplx p, int depth) {
    if (v == cplx(0.0)) {
        return at_u;
    }
    const EllipticTriple tv = jacobi(v, p);
    const cplx den = 1.0 - p * at_u.sn * at_u.sn * tv.sn * tv.sn;
    const bool near_pole = !finite(tv.sn) || std::abs(tv.sn) > kSnBlowup ||
                           !(std::abs(den) >= kSubdivideThreshold);
    if (!near_pole) {
        return {
            (tv.sn * at_u.cn * at_u.dn + at_u.sn * tv.cn * tv.dn) / den,
            (tv.cn * at_u.cn - tv.sn * tv.dn * at_u.sn * at_u.dn) / den,
            (tv.dn * at_u.dn - p * tv.sn * tv.cn * at_u.sn * at_u.cn) / den,
        };
    }
    if (depth == kMaxBisections) {
        throw NearPoleError("shift_by: step still singular after bisection, " + describe(v, p));
    }
    const EllipticTriple half = shift_recursive(at_u, 0.5 * v, p, depth + 1);
    return shift_recursive(half, 0.5 * v, p, depth + 1);
}

}  // namespace

EllipticTriple shift_by(const EllipticTriple& at_u, cplx v, cplx p) {
    return shift_recursive(at_u, v, p, 0);
}

}  // namespace nlse
