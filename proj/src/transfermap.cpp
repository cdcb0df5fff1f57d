// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#include "nlse/transfermap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nlse/error.hpp"
#include "polynomial.hpp"

namespace nlse {
namespace {

constexpr double kSpTolerance = 1e-8;
constexpr double kImagTolerance = 1e-6;
constexpr double kRedundancyTolerance = 1e-6;

double sq(double x) { return x * x; }

std::string describe_state(const DensityState& s) {
    std::ostringstream os;
    os.precision(17);
    os << "S=" << s.S << ", S'=" << s.Sp << ", j=" << s.j;
    return os.str();
}

// g-sign preference among equally small |p|: order of (a, b, c) index roles.
int sign_rank(const std::array<int, 3>& perm, double g) {
    // Lexicographic rank of the permutation, reversed for g < 0.
    const int r = perm[0] * 9 + perm[1] * 3 + perm[2];
    return g > 0.0 ? r : -r;
}

EllipticTriple triple_from_squares(cplx sn2, cplx cn2, cplx dn2) {
    return {std::sqrt(sn2), std::sqrt(cn2), std::sqrt(dn2)};
}

DensityState shift_param(const Parametrization& par, const DensityState& state, double dx) {
    const auto& p = par.params;
    const EllipticTriple t = shift_by(par.at_ref, p.rho * dx, p.p);
    const cplx dsn2 = t.sn * t.sn - par.at_ref.sn * par.at_ref.sn;
    const cplx S = state.S - par.phi_p * dsn2;
    const cplx Sp = -2.0 * p.rho * par.phi_p * t.sn * t.cn * t.dn;
    const double scale = std::abs(state.S) + std::abs(par.phi_p);
    if (!(std::abs(S.imag()) <= kImagTolerance * scale) ||
        !(std::abs(Sp.imag()) <= kImagTolerance * (std::abs(Sp) + std::abs(p.rho) * scale)) ||
        !std::isfinite(S.real()) || !std::isfinite(Sp.real())) {
        throw NumericalError("propagate_constant: complex residue in propagated density for " +
                             describe_state(state));
    }
    return {S.real(), Sp.real(), state.j};
}

}  // namespace

void ScatterContext::validate() const {
    spec.validate();
    if (!(mu > 0.0) || !std::isfinite(mu) || !std::isfinite(g) || !std::isfinite(A)) {
        throw DomainError("ScatterContext requires mu > 0 and finite g, A");
    }
}

std::array<cplx, 3> density_cubic_roots(const DensityState& state, double mu_eff, double g) {
    const double S = state.S;
    const double j2 = state.j * state.j;
    if (state.Sp == 0.0) {
        // (e - S) (g e^2 + (g S - 2 mu) e + j^2 / S)
        const auto q = detail::quadratic_roots(g, g * S - 2.0 * mu_eff, j2 / S);
        return {cplx(S), q[0], q[1]};
    }
    const double a1 = sq(state.Sp) / (4.0 * S) + j2 / S + 2.0 * mu_eff * S - g * S * S;
    return detail::cubic_roots(g, -2.0 * mu_eff, a1, -j2);
}

std::vector<Parametrization> parametrizations(const DensityState& state, double mu_eff, double g) {
    if (!(state.S > 0.0)) {
        throw DegenerateError("recover_params: S must be positive, " + describe_state(state));
    }
    if (g == 0.0) {
        throw DegenerateError("recover_params: g = 0 has no elliptic parametrization");
    }
    const auto roots = density_cubic_roots(state, mu_eff, g);
    const double sp_scale_base = std::abs(state.Sp);

    struct Candidate {
        Parametrization par;
        std::array<int, 3> perm;
    };
    std::vector<Candidate> found;
    std::array<int, 3> perm{0, 1, 2};
    do {
        const cplx sa = roots[perm[0]];
        const cplx sb = roots[perm[1]];
        const cplx sc = roots[perm[2]];
        const cplx phi = sb - sa;
        const cplx phi_p = sb - sc;
        if (std::abs(phi) <= 1e-14 * std::max(std::abs(sa), std::abs(sb)) ||
            std::abs(phi_p) <= 1e-14 * std::max(std::abs(sb), std::abs(sc))) {
            continue;
        }
        const cplx p = phi_p / phi;
        const cplx rho = std::sqrt(-g * phi);
        const cplx sn2 = (sb - state.S) / phi_p;
        const cplx cn2 = (state.S - sc) / phi_p;
        const cplx dn2 = (state.S - sa) / phi;
        EllipticTriple t = triple_from_squares(sn2, cn2, dn2);
        const cplx base = -2.0 * rho * phi_p * t.sn * t.dn;
        const cplx sp_plus = base * t.cn;
        if (std::abs(-sp_plus - state.Sp) < std::abs(sp_plus - state.Sp)) {
            t.cn = -t.cn;
        }
        const cplx sp_rec = base * t.cn;
        const double scale = sp_scale_base + std::abs(rho) * std::abs(state.S) + 1e-300;
        const double resid = std::abs(sp_rec - state.Sp) / scale;
        if (!(resid <= kSpTolerance)) {
            continue;
        }
        Candidate c;
        c.perm = perm;
        c.par.params.eps = sa;
        c.par.params.phi = phi;
        c.par.params.rho = rho;
        c.par.params.p = p;
        c.par.at_ref = t;
        c.par.phi_p = phi_p;
        c.par.sp_residual = resid;
        found.push_back(c);
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (found.empty()) {
        std::ostringstream os;
        os.precision(17);
        os << "recover_params: no cubic root reproduces " << describe_state(state) << "; roots " << roots[0]
           << ", " << roots[1] << ", " << roots[2];
        throw RecoveryError(os.str());
    }
    std::stable_sort(found.begin(), found.end(), [g](const Candidate& a, const Candidate& b) {
        const double pa = std::abs(a.par.params.p);
        const double pb = std::abs(b.par.params.p);
        if (pa != pb) {
            return pa < pb;
        }
        return sign_rank(a.perm, g) < sign_rank(b.perm, g);
    });
    std::vector<Parametrization> out;
    out.reserve(found.size());
    for (auto& c : found) {
        out.push_back(c.par);
    }
    return out;
}

EllipticParams recover_params(const DensityState& state, double mu_eff, double g) {
    const auto all = parametrizations(state, mu_eff, g);
    const Parametrization& par = all.front();
    EllipticParams out = par.params;
    const cplx p = out.p;
    const EllipticTriple& target = par.at_ref;

    auto mismatch = [&](cplx u) {
        const EllipticTriple t = jacobi(u, p);
        return std::abs(t.sn - target.sn) + std::abs(t.cn - target.cn) + std::abs(t.dn - target.dn);
    };

    std::vector<cplx> candidates;
    for (int sign : {1, -1}) {
        const cplx am = am_from_dn(target.dn, p, sign);
        candidates.push_back(elliptic_F(am, p));
    }
    const cplx K = complete_K(p);
    const cplx Kp = complete_K(1.0 - p);
    const std::size_t base = candidates.size();
    for (std::size_t i = 0; i < base; ++i) {
        const cplx u = candidates[i];
        for (cplx shifted : {2.0 * K - u, u + cplx(0.0, 2.0) * Kp, 2.0 * K - u + cplx(0.0, 2.0) * Kp,
                             u + 2.0 * K, u + 2.0 * K + cplx(0.0, 2.0) * Kp}) {
            candidates.push_back(shifted);
        }
    }
    double best = std::numeric_limits<double>::infinity();
    cplx best_u = 0.0;
    for (const cplx u : candidates) {
        double m = std::numeric_limits<double>::infinity();
        try {
            m = mismatch(u);
        } catch (const Error&) {
        }
        if (m < best) {
            best = m;
            best_u = u;
        }
    }
    if (!(best <= 1e-6)) {
        throw RecoveryError("recover_params: no phase reproduces the elliptic triple for " +
                            describe_state(state));
    }
    // The inverse is ill-conditioned next to turning points; polish on the
    // component with the steepest slope.
    for (int it = 0; it < 4; ++it) {
        const EllipticTriple t = jacobi(best_u, p);
        const cplx dsn = t.cn * t.dn;
        const cplx dcn = -t.sn * t.dn;
        const cplx ddn = -p * t.sn * t.cn;
        cplx step;
        if (std::abs(dsn) >= std::abs(dcn) && std::abs(dsn) >= std::abs(ddn)) {
            step = (t.sn - target.sn) / dsn;
        } else if (std::abs(dcn) >= std::abs(ddn)) {
            step = (t.cn - target.cn) / dcn;
        } else {
            step = (t.dn - target.dn) / ddn;
        }
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
            break;
        }
        const cplx next = best_u - step;
        if (!(mismatch(next) < mismatch(best_u))) {
            break;
        }
        best_u = next;
    }
    out.delta = best_u;
    return out;
}

DensityState evaluate_params(const EllipticParams& params, double x, double j) {
    const EllipticTriple t = jacobi(params.rho * x + params.delta, params.p);
    const cplx S = params.eps + params.phi * t.dn * t.dn;
    const cplx Sp = -2.0 * params.rho * params.phi * params.p * t.sn * t.cn * t.dn;
    return {S.real(), Sp.real(), j};
}

DensityState propagate_linear(const DensityState& state, double mu_eff, double dx) {
    if (!(mu_eff > 0.0)) {
        throw DomainError("propagate_linear: requires mu_eff > 0");
    }
    if (dx == 0.0) {
        return state;
    }
    if (state.S == 0.0 && state.Sp == 0.0) {
        return state;
    }
    if (!(state.S > 0.0)) {
        throw DegenerateError("propagate_linear: S must be positive, " + describe_state(state));
    }
    const double k = wavenumber(mu_eff);
    const double c0 = (sq(state.Sp) + 4.0 * sq(state.j) + 4.0 * k * k * sq(state.S)) / (8.0 * state.S);
    const double s_star = c0 / (k * k);
    const double c = std::cos(2.0 * k * dx);
    const double s = std::sin(2.0 * k * dx);
    return {s_star + (state.S - s_star) * c + state.Sp / (2.0 * k) * s,
            -2.0 * k * (state.S - s_star) * s + state.Sp * c, state.j};
}

DensityState propagate_constant(const DensityState& state, double mu_eff, double g, double dx,
                                const EllipticRecoveryOptions& opts) {
    if (!std::isfinite(dx)) {
        throw DomainError("propagate_constant: non-finite step");
    }
    if (dx == 0.0) {
        return state;
    }
    if (g == 0.0) {
        return propagate_linear(state, mu_eff, dx);
    }
    if (state.S == 0.0 && state.Sp == 0.0 && state.j == 0.0) {
        return state;
    }
    const auto all = parametrizations(state, mu_eff, g);
    const DensityState out = shift_param(all.front(), state, dx);
    if (opts.verify_redundancy) {
        for (std::size_t i = 1; i < all.size(); ++i) {
            DensityState alt;
            try {
                alt = shift_param(all[i], state, dx);
            } catch (const Error&) {
                continue;
            }
            const double ds = std::abs(alt.S - out.S);
            const double dsp = std::abs(alt.Sp - out.Sp);
            const double scale = std::abs(out.S) + std::abs(state.S);
            const double sp_scale = std::abs(out.Sp) + std::abs(state.Sp) + std::abs(all.front().params.rho) * scale;
            if (ds > kRedundancyTolerance * scale || dsp > kRedundancyTolerance * sp_scale) {
                std::ostringstream os;
                os.precision(17);
                os << "propagate_constant: parametrizations disagree for " << describe_state(state)
                   << ", dx=" << dx << ": S " << out.S << " vs " << alt.S;
                throw RedundancyError(os.str());
            }
        }
    }
    return out;
}

DensityState delta_jump(const DensityState& state, double lambda) {
    return {state.S, state.Sp - 4.0 * lambda * state.S, state.j};
}

double downstream_wavenumber(const ScatterContext& ctx, double Csq) {
    const double k2 = 2.0 * (ctx.mu - ctx.g * Csq);
    if (!(k2 > 0.0)) {
        throw UnphysicalError("downstream wavenumber is not real: mu <= g |C|^2");
    }
    return std::sqrt(k2);
}

DensityState transfer_multi(const ScatterContext& ctx, double Csq, const TransferOptions& opts) {
    if (!(Csq >= 0.0)) {
        throw DomainError("transfer_multi: |C|^2 must be non-negative");
    }
    if (Csq == 0.0) {
        return {};
    }
    const double kc = downstream_wavenumber(ctx, Csq);
    DensityState st{Csq, 0.0, Csq * kc};
    st = delta_jump(st, ctx.spec.lambda);
    for (int i = 1; i < ctx.spec.n; ++i) {
        st = propagate_constant(st, ctx.mu, ctx.g, -ctx.spec.d, opts.recovery);
        st = delta_jump(st, ctx.spec.lambda);
    }
    return st;
}

double upstream_residual(const ScatterContext& ctx, double Csq, const TransferOptions& opts) {
    const DensityState st = transfer_multi(ctx, Csq, opts);
    const double k = ctx.k();
    const double k_eff = (opts.exact_kc && Csq > 0.0) ? downstream_wavenumber(ctx, Csq) : k;
    const double A2 = ctx.A * ctx.A;
    return 4.0 * k * k * st.S * A2 - 0.25 * sq(st.Sp) - sq(k_eff * Csq + k * st.S);
}

double transmission_from_csq(const ScatterContext& ctx, double Csq, const TransferOptions& opts) {
    const double k = ctx.k();
    const double k_eff = (opts.exact_kc && Csq > 0.0) ? downstream_wavenumber(ctx, Csq) : k;
    return k_eff * Csq / (k * ctx.A * ctx.A);
}

namespace {

template <typename F>
double golden_maximize(F&& f, double lo, double hi, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

}  // namespace

std::vector<BranchPoint> solve_branches(const ScatterContext& ctx, const SolverOptions& opts) {
    ctx.validate();
    if (opts.grid_points < 2 || !(opts.csq_max_factor > 0.0) || !(ctx.A != 0.0)) {
        throw DomainError("solve_branches: needs grid_points >= 2, csq_max_factor > 0, A != 0");
    }
    const double A2 = ctx.A * ctx.A;
    const double csq_max = opts.csq_max_factor * A2;
    const double scale = sq(ctx.k() * A2);
    auto residual = [&](double c) {
        try {
            return upstream_residual(ctx, c, opts.transfer);
        } catch (const Error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };

    // Uniform grid plus a geometric prefix below its first point, four per
    // decade down to 1e-6 csq_max.
    const double first = csq_max / opts.grid_points;
    const int prefix = std::max(0, static_cast<int>(std::ceil(4.0 * std::log10(first / (1e-6 * csq_max)))));
    const int m = opts.grid_points + prefix;
    std::vector<double> grid(m);
    std::vector<double> val(m);
    for (int i = 0; i < m; ++i) {
        grid[i] = i < prefix ? first * std::pow(10.0, -0.25 * (prefix - i))
                             : csq_max * static_cast<double>(i - prefix + 1) / opts.grid_points;
        val[i] = residual(grid[i]);
    }
    auto push = [&](std::vector<BranchPoint>& out, double c, double r) {
        BranchPoint bp;
        bp.mu = ctx.mu;
        bp.Csq = c;
        bp.Tsq = transmission_from_csq(ctx, c, opts.transfer);
        bp.residual = r / scale;
        out.push_back(bp);
    };
    std::vector<BranchPoint> out;
    // Bisect a sign change on [a, b].
    auto bracket = [&](double a, double b, double fa, double fb) {
        const double fa0 = fa;
        const double fb0 = fb;
        const double width = b - a;
        while (b - a > opts.tolerance) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) {
                break;
            }
            const double fm = residual(mid);
            if (!std::isfinite(fm)) {
                return;
            }
            if (fm == 0.0) {
                push(out, mid, 0.0);
                return;
            }
            if ((fm < 0.0) == (fa < 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
                fb = fm;
            }
        }
        // A bracket that shrank without the residual shrinking holds a jump, not a root.
        if (b - a < 1e-3 * width && std::min(std::abs(fa), std::abs(fb)) > 1e-2 * std::max(std::abs(fa0), std::abs(fb0))) {
            return;
        }
        push(out, std::abs(fa) <= std::abs(fb) ? a : b, std::abs(fa) <= std::abs(fb) ? fa : fb);
    };
    for (int i = 0; i < m; ++i) {
        if (val[i] == 0.0) {
            push(out, grid[i], 0.0);
            continue;
        }
        if (i + 1 == m || !std::isfinite(val[i]) || !std::isfinite(val[i + 1]) || val[i + 1] == 0.0) {
            continue;
        }
        if ((val[i] < 0.0) != (val[i + 1] < 0.0)) {
            bracket(grid[i], grid[i + 1], val[i], val[i + 1]);
            continue;
        }
        // Pair of roots between grid points: |R| dips without a sign change.
        if (i == 0 || !std::isfinite(val[i - 1]) || (val[i - 1] < 0.0) != (val[i] < 0.0) ||
            !(std::abs(val[i]) < std::abs(val[i - 1])) || !(std::abs(val[i]) <= std::abs(val[i + 1]))) {
            continue;
        }
        const double sign = val[i] < 0.0 ? 1.0 : -1.0;
        auto flipped = [&](double c) {
            const double r = residual(c);
            return std::isfinite(r) ? sign * r : -std::numeric_limits<double>::infinity();
        };
        const double lo = grid[i - 1];
        const double hi = grid[i + 1];
        const double top = golden_maximize(flipped, lo, hi, 1e-6 * (hi - lo));
        const double ftop = residual(top);
        if (std::isfinite(ftop) && ftop != 0.0 && (ftop < 0.0) != (val[i] < 0.0)) {
            bracket(lo, top, val[i - 1], ftop);
            bracket(top, hi, ftop, val[i + 1]);
        }
    }
    std::sort(out.begin(), out.end(), [](const BranchPoint& x, const BranchPoint& y) { return x.Csq < y.Csq; });
    out.erase(std::unique(out.begin(), out.end(),
                          [&](const BranchPoint& x, const BranchPoint& y) { return y.Csq - x.Csq <= 10.0 * opts.tolerance; }),
              out.end());
    return out;
}

namespace {

// States just left of each barrier, index 0 .. n-1.
std::vector<DensityState> barrier_chain(const ScatterContext& ctx, double Csq, const TransferOptions& opts) {
    if (!(Csq > 0.0)) {
        throw DomainError("density profile needs |C|^2 > 0");
    }
    const int n = ctx.spec.n;
    std::vector<DensityState> left(n);
    const double kc = downstream_wavenumber(ctx, Csq);
    DensityState st = delta_jump({Csq, 0.0, Csq * kc}, ctx.spec.lambda);
    left[n - 1] = st;
    for (int i = n - 2; i >= 0; --i) {
        st = propagate_constant(st, ctx.mu, ctx.g, -ctx.spec.d, opts.recovery);
        st = delta_jump(st, ctx.spec.lambda);
        left[i] = st;
    }
    return left;
}

double density_from_chain(const ScatterContext& ctx, const std::vector<DensityState>& left, double Csq,
                          double x, const TransferOptions& opts) {
    const double d = ctx.spec.d;
    const double xr = ctx.spec.length();
    if (x >= xr) {
        return Csq;
    }
    if (x < 0.0) {
        return propagate_linear(left[0], ctx.mu, x).S;
    }
    int j = static_cast<int>(std::floor(x / d)) + 1;
    j = std::clamp(j, 1, ctx.spec.n - 1);
    return propagate_constant(left[j], ctx.mu, ctx.g, x - j * d, opts.recovery).S;
}

}  // namespace

double density_at(const ScatterContext& ctx, double Csq, double x, const TransferOptions& opts) {
    const auto left = barrier_chain(ctx, Csq, opts);
    return density_from_chain(ctx, left, Csq, x, opts);
}

DensityProfile density_profile(const ScatterContext& ctx, double Csq, int samples, const TransferOptions& opts) {
    ctx.validate();
    if (samples < 2) {
        throw DomainError("density_profile: needs at least 2 samples");
    }
    const auto left = barrier_chain(ctx, Csq, opts);
    const double j = left[0].j;
    const double x0 = -ctx.spec.d;
    const double x1 = ctx.spec.n * ctx.spec.d;
    const double h = (x1 - x0) / (samples - 1);
    constexpr int kSub = 10;

    DensityProfile prof;
    prof.samples.reserve(samples);
    double phi = 0.0;
    double s_prev = density_from_chain(ctx, left, Csq, x0, opts);
    double s_max = s_prev;
    double s_min = s_prev;
    prof.samples.push_back({x0, s_prev, 0.0});
    for (int i = 1; i < samples; ++i) {
        const double a = x0 + (i - 1) * h;
        const double hs = h / kSub;
        double acc = j / s_prev;
        double s_last = s_prev;
        for (int q = 1; q <= kSub; ++q) {
            const double x = (i == samples - 1 && q == kSub) ? x1 : a + q * hs;
            const double s = density_from_chain(ctx, left, Csq, x, opts);
            s_max = std::max(s_max, s);
            s_min = std::min(s_min, s);
            const double w = (q == kSub) ? 1.0 : (q % 2 == 1 ? 4.0 : 2.0);
            acc += w * j / s;
            s_last = s;
        }
        phi += acc * hs / 3.0;
        s_prev = s_last;
        prof.samples.push_back({x0 + i * h, s_last, phi});
    }
    prof.phase_warning = !(s_min > 1e-14 * s_max);
    return prof;
}

double asymmetry(const ScatterContext& ctx, double Csq, int intervals, const TransferOptions& opts) {
    ctx.validate();
    if (ctx.spec.n < 2) {
        return 0.0;
    }
    if (intervals < 2) {
        throw DomainError("asymmetry: needs at least 2 intervals");
    }
    if (intervals % 2 == 1) {
        ++intervals;
    }
    const auto left = barrier_chain(ctx, Csq, opts);
    const double L = ctx.spec.length();
    const double h = L / intervals;
    std::vector<double> s(intervals + 1);
    for (int i = 0; i <= intervals; ++i) {
        // Stay inside the barrier region at both ends.
        const double x = std::clamp(i * h, 0.0, std::nextafter(L, 0.0));
        s[i] = density_from_chain(ctx, left, Csq, x, opts);
    }
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i <= intervals; ++i) {
        const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        num += w * std::abs(s[i] - s[intervals - i]);
        den += w * s[i];
    }
    return num / den;
}


double refine_full_transmission(const ScatterContext& ctx, double mu_lo, double mu_hi, const TransferOptions& opts) {
    if (!(mu_lo < mu_hi)) {
        throw DomainError("refine_full_transmission: empty interval");
    }
    const double A2 = ctx.A * ctx.A;
    auto f = [&](double mu) {
        ScatterContext c = ctx;
        c.mu = mu;
        try {
            return upstream_residual(c, A2, opts) / sq(c.k() * A2);
        } catch (const Error&) {
            return -std::numeric_limits<double>::infinity();
        }
    };
    return golden_maximize(f, mu_lo, mu_hi, 1e-12);
}

BranchExtremum refine_branch_maximum(const ScatterContext& ctx, double mu0, double Csq0, double dmu,
                                     const TransferOptions& opts) {
    const double A2 = ctx.A * ctx.A;
    const double w = 0.05 * A2;
    auto top_root = [&](double mu) {
        ScatterContext c = ctx;
        c.mu = mu;
        auto r = [&](double x) {
            try {
                return upstream_residual(c, x, opts);
            } catch (const Error&) {
                return std::numeric_limits<double>::quiet_NaN();
            }
        };
        constexpr int kGrid = 400;
        const double lo = std::max(Csq0 - w, 1e-6 * A2);
        const double hi = Csq0 + w;
        double best = -std::numeric_limits<double>::infinity();
        double xa = lo;
        double fa = r(xa);
        for (int i = 1; i <= kGrid; ++i) {
            const double xb = lo + (hi - lo) * i / kGrid;
            const double fb = r(xb);
            if (std::isfinite(fa) && std::isfinite(fb) && (fa < 0.0) != (fb < 0.0)) {
                double a = xa;
                double b = xb;
                double fa2 = fa;
                while (b - a > 1e-14 * A2) {
                    const double mid = 0.5 * (a + b);
                    const double fm = r(mid);
                    if (!std::isfinite(fm)) {
                        break;
                    }
                    if ((fm < 0.0) == (fa2 < 0.0)) {
                        a = mid;
                        fa2 = fm;
                    } else {
                        b = mid;
                    }
                }
                best = std::max(best, 0.5 * (a + b));
            }
            xa = xb;
            fa = fb;
        }
        return best;
    };
    const double mu = golden_maximize(top_root, mu0 - dmu, mu0 + dmu, 1e-10);
    return {mu, top_root(mu)};
}

}  // namespace nlse
