// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#include "nlse/nlse.h"

#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "nlse/branches.hpp"
#include "nlse/elliptic.hpp"
#include "nlse/error.hpp"
#include "nlse/linear.hpp"
#include "nlse/oscillator.hpp"
#include "nlse/siegert.hpp"
#include "nlse/transfermap.hpp"

struct nlse_branch_set {
    std::vector<nlse::BranchPoint> points;
};

struct nlse_profile {
    nlse::DensityProfile profile;
};

struct nlse_mode_set {
    std::vector<nlse::SiegertMode> modes;
    nlse::OverlapTensor w;
};

struct nlse_osc_sweep {
    std::vector<nlse::OscillatorPoint> points;
    std::size_t modes = 0;
};

namespace {

thread_local std::string last_error;

nlse_status fail(nlse_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

template <class F>
nlse_status guarded(F&& f) {
    try {
        last_error.clear();
        return f();
    } catch (const nlse::Error& e) {
        return fail(static_cast<nlse_status>(static_cast<int>(e.kind())), e.what());
    } catch (const std::bad_alloc&) {
        return fail(NLSE_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(NLSE_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(NLSE_ERR_INTERNAL, "unknown exception");
    }
}

nlse_status null_arg(const char* name) { return fail(NLSE_ERR_INVALID_ARGUMENT, std::string("null argument: ") + name); }

nlse::PotentialSpec to_spec(const nlse_potential& p) { return {p.n, p.lambda, p.d}; }

nlse::cplx to_cplx(nlse_complex z) { return {z.re, z.im}; }
nlse_complex from_cplx(nlse::cplx z) { return {z.real(), z.imag()}; }

nlse::ScatterContext to_context(const nlse_transfer_config& c, double mu) {
    nlse::ScatterContext ctx;
    ctx.mu = mu;
    ctx.g = c.g;
    ctx.A = c.A;
    ctx.spec = to_spec(c.spec);
    return ctx;
}

nlse::SolverOptions to_solver(const nlse_transfer_config& c) {
    nlse::SolverOptions o;
    o.grid_points = c.grid_points;
    o.csq_max_factor = c.csq_max_factor;
    o.tolerance = c.tolerance;
    o.transfer.exact_kc = c.exact_kc != 0;
    return o;
}

nlse_branch_point to_c(const nlse::BranchPoint& p) {
    return {p.mu, p.Csq, p.Tsq, p.residual, p.branch_id, p.stable ? (*p.stable ? 1 : 0) : -1};
}

}  // namespace

extern "C" {

const char* nlse_version(void) { return "0.1.0"; }

const char* nlse_status_name(nlse_status status) {
    switch (status) {
        case NLSE_OK: return "ok";
        case NLSE_ERR_DOMAIN: return "domain";
        case NLSE_ERR_CONVERGENCE: return "convergence";
        case NLSE_ERR_POLE: return "pole";
        case NLSE_ERR_NEAR_POLE: return "near-pole";
        case NLSE_ERR_DEGENERATE: return "degenerate";
        case NLSE_ERR_RECOVERY: return "recovery";
        case NLSE_ERR_REDUNDANCY: return "redundancy";
        case NLSE_ERR_UNPHYSICAL: return "unphysical";
        case NLSE_ERR_SCALING_ANGLE: return "scaling-angle";
        case NLSE_ERR_CONTOUR_MISMATCH: return "contour-mismatch";
        case NLSE_ERR_NUMERICAL: return "numerical";
        case NLSE_ERR_CONFIG: return "config";
        case NLSE_ERR_IO: return "io";
        case NLSE_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case NLSE_ERR_INDEX: return "index";
        case NLSE_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* nlse_last_error(void) { return last_error.c_str(); }

nlse_potential nlse_potential_default(void) { return {2, 10.0, 2.0}; }

nlse_status nlse_jacobi(nlse_complex u, nlse_complex p, nlse_complex* sn, nlse_complex* cn, nlse_complex* dn) {
    return guarded([&] {
        if (!sn || !cn || !dn) return null_arg("sn/cn/dn");
        const auto t = nlse::jacobi(to_cplx(u), to_cplx(p));
        *sn = from_cplx(t.sn);
        *cn = from_cplx(t.cn);
        *dn = from_cplx(t.dn);
        return NLSE_OK;
    });
}

nlse_status nlse_complete_K(nlse_complex p, nlse_complex* K) {
    return guarded([&] {
        if (!K) return null_arg("K");
        *K = from_cplx(nlse::complete_K(to_cplx(p)));
        return NLSE_OK;
    });
}

nlse_status nlse_transmission_linear(const nlse_potential* spec, double mu, double* tsq) {
    return guarded([&] {
        if (!spec || !tsq) return null_arg("spec/tsq");
        *tsq = nlse::transmission_linear(to_spec(*spec), mu);
        return NLSE_OK;
    });
}

nlse_status nlse_find_resonances(const nlse_potential* spec, double mu_max, nlse_resonance* out, size_t capacity,
                                 size_t* count) {
    return guarded([&] {
        if (!spec || !count) return null_arg("spec/count");
        if (capacity > 0 && !out) return null_arg("out");
        const auto res = nlse::find_resonances(to_spec(*spec), mu_max);
        *count = res.size();
        for (std::size_t i = 0; i < std::min(capacity, res.size()); ++i) {
            out[i] = {res[i].n, res[i].l, res[i].mu_r, res[i].gamma};
        }
        return NLSE_OK;
    });
}

nlse_transfer_config nlse_transfer_config_default(void) {
    const nlse::SolverOptions o;
    return {nlse_potential_default(), 0.0, 0.1, o.grid_points, o.csq_max_factor, o.tolerance, 0, 0};
}

nlse_status nlse_transfer_sweep(const nlse_transfer_config* cfg, const double* mus, size_t count,
                                nlse_branch_set** out) {
    return guarded([&] {
        if (!cfg || !out || (count > 0 && !mus)) return null_arg("cfg/mus/out");
        *out = nullptr;
        const std::vector<double> grid(mus, mus + count);
        auto set = std::make_unique<nlse_branch_set>();
        set->points = nlse::sweep_transfer(to_context(*cfg, 1.0), grid, to_solver(*cfg),
                                           cfg->threads);
        *out = set.release();
        return NLSE_OK;
    });
}

size_t nlse_branch_set_size(const nlse_branch_set* set) { return set ? set->points.size() : 0; }

nlse_status nlse_branch_set_get(const nlse_branch_set* set, size_t index, nlse_branch_point* point) {
    if (!set || !point) return null_arg("set/point");
    if (index >= set->points.size()) return fail(NLSE_ERR_INDEX, "branch point index out of range");
    *point = to_c(set->points[index]);
    return NLSE_OK;
}

void nlse_branch_set_free(nlse_branch_set* set) { delete set; }

nlse_status nlse_assemble_branches(nlse_branch_point* points, size_t count) {
    return guarded([&] {
        if (count > 0 && !points) return null_arg("points");
        std::vector<nlse::BranchPoint> v(count);
        for (std::size_t i = 0; i < count; ++i) {
            v[i].mu = points[i].mu;
            v[i].Csq = points[i].Csq;
            v[i].Tsq = points[i].Tsq;
            v[i].residual = points[i].residual;
            if (points[i].stable >= 0) v[i].stable = points[i].stable != 0;
        }
        nlse::assemble_branches(v);
        for (std::size_t i = 0; i < count; ++i) {
            points[i] = to_c(v[i]);
        }
        return NLSE_OK;
    });
}

nlse_status nlse_density_profile(const nlse_transfer_config* cfg, double mu, double csq, int samples,
                                 nlse_profile** out) {
    return guarded([&] {
        if (!cfg || !out) return null_arg("cfg/out");
        *out = nullptr;
        auto p = std::make_unique<nlse_profile>();
        p->profile = nlse::density_profile(to_context(*cfg, mu), csq, samples, to_solver(*cfg).transfer);
        *out = p.release();
        return NLSE_OK;
    });
}

size_t nlse_profile_size(const nlse_profile* profile) { return profile ? profile->profile.samples.size() : 0; }

nlse_status nlse_profile_get(const nlse_profile* profile, size_t index, double* x, double* S, double* phase) {
    if (!profile || !x || !S || !phase) return null_arg("profile/x/S/phase");
    if (index >= profile->profile.samples.size()) return fail(NLSE_ERR_INDEX, "profile index out of range");
    const auto& s = profile->profile.samples[index];
    *x = s.x;
    *S = s.S;
    *phase = s.Phi;
    return NLSE_OK;
}

int nlse_profile_phase_warning(const nlse_profile* profile) {
    return profile && profile->profile.phase_warning ? 1 : 0;
}

void nlse_profile_free(nlse_profile* profile) { delete profile; }

nlse_status nlse_asymmetry(const nlse_transfer_config* cfg, double mu, double csq, double* alpha) {
    return guarded([&] {
        if (!cfg || !alpha) return null_arg("cfg/alpha");
        *alpha = nlse::asymmetry(to_context(*cfg, mu), csq, 2000, to_solver(*cfg).transfer);
        return NLSE_OK;
    });
}

nlse_status nlse_siegert_modes(const nlse_potential* spec, double theta_c, nlse_mode_set** out) {
    return guarded([&] {
        if (!spec || !out) return null_arg("spec/out");
        *out = nullptr;
        auto set = std::make_unique<nlse_mode_set>();
        set->modes = nlse::first_group_modes(to_spec(*spec), theta_c);
        set->w = nlse::overlaps(set->modes);
        *out = set.release();
        return NLSE_OK;
    });
}

size_t nlse_mode_set_size(const nlse_mode_set* set) { return set ? set->modes.size() : 0; }

nlse_status nlse_mode_set_get(const nlse_mode_set* set, size_t index, nlse_mode_info* info) {
    if (!set || !info) return null_arg("set/info");
    if (index >= set->modes.size()) return fail(NLSE_ERR_INDEX, "mode index out of range");
    const auto& m = set->modes[index];
    *info = {m.spec.n,           m.l,         m.mu(),       m.gamma(),  from_cplx(m.k), from_cplx(m.a),
             from_cplx(m.B), m.theta_c, m.residual, m.iterations};
    return NLSE_OK;
}

nlse_status nlse_mode_set_overlap(const nlse_mode_set* set, int j, int i, int l, int m, nlse_complex* w) {
    if (!set || !w) return null_arg("set/w");
    const int n = set->w.size;
    for (int idx : {j, i, l, m}) {
        if (idx < 0 || idx >= n) return fail(NLSE_ERR_INDEX, "overlap index out of range");
    }
    *w = from_cplx(set->w(j, i, l, m));
    return NLSE_OK;
}

void nlse_mode_set_free(nlse_mode_set* set) { delete set; }

nlse_oscillator_config nlse_oscillator_config_default(void) {
    const nlse::OscillatorSweepOptions o;
    return {0.0, 0.1, o.seed, o.random_draws, o.coarse_points, 0};
}

nlse_status nlse_oscillator_sweep(const nlse_mode_set* modes, const nlse_oscillator_config* cfg, double mu_min,
                                  double mu_max, int mu_steps, nlse_osc_sweep** out) {
    return guarded([&] {
        if (!modes || !cfg || !out) return null_arg("modes/cfg/out");
        *out = nullptr;
        nlse::OscillatorSweepOptions o;
        o.seed = cfg->seed;
        o.random_draws = cfg->random_draws;
        o.coarse_points = cfg->coarse_points;
        auto s = std::make_unique<nlse_osc_sweep>();
        s->points = nlse::sweep_oscillator(modes->modes, modes->w, mu_min, mu_max, mu_steps, cfg->g, cfg->A, o,
                                           cfg->threads);
        s->modes = modes->modes.size();
        *out = s.release();
        return NLSE_OK;
    });
}

size_t nlse_osc_sweep_size(const nlse_osc_sweep* sweep) { return sweep ? sweep->points.size() : 0; }

size_t nlse_osc_sweep_modes(const nlse_osc_sweep* sweep) { return sweep ? sweep->modes : 0; }

nlse_status nlse_osc_sweep_get(const nlse_osc_sweep* sweep, size_t index, nlse_osc_point* point,
                               double* occupations) {
    if (!sweep || !point) return null_arg("sweep/point");
    if (index >= sweep->points.size()) return fail(NLSE_ERR_INDEX, "sweep index out of range");
    const auto& p = sweep->points[index];
    *point = {p.state.mu,
              p.state.Tsq,
              p.state.residual,
              p.stability.max_growth,
              p.stability.growth_modes,
              p.stability.unstable ? 0 : 1,
              p.branch_id};
    if (occupations) {
        std::copy(p.state.occupations.begin(), p.state.occupations.end(), occupations);
    }
    return NLSE_OK;
}

void nlse_osc_sweep_free(nlse_osc_sweep* sweep) { delete sweep; }

nlse_status nlse_nonlinear_lorentzian(const nlse_mode_set* modes, size_t index, double g, double A, double mu,
                                      double* roots, size_t* count) {
    return guarded([&] {
        if (!modes || !roots || !count) return null_arg("modes/roots/count");
        if (index >= modes->modes.size()) return fail(NLSE_ERR_INDEX, "mode index out of range");
        const int j = static_cast<int>(index);
        const auto r = nlse::nonlinear_lorentzian(modes->modes[index], modes->w(j, j, j, j), g, A, mu);
        *count = r.size();
        std::copy(r.begin(), r.end(), roots);
        return NLSE_OK;
    });
}

}  // extern "C"
