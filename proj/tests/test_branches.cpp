// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "nlse/branches.hpp"
#include "nlse/error.hpp"

using nlse::BranchPoint;

namespace {

BranchPoint pt(double mu, double tsq) {
    BranchPoint p;
    p.mu = mu;
    p.Tsq = tsq;
    p.Csq = tsq;
    return p;
}

int count_ids(const std::vector<BranchPoint>& pts) {
    std::set<int> ids;
    for (const auto& p : pts) {
        ids.insert(p.branch_id);
    }
    return static_cast<int>(ids.size());
}

// Real roots t of t^3 - t = mu, mapped to Tsq = 0.5 + 0.3 t.
std::vector<BranchPoint> s_curve(double sign) {
    std::vector<BranchPoint> pts;
    for (double mu : nlse::linspace(-1.0, 1.0, 201)) {
        const int samples = 20000;
        double prev = 0.0;
        for (int i = 0; i <= samples; ++i) {
            const double t = -2.0 + 4.0 * i / samples;
            const double f = t * t * t - t - mu;
            if (i > 0 && (prev < 0.0) != (f < 0.0)) {
                pts.push_back(pt(sign * mu, 0.5 + 0.3 * t));
            }
            prev = f;
        }
    }
    return pts;
}

// Flat main branch plus a closed ellipse above it.
std::vector<BranchPoint> loop(double sign) {
    std::vector<BranchPoint> pts;
    for (double mu : nlse::linspace(0.0, 1.0, 101)) {
        pts.push_back(pt(sign * mu, 0.1 + 0.05 * mu));
        const double r = 1.0 - (mu - 0.5) * (mu - 0.5) / 0.04;
        if (r >= 0.0) {
            pts.push_back(pt(sign * mu, 0.8 + 0.1 * std::sqrt(r)));
            pts.push_back(pt(sign * mu, 0.8 - 0.1 * std::sqrt(r)));
        }
    }
    return pts;
}

}  // namespace

TEST_CASE("single-valued sweep is one branch") {
    std::vector<BranchPoint> pts;
    for (double mu : nlse::linspace(1.0, 1.4, 50)) {
        pts.push_back(pt(mu, 1.0 / (1.0 + 100.0 * (mu - 1.2) * (mu - 1.2))));
    }
    std::reverse(pts.begin(), pts.end());
    nlse::assemble_branches(pts);
    CHECK(count_ids(pts) == 1);
    CHECK(std::is_sorted(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.mu < b.mu; }));
}

TEST_CASE("fold of an S-curve stays connected") {
    auto pts = s_curve(1.0);
    nlse::assemble_branches(pts);
    CHECK(count_ids(pts) == 1);
}

TEST_CASE("closed loop gets its own id") {
    auto pts = loop(1.0);
    nlse::assemble_branches(pts);
    REQUIRE(count_ids(pts) == 2);
    const auto summary = nlse::summarize_branches(pts);
    REQUIRE(summary.size() == 2);
    CHECK(summary[0].mu_min == 0.0);
    CHECK(summary[0].mu_max == 1.0);
    CHECK(summary[1].tsq_min > 0.6);
    CHECK(summary[1].mu_min >= 0.3);
    CHECK(summary[1].mu_max <= 0.7);
}

TEST_CASE("branch count is invariant under mirroring the sweep") {
    for (auto make : {s_curve, loop}) {
        auto fwd = make(1.0);
        auto rev = make(-1.0);
        nlse::assemble_branches(fwd);
        nlse::assemble_branches(rev);
        CHECK(count_ids(fwd) == count_ids(rev));
    }
}

TEST_CASE("linspace and summary errors") {
    const auto v = nlse::linspace(0.0, 1.0, 5);
    CHECK(v.size() == 5);
    CHECK(v[2] == 0.5);
    CHECK(v.back() == 1.0);
    CHECK_THROWS_AS(nlse::linspace(0.0, 1.0, 1), nlse::DomainError);
    std::vector<BranchPoint> unlabelled{pt(0.0, 0.5)};
    CHECK_THROWS_AS(nlse::summarize_branches(unlabelled), nlse::DomainError);
}

TEST_CASE("linear transfer sweep is single-valued") {
    nlse::ScatterContext ctx;
    ctx.spec = {2, 10.0, 2.0};
    ctx.g = 0.0;
    nlse::SolverOptions opts;
    opts.grid_points = 400;
    const auto pts = nlse::sweep_transfer(ctx, nlse::linspace(1.0, 1.3, 31), opts);
    CHECK(pts.size() == 31);
    CHECK(count_ids(pts) == 1);
}

TEST_CASE("triple barrier sweep has a detached loop") {
    nlse::ScatterContext ctx;
    ctx.spec = {3, 10.0, 2.0};
    ctx.g = 0.036;
    const auto pts = nlse::sweep_transfer(ctx, nlse::linspace(1.20, 1.29, 91));
    CHECK(count_ids(pts) >= 2);
    const auto summary = nlse::summarize_branches(pts);
    const bool detached = std::any_of(summary.begin(), summary.end(), [](const nlse::BranchSummary& s) {
        return s.mu_min > 1.20 && s.mu_max < 1.29 && s.tsq_max < 1.0 && s.points > 4;
    });
    CHECK(detached);
}
