// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#pragma once

#include <vector>

#include "nlse/transfermap.hpp"

namespace nlse {

/// Sort points by (mu, Tsq) and label connected solution branches.
///
/// Roots at neighbouring mu values are linked by an order-preserving minimum
/// cost matching on Tsq. Points left over where the root count changes are
/// paired with their neighbour as a fold, an odd leftover opens a new branch.
/// branch_id numbers the connected components in order of first appearance.
void assemble_branches(std::vector<BranchPoint>& points);

struct BranchSummary {
    int branch_id = 0;
    int points = 0;
    double mu_min = 0.0;
    double mu_max = 0.0;
    double tsq_min = 0.0;
    double tsq_max = 0.0;
};

/// Per-branch extent, ordered by branch_id. Requires labelled points.
std::vector<BranchSummary> summarize_branches(const std::vector<BranchPoint>& points);

/// n equally spaced values from a to b inclusive.
std::vector<double> linspace(double a, double b, int n);

/// solve_branches at every mu (in parallel), then assemble_branches.
std::vector<BranchPoint> sweep_transfer(const ScatterContext& base, const std::vector<double>& mus,
                                        const SolverOptions& opts = {}, int threads = 0);

}  // namespace nlse
