// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#include "nlse/branches.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nlse/error.hpp"
#include "nlse/parallel.hpp"

namespace nlse {
namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
};

// Order-preserving matching of every element of `small` into `large`
// minimizing the summed |difference|. Returns for each large index the
// matched small index or -1.
std::vector<int> align(const std::vector<double>& small, const std::vector<double>& large) {
    const std::size_t m = small.size();
    const std::size_t n = large.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> f(m + 1, std::vector<double>(n + 1, inf));
    for (std::size_t j = 0; j <= n; ++j) {
        f[0][j] = 0.0;
    }
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = i; j <= n; ++j) {
            const double skip = f[i][j - 1];
            const double take = f[i - 1][j - 1] + std::abs(small[i - 1] - large[j - 1]);
            f[i][j] = take <= skip ? take : skip;
        }
    }
    std::vector<int> match(n, -1);
    std::size_t i = m;
    std::size_t j = n;
    while (i > 0) {
        const double take = f[i - 1][j - 1] + std::abs(small[i - 1] - large[j - 1]);
        if (take <= f[i][j - 1]) {
            match[j - 1] = static_cast<int>(i - 1);
            --i;
        }
        --j;
    }
    return match;
}

}  // namespace

void assemble_branches(std::vector<BranchPoint>& points) {
    std::stable_sort(points.begin(), points.end(), [](const BranchPoint& a, const BranchPoint& b) {
        if (a.mu != b.mu) {
            return a.mu < b.mu;
        }
        return a.Tsq < b.Tsq;
    });
    const int total = static_cast<int>(points.size());
    DisjointSet ds(total);

    // Group boundaries.
    std::vector<int> starts;
    for (int i = 0; i < total; ++i) {
        if (i == 0 || points[i].mu != points[i - 1].mu) {
            starts.push_back(i);
        }
    }
    starts.push_back(total);

    auto values = [&](int g) {
        std::vector<double> v;
        for (int i = starts[g]; i < starts[g + 1]; ++i) {
            v.push_back(points[i].Tsq);
        }
        return v;
    };
    // Pairs consecutive unmatched entries of one group as folds.
    auto pair_leftovers = [&](int base, const std::vector<int>& match) {
        int pending = -1;
        for (std::size_t j = 0; j < match.size(); ++j) {
            if (match[j] >= 0) {
                continue;
            }
            if (pending < 0) {
                pending = base + static_cast<int>(j);
            } else {
                ds.unite(pending, base + static_cast<int>(j));
                pending = -1;
            }
        }
    };

    const int groups = static_cast<int>(starts.size()) - 1;
    for (int g = 0; g + 1 < groups; ++g) {
        const auto a = values(g);
        const auto b = values(g + 1);
        if (a.empty() || b.empty()) {
            continue;
        }
        if (a.size() <= b.size()) {
            const auto match = align(a, b);
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (match[j] >= 0) {
                    ds.unite(starts[g] + match[j], starts[g + 1] + static_cast<int>(j));
                }
            }
            pair_leftovers(starts[g + 1], match);
        } else {
            const auto match = align(b, a);
            for (std::size_t j = 0; j < a.size(); ++j) {
                if (match[j] >= 0) {
                    ds.unite(starts[g + 1] + match[j], starts[g] + static_cast<int>(j));
                }
            }
            pair_leftovers(starts[g], match);
        }
    }

    std::vector<int> label(total, -1);
    int next = 0;
    for (int i = 0; i < total; ++i) {
        const int root = ds.find(i);
        if (label[root] < 0) {
            label[root] = next++;
        }
        points[i].branch_id = label[root];
    }
}

std::vector<BranchSummary> summarize_branches(const std::vector<BranchPoint>& points) {
    std::vector<BranchSummary> out;
    for (const auto& p : points) {
        if (p.branch_id < 0) {
            throw DomainError("summarize_branches: unlabelled point");
        }
        if (static_cast<std::size_t>(p.branch_id) >= out.size()) {
            out.resize(p.branch_id + 1);
        }
        auto& s = out[p.branch_id];
        if (s.points == 0) {
            s.branch_id = p.branch_id;
            s.mu_min = s.mu_max = p.mu;
            s.tsq_min = s.tsq_max = p.Tsq;
        }
        ++s.points;
        s.mu_min = std::min(s.mu_min, p.mu);
        s.mu_max = std::max(s.mu_max, p.mu);
        s.tsq_min = std::min(s.tsq_min, p.Tsq);
        s.tsq_max = std::max(s.tsq_max, p.Tsq);
    }
    return out;
}

std::vector<double> linspace(double a, double b, int n) {
    if (n < 2) {
        throw DomainError("linspace: needs at least two points");
    }
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
    }
    v.back() = b;
    return v;
}

std::vector<BranchPoint> sweep_transfer(const ScatterContext& base, const std::vector<double>& mus,
                                        const SolverOptions& opts, int threads) {
    std::vector<std::vector<BranchPoint>> per(mus.size());
    parallel_for(
        mus.size(),
        [&](std::size_t i) {
            ScatterContext ctx = base;
            ctx.mu = mus[i];
            per[i] = solve_branches(ctx, opts);
        },
        threads);
    std::vector<BranchPoint> all;
    for (auto& v : per) {
        all.insert(all.end(), v.begin(), v.end());
    }
    assemble_branches(all);
    return all;
}

}  // namespace nlse
