// Seeded Monte Carlo experiments over the spreading rule.
//
// Occupation observable: the estimate is the probability that the root
// (center cell for grids) is occupied once the dynamics stop. Literal
// complete occupation of a truncation is degenerate as a proxy for the
// infinite-volume transition: a pre-occupied boundary cascades inward
// deterministically whenever k is at most the child count, and with a vacant
// boundary a degree-1 leaf below the rule threshold can never flip, so the
// whole truncation occupies with probability about p^(leaf count). The root
// marginal is the one-vertex statistic that still sees the transition, and it
// obeys an exact bottom-up recursion (vacancy q_{m+1} = (1-p) P(at least
// child_count - k + 1 of the children stay vacant), q_0 = 1-p) that the
// tests replay against the estimates.
//
// Reproducibility: each trial draws from its own mt19937_64 seeded with
// substream_seed(seed, stream, trial), so estimates are independent of
// evaluation order. Occupancy consumes one uniform per vertex in id order,
// pre-occupied boundary vertices included, which keeps the vertex-to-draw
// alignment fixed.
#pragma once

#include <cstdint>
#include <vector>

#include "bootperc/generators.hpp"

namespace bootperc {

enum class Boundary { vacant, occupied };

struct SweepRow {
    double p = 0;
    double estimate = 0;
    std::uint64_t trials = 0;
    double std_err = 0;  // sqrt(estimate (1 - estimate) / trials)
    std::uint32_t d = 0;
    std::uint32_t k = 0;
    std::uint32_t depth = 0;
    std::uint64_t seed = 0;

    bool operator==(const SweepRow&) const = default;
};

// Probability that the vacant witness subtree below a vertex of the d-ary
// tree fails to reach n levels down, by direct simulation of the vacant
// component: a vertex reaches level m+1 when at least d+1-k of its children
// are vacant and themselves reach level m. The estimate targets the n-fold
// iteration of eval_B from 0. Requires 2 <= k <= d; trials >= 1.
SweepRow mc_extinction_depth_n(std::uint32_t d, std::uint32_t k, double p,
                               std::uint32_t n, std::uint64_t trials,
                               std::uint64_t seed);

// Root (center for grids) occupation frequency at each p of the grid.
// Boundary::occupied pre-occupies the truncation boundary (grid perimeter)
// on top of the density-p draw. Substreams are indexed by (p index, trial);
// Galton-Watson structures are resampled per trial from the same stream.
std::vector<SweepRow> mc_occupation_sweep(const GeneratorSpec& spec, std::uint32_t k,
                                          const std::vector<double>& p_grid,
                                          std::uint64_t trials, std::uint32_t depth,
                                          Boundary boundary, std::uint64_t seed);

// Lower median over trials of the per-trial critical density. Each trial
// fixes one uniform U_v per vertex and bisects the smallest p for which the
// root ends occupied (vertex initially occupied iff U_v < p, vacant
// boundary). Sharing the variates makes the indicator monotone in p, so the
// per-trial threshold is exact to tol.
double mc_empirical_pc(const GeneratorSpec& spec, std::uint32_t k, std::uint32_t depth,
                       std::uint64_t trials, double tol, std::uint64_t seed);

}  // namespace bootperc
