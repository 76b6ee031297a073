// Cutset contents, the min-content dynamic program, branching-number
// estimation, and beta-pruning of finite trees into forts.
//
// The lambda-content of a cutset is sum over edges of lambda^(-|e|), |e| the
// depth of the edge's child endpoint. The infimum over cutsets separating the
// root from the truncation boundary is what the rest of the library reads the
// branching structure from: it stays bounded away from zero below the
// branching number and decays geometrically above it.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bootperc/forts.hpp"
#include "bootperc/graph.hpp"

namespace bootperc {

struct CutSet {
    std::vector<std::pair<VertexId, VertexId>> edges;  // (parent, child)
};

struct ContentReport {
    double lambda = 0;
    double value = 0;
};

// Sum of lambda^(-depth(child)) over the cutset. lambda > 0; every edge must
// be a parent-child edge of t.
ContentReport content(const RootedTree& t, const CutSet& cut, double lambda);

// True iff cut is an antichain and every root-to-boundary path crosses it.
bool validate_cutset(const RootedTree& t, const CutSet& cut);

struct MinCutResult {
    double value = 0;
    CutSet argmin;
};

// Exact minimum content over cutsets separating the root from the boundary
// leaves: m(v) = min(lambda^(-depth v), sum of children m), with boundary
// vertices forced to cut above and interior dead ends costing nothing. Ties
// cut above (the smaller cutset). Requires at least one edge.
MinCutResult min_cut_content(const RootedTree& t, double lambda);

using TreeFamily = std::function<RootedTree(std::uint32_t)>;

struct BranchingEstimate {
    double lower = 0;
    double upper = 0;
    std::uint32_t depth_used = 0;  // deepest tree depth evaluated
};

// Heuristic bracketing of the branching number. For each lambda the ratio
// min_cut(family(2D)) / min_cut(family(D)) is classified non-vanishing
// (> 0.9), decaying (< 0.5, checked at each depth so hopeless lambdas exit
// early), or in the dead zone; bisection then narrows [lambda_lo, lambda_hi].
// Each classified lambda also yields a model-based bound br ~ lambda *
// ratio^(1/extra depth), and the reported interval is the tightest such pair.
// Exact for self-similar families, an estimate elsewhere. Throws when the
// endpoints do not classify as non-vanishing resp. decaying.
BranchingEstimate estimate_branching(const TreeFamily& family, double lambda_lo,
                                     double lambda_hi,
                                     const std::vector<std::uint32_t>& depths);

struct PruneReport {
    FortCertificate fort;  // 1-fort of the pruned tree (k-fort after prune_k)
    double beta = 0;
    double alpha = 0;  // beta / (beta - 1)
    double lhs = 0;    // (beta-1)-content of the fort's surviving leaf edges
    double rhs = 0;    // (beta-content of the tree boundary) ^ alpha
};

// Delete, below every vertex, the child subtree of largest boundary content
// (mu_beta, bare vertex counting 1; ties delete the smallest id), recursing
// into the survivors. The remainder is a 1-fort containing the root and
// satisfies lhs <= rhs. beta > 1, t finite.
PruneReport prune_beta(const RootedTree& t, double beta);

// Iterate prune_beta k times, pruning each fort with betas[i]; the i-th
// report carries a certified (i+1)-fort of the original tree. Throws when a
// fort collapses to a single vertex before the last iteration.
std::vector<PruneReport> prune_k(const RootedTree& t, std::uint32_t k,
                                 const std::vector<double>& betas);

// Branching lower bound k - 2k ln(k)/ln(N) for trees whose interior carries
// no (k-1)-fort of size <= N. Natural logarithms. k >= 2, N >= 2.
double fortfree_br_bound(std::uint32_t k, std::uint64_t N);

}  // namespace bootperc
