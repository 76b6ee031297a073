#include "bootperc/treecalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace bootperc {

namespace {

// vertices ordered deepest first, so children precede parents
std::vector<VertexId> bottom_up_order(const RootedTree& t) {
    std::vector<VertexId> order(t.graph.num_vertices());
    for (VertexId v = 0; v < t.graph.num_vertices(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        return t.depth[a] > t.depth[b];
    });
    return order;
}

}  // namespace

ContentReport content(const RootedTree& t, const CutSet& cut, double lambda) {
    if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
    ContentReport rep;
    rep.lambda = lambda;
    for (auto [parent, child] : cut.edges) {
        if (child >= t.graph.num_vertices() || t.parent[child] != parent)
            throw std::invalid_argument("not a parent-child edge of the tree");
        rep.value += std::pow(lambda, -double(t.depth[child]));
    }
    return rep;
}

bool validate_cutset(const RootedTree& t, const CutSet& cut) {
    std::vector<std::uint8_t> cut_above(t.graph.num_vertices(), 0);
    for (auto [parent, child] : cut.edges) {
        if (child >= t.graph.num_vertices() || t.parent[child] != parent) return false;
        if (cut_above[child]) return false;  // duplicate edge
        cut_above[child] = 1;
    }
    // antichain: no cut edge strictly above another
    for (auto [parent, child] : cut.edges) {
        for (VertexId a = parent; a != kNoVertex; a = t.parent[a])
            if (cut_above[a]) return false;
    }
    // coverage: walking from the root without crossing cuts never reaches
    // the boundary
    std::vector<VertexId> stack;
    if (!cut_above[t.root]) stack.push_back(t.root);
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        if (t.boundary[v]) return false;
        t.for_each_child(v, [&](VertexId w) {
            if (!cut_above[w]) stack.push_back(w);
        });
    }
    return true;
}

MinCutResult min_cut_content(const RootedTree& t, double lambda) {
    if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
    if (t.graph.num_edges() == 0) throw std::invalid_argument("tree has no edges");
    const VertexId n = t.graph.num_vertices();

    // 0 = cut the edge above, 1 = push the cut into the subtree
    std::vector<double> m(n, 0.0);
    std::vector<std::uint8_t> below(n, 0);
    for (VertexId v : bottom_up_order(t)) {
        if (t.boundary[v]) {
            m[v] = std::pow(lambda, -double(t.depth[v]));
        } else if (t.child_count(v) == 0) {
            below[v] = 1;  // dead end, nothing to separate
        } else {
            double sum = 0;
            t.for_each_child(v, [&](VertexId w) { sum += m[w]; });
            double above = std::pow(lambda, -double(t.depth[v]));
            if (above <= sum) {
                m[v] = above;
            } else {
                m[v] = sum;
                below[v] = 1;
            }
        }
    }

    MinCutResult res;
    t.for_each_child(t.root, [&](VertexId w) { res.value += m[w]; });
    std::vector<VertexId> stack;
    t.for_each_child(t.root, [&](VertexId w) { stack.push_back(w); });
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        if (!below[v])
            res.argmin.edges.emplace_back(t.parent[v], v);
        else
            t.for_each_child(v, [&](VertexId w) { stack.push_back(w); });
    }
    return res;
}

namespace {

enum class Trend { non_vanishing, dead_zone, decaying };

struct TrendResult {
    Trend trend;
    std::uint32_t delta;  // depth gap between the two trees compared
};

}  // namespace

BranchingEstimate estimate_branching(const TreeFamily& family, double lambda_lo,
                                     double lambda_hi,
                                     const std::vector<std::uint32_t>& depths) {
    if (!(lambda_lo < lambda_hi)) throw std::invalid_argument("lambda_lo < lambda_hi required");
    if (depths.empty()) throw std::invalid_argument("depths must be non-empty");
    std::vector<std::uint32_t> ds = depths;
    std::sort(ds.begin(), ds.end());

    std::map<std::uint32_t, RootedTree> cache;
    std::uint32_t deepest = 0;
    auto tree_at = [&](std::uint32_t d) -> const RootedTree& {
        auto it = cache.find(d);
        if (it == cache.end()) {
            it = cache.emplace(d, family(d)).first;
            std::uint32_t depth = *std::max_element(it->second.depth.begin(),
                                                    it->second.depth.end());
            deepest = std::max(deepest, depth);
        }
        return it->second;
    };

    auto classify = [&](double lambda) -> TrendResult {
        double ratio = 0;
        std::uint32_t delta = 0;
        for (std::uint32_t d : ds) {
            const RootedTree& small = tree_at(d);
            const RootedTree& large = tree_at(2 * d);
            double v_small = min_cut_content(small, lambda).value;
            double v_large = min_cut_content(large, lambda).value;
            if (!(v_small > 0))
                throw std::runtime_error("inconclusive: family has no boundary content");
            ratio = v_large / v_small;
            delta = *std::max_element(large.depth.begin(), large.depth.end()) -
                    *std::max_element(small.depth.begin(), small.depth.end());
            if (ratio < 0.5) return {Trend::decaying, delta};
        }
        return {ratio > 0.9 ? Trend::non_vanishing : Trend::dead_zone, delta};
    };

    // each classification also bounds br through the geometric model
    // value(depth) ~ (br/lambda)^depth
    double lower = 0, upper = std::numeric_limits<double>::infinity();
    auto absorb = [&](double lambda, const TrendResult& r) {
        double inv = 1.0 / r.delta;
        if (r.trend == Trend::non_vanishing) {
            lower = std::max(lower, lambda * std::pow(0.9, inv));
        } else if (r.trend == Trend::decaying) {
            upper = std::min(upper, lambda * std::pow(0.5, inv));
        } else {
            lower = std::max(lower, lambda * std::pow(0.5, inv));
            upper = std::min(upper, lambda * std::pow(0.9, inv));
        }
    };

    TrendResult at_lo = classify(lambda_lo);
    if (at_lo.trend != Trend::non_vanishing)
        throw std::runtime_error("inconclusive: lower lambda does not give non-vanishing cuts");
    TrendResult at_hi = classify(lambda_hi);
    if (at_hi.trend != Trend::decaying)
        throw std::runtime_error("inconclusive: upper lambda does not give decaying cuts");
    absorb(lambda_lo, at_lo);
    absorb(lambda_hi, at_hi);

    double lo = lambda_lo, hi = lambda_hi;
    for (int iter = 0; iter < 60 && hi - lo > 1e-3; ++iter) {
        double mid = 0.5 * (lo + hi);
        TrendResult r = classify(mid);
        absorb(mid, r);
        if (r.trend == Trend::non_vanishing)
            lo = mid;
        else
            hi = mid;
    }

    BranchingEstimate est;
    est.lower = std::min(lower, upper);
    est.upper = upper;
    est.depth_used = deepest;
    return est;
}

namespace {

// boundary content of the subtree below v, measured from v:
// a bare vertex counts 1, otherwise sum of children contents over beta
std::vector<double> subtree_contents(const RootedTree& t, double beta) {
    std::vector<double> s(t.graph.num_vertices(), 0.0);
    for (VertexId v : bottom_up_order(t)) {
        if (t.child_count(v) == 0) {
            s[v] = 1.0;
        } else {
            double sum = 0;
            t.for_each_child(v, [&](VertexId w) { sum += s[w]; });
            s[v] = sum / beta;
        }
    }
    return s;
}

}  // namespace

PruneReport prune_beta(const RootedTree& t, double beta) {
    if (!(beta > 1)) throw std::invalid_argument("beta must exceed 1");
    std::vector<double> s = subtree_contents(t, beta);

    PruneReport rep;
    rep.beta = beta;
    rep.alpha = beta / (beta - 1);
    rep.rhs = std::pow(s[t.root], rep.alpha);
    rep.fort.k = 1;
    rep.fort.host_hash = t.graph.structure_hash();

    std::vector<VertexId> stack{t.root};
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        rep.fort.vertices.push_back(v);
        if (t.child_count(v) == 0) {
            rep.lhs += std::pow(beta - 1, -double(t.depth[v]));
            continue;
        }
        // drop the largest-content child, smallest id on ties
        std::vector<VertexId> kids = t.children_of(v);
        VertexId drop = kids[0];
        for (VertexId w : kids)
            if (s[w] > s[drop]) drop = w;
        for (VertexId w : kids)
            if (w != drop) stack.push_back(w);
    }
    std::sort(rep.fort.vertices.begin(), rep.fort.vertices.end());
    return rep;
}

std::vector<PruneReport> prune_k(const RootedTree& t, std::uint32_t k,
                                 const std::vector<double>& betas) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (betas.size() < k) throw std::invalid_argument("need one beta per iteration");

    std::vector<PruneReport> reports;
    RootedTree current = t;
    std::vector<VertexId> to_original(t.graph.num_vertices());
    for (VertexId v = 0; v < t.graph.num_vertices(); ++v) to_original[v] = v;

    for (std::uint32_t i = 0; i < k; ++i) {
        PruneReport rep = prune_beta(current, betas[i]);
        std::vector<VertexId> kept = rep.fort.vertices;  // current-tree ids, sorted

        rep.fort.k = i + 1;
        rep.fort.host_hash = t.graph.structure_hash();
        for (VertexId& v : rep.fort.vertices) v = to_original[v];
        std::sort(rep.fort.vertices.begin(), rep.fort.vertices.end());
        reports.push_back(rep);

        if (kept.size() == 1) {
            if (i + 1 < k)
                throw std::runtime_error("fort collapsed to a single vertex before the last pruning");
            break;
        }
        // rebuild the surviving subtree with fresh ids
        std::vector<VertexId> rank(current.graph.num_vertices(), kNoVertex);
        for (std::size_t j = 0; j < kept.size(); ++j) rank[kept[j]] = static_cast<VertexId>(j);
        std::vector<VertexId> parents(kept.size());
        std::vector<VertexId> next_map(kept.size());
        for (std::size_t j = 0; j < kept.size(); ++j) {
            VertexId old = kept[j];
            parents[j] = old == current.root ? kNoVertex : rank[current.parent[old]];
            next_map[j] = to_original[old];
        }
        current = RootedTree::from_parents(parents);
        to_original = std::move(next_map);
    }
    return reports;
}

double fortfree_br_bound(std::uint32_t k, std::uint64_t N) {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    if (N < 2) throw std::invalid_argument("N must be >= 2");
    return double(k) - 2.0 * k * std::log(double(k)) / std::log(double(N));
}

}  // namespace bootperc
