#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "bootperc/generators.hpp"
#include "bootperc/treecalc.hpp"

using namespace bootperc;

namespace {

RootedTree random_tree(std::mt19937_64& rng, VertexId n) {
    std::vector<VertexId> parents{kNoVertex};
    for (VertexId v = 1; v < n; ++v) parents.push_back(rng() % v);
    return RootedTree::from_parents(parents);
}

// brute force: minimum content over all edge subsets that screen the root
// from every boundary vertex
double brute_min_cut(const RootedTree& t, double lambda) {
    const VertexId n = t.graph.num_vertices();
    std::vector<VertexId> non_root;
    for (VertexId v = 0; v < n; ++v)
        if (v != t.root) non_root.push_back(v);
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 0; mask < (1u << non_root.size()); ++mask) {
        std::vector<std::uint8_t> cut(n, 0);
        double value = 0;
        for (std::size_t i = 0; i < non_root.size(); ++i)
            if (mask >> i & 1) {
                cut[non_root[i]] = 1;
                value += std::pow(lambda, -double(t.depth[non_root[i]]));
            }
        if (value >= best) continue;
        std::vector<VertexId> stack{t.root};
        bool covers = !cut[t.root];
        while (covers && !stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            if (t.boundary[v]) covers = false;
            t.for_each_child(v, [&](VertexId w) {
                if (!cut[w]) stack.push_back(w);
            });
        }
        if (covers) best = value;
    }
    return best;
}

RootedTree induced_subtree(const RootedTree& t, const std::vector<VertexId>& keep) {
    std::vector<VertexId> rank(t.graph.num_vertices(), kNoVertex);
    for (std::size_t j = 0; j < keep.size(); ++j) rank[keep[j]] = static_cast<VertexId>(j);
    std::vector<VertexId> parents(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
        parents[j] = keep[j] == t.root ? kNoVertex : rank[t.parent[keep[j]]];
    return RootedTree::from_parents(parents);
}

}  // namespace

TEST_CASE("cutset content sums over edge depths") {
    RootedTree t = gen_regular_tree(3, 4);
    CutSet at_root;
    t.for_each_child(t.root, [&](VertexId w) { at_root.edges.emplace_back(t.root, w); });
    CHECK(content(t, at_root, 1.7).value == doctest::Approx(3 / 1.7));
    CHECK(content(t, at_root, 1.0).value == doctest::Approx(3.0));

    CutSet level3;
    for (VertexId v = 0; v < t.graph.num_vertices(); ++v)
        if (t.depth[v] == 3) level3.edges.emplace_back(t.parent[v], v);
    CHECK(level3.edges.size() == 27);
    CHECK(content(t, level3, 3.0).value == doctest::Approx(1.0));

    CHECK_THROWS_AS(content(t, at_root, 0.0), std::invalid_argument);
    CutSet bogus;
    bogus.edges.emplace_back(1, 0);
    CHECK_THROWS_AS(content(t, bogus, 2.0), std::invalid_argument);

    CHECK(validate_cutset(t, at_root));
    CHECK(validate_cutset(t, level3));
    CutSet nested = at_root;
    nested.edges.insert(nested.edges.end(), level3.edges.begin(), level3.edges.end());
    CHECK(!validate_cutset(t, nested));  // not an antichain
    CutSet partial;
    partial.edges.emplace_back(t.root, t.children_of(t.root)[0]);
    CHECK(!validate_cutset(t, partial));  // leaves paths uncovered
}

TEST_CASE("min cut content on regular trees") {
    RootedTree single = RootedTree::from_parents({kNoVertex, 0});
    MinCutResult one = min_cut_content(single, 5.0);
    CHECK(one.value == doctest::Approx(0.2));
    REQUIRE(one.argmin.edges.size() == 1);
    CHECK(one.argmin.edges[0] == std::pair<VertexId, VertexId>{0, 1});

    for (std::uint32_t n = 2; n <= 7; ++n) {
        RootedTree t2 = gen_regular_tree(2, n);
        MinCutResult at2 = min_cut_content(t2, 2.0);
        CHECK(at2.value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(at2.argmin.edges.size() == 2);  // ties cut high
        MinCutResult at3 = min_cut_content(t2, 3.0);
        CHECK(at3.value == doctest::Approx(std::pow(2.0 / 3.0, n)));
        CHECK(at3.argmin.edges.size() == (1u << n));
    }
    CHECK_THROWS_AS(min_cut_content(RootedTree::from_parents({kNoVertex}), 2.0),
                    std::invalid_argument);
}

TEST_CASE("interior dead ends cost nothing to cut") {
    // root -> {1, 2}; 1 -> 3 (boundary); 2 is a dead end above the boundary
    RootedTree t = RootedTree::from_parents({kNoVertex, 0, 0, 1}, 2);
    MinCutResult res = min_cut_content(t, 2.0);
    CHECK(res.value == doctest::Approx(0.25));
    REQUIRE(res.argmin.edges.size() == 1);
    CHECK(res.argmin.edges[0] == std::pair<VertexId, VertexId>{1, 3});
    CHECK(validate_cutset(t, res.argmin));
}

TEST_CASE("min cut matches subset brute force and stays antichain") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 120; ++trial) {
        RootedTree t = random_tree(rng, 3 + rng() % 9);
        for (double lambda : {0.7, 1.0, 1.9, 3.2}) {
            MinCutResult res = min_cut_content(t, lambda);
            CHECK(res.value == doctest::Approx(brute_min_cut(t, lambda)).epsilon(1e-12));
            CHECK(validate_cutset(t, res.argmin));
            CHECK(content(t, res.argmin, lambda).value ==
                  doctest::Approx(res.value).epsilon(1e-12));
        }
        // non-increasing in lambda
        double prev = std::numeric_limits<double>::infinity();
        for (double lambda = 0.5; lambda < 4; lambda += 0.25) {
            double v = min_cut_content(t, lambda).value;
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("branching estimate brackets known values") {
    TreeFamily t3 = [](std::uint32_t d) { return gen_regular_tree(3, d); };
    BranchingEstimate e3 = estimate_branching(t3, 2.0, 4.5, {3, 6});
    CHECK(e3.lower <= 3.0);
    CHECK(3.0 <= e3.upper);
    CHECK(e3.upper - e3.lower <= 0.1);
    CHECK(e3.depth_used == 12);

    TreeFamily sub4 = [](std::uint32_t d) { return gen_subdivided_tree(4, d).tree; };
    BranchingEstimate e2 = estimate_branching(sub4, 1.4, 3.0, {2, 4});
    CHECK(e2.lower <= 2.0);
    CHECK(2.0 <= e2.upper);
    CHECK(e2.upper - e2.lower <= 0.1);

    TreeFamily path = [](std::uint32_t d) { return gen_path(d); };
    BranchingEstimate e1 = estimate_branching(path, 0.8, 2.0, {2, 4, 6});
    CHECK(e1.lower <= 1.0);
    CHECK(1.0 <= e1.upper);
    CHECK(e1.upper - e1.lower <= 0.1);

    CHECK_THROWS_AS(estimate_branching(path, 3.0, 4.0, {2}), std::runtime_error);
    CHECK_THROWS_AS(estimate_branching(path, 2.0, 1.0, {2}), std::invalid_argument);
}

TEST_CASE("beta pruning of the star matches the worked inequality") {
    RootedTree star = RootedTree::from_parents({kNoVertex, 0, 0, 0, 0, 0});
    PruneReport rep = prune_beta(star, 2.0);
    CHECK(rep.fort.vertices == std::vector<VertexId>{0, 2, 3, 4, 5});
    CHECK(rep.alpha == doctest::Approx(2.0));
    CHECK(rep.lhs == doctest::Approx(4.0));
    CHECK(rep.rhs == doctest::Approx(6.25));
    CHECK(is_fort(star.graph, rep.fort.vertices, 1));
    CHECK_THROWS_AS(prune_beta(star, 1.0), std::invalid_argument);
}

TEST_CASE("integer beta on the beta-ary tree achieves equality") {
    RootedTree t3 = gen_regular_tree(3, 4);
    PruneReport rep = prune_beta(t3, 3.0);
    CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.rhs == doctest::Approx(1.0).epsilon(1e-9));
    RootedTree pruned = induced_subtree(t3, rep.fort.vertices);
    for (VertexId v = 0; v < pruned.graph.num_vertices(); ++v)
        if (pruned.depth[v] < 4) CHECK(pruned.child_count(v) == 2);
}

TEST_CASE("pruning inequality holds across random trees") {
    std::mt19937_64 rng(88);
    std::uniform_real_distribution<double> beta_dist(1.1, 5.0);
    OffspringDistribution gw({{0, 0.25}, {1, 0.25}, {2, 0.25}, {4, 0.25}});
    for (int trial = 0; trial < 1000; ++trial) {
        RootedTree t = gen_gw_tree(gw, 7, trial);
        double beta = beta_dist(rng);
        PruneReport rep = prune_beta(t, beta);
        CHECK(rep.lhs <= rep.rhs + 1e-9);
        CHECK(is_fort(t.graph, rep.fort.vertices, 1));
        CHECK(std::find(rep.fort.vertices.begin(), rep.fort.vertices.end(), t.root) !=
              rep.fort.vertices.end());

        // recompute both sides from the certificate
        double lhs = 0;
        for (VertexId v : rep.fort.vertices)
            if (t.child_count(v) == 0) lhs += std::pow(beta - 1, -double(t.depth[v]));
        CHECK(lhs == doctest::Approx(rep.lhs).epsilon(1e-12));
    }
}

TEST_CASE("iterated pruning yields k-forts") {
    RootedTree t3 = gen_regular_tree(3, 6);
    auto reports = prune_k(t3, 1, {3.0});
    REQUIRE(reports.size() == 1);
    RootedTree pruned = induced_subtree(t3, reports[0].fort.vertices);
    CHECK(min_cut_content(pruned, 2.0).value == doctest::Approx(1.0).epsilon(1e-9));

    // down to the bare root when k matches the child count
    RootedTree t2 = gen_regular_tree(2, 3);
    auto collapse = prune_k(t2, 2, {2.0, 2.0});
    REQUIRE(collapse.size() == 2);
    CHECK(collapse[1].fort.vertices == std::vector<VertexId>{t2.root});
    CHECK(collapse[1].fort.k == 2);
    CHECK(is_fort(t2.graph, collapse[1].fort.vertices, 2));

    // intermediate singleton is an error
    CHECK_THROWS_AS(prune_k(gen_path(5), 2, {2.0, 2.0}), std::runtime_error);
    CHECK_THROWS_AS(prune_k(t2, 2, {2.0}), std::invalid_argument);

    std::mt19937_64 rng(3);
    OffspringDistribution gw({{1, 0.3}, {2, 0.3}, {3, 0.4}});
    for (int trial = 0; trial < 40; ++trial) {
        RootedTree t = gen_gw_tree(gw, 6, 1000 + trial);
        std::vector<double> betas{2.0 + (rng() % 100) / 50.0, 2.0 + (rng() % 100) / 50.0};
        try {
            auto reps = prune_k(t, 2, betas);
            for (std::size_t i = 0; i < reps.size(); ++i) {
                CHECK(is_fort(t.graph, reps[i].fort.vertices, static_cast<std::uint32_t>(i + 1)));
                CHECK(reps[i].lhs <= reps[i].rhs + 1e-9);
            }
        } catch (const std::runtime_error&) {
            // collapse to a singleton before the last round is a legal refusal
        }
    }
}

TEST_CASE("sorted power-mean inequality behind the pruning") {
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> m_dist(0.01, 3.0);
    std::uniform_real_distribution<double> beta_dist(1.05, 5.0);
    for (int trial = 0; trial < 10000; ++trial) {
        std::size_t l = 1 + rng() % 6;
        std::vector<double> m(l);
        for (double& x : m) x = m_dist(rng);
        std::sort(m.begin(), m.end());
        double beta = beta_dist(rng);
        double alpha = beta / (beta - 1);
        double lhs = 0, total = 0;
        for (std::size_t i = 0; i < l; ++i) total += m[i];
        for (std::size_t i = 0; i + 1 < l; ++i) lhs += std::pow(m[i], alpha);
        lhs /= beta - 1;
        double rhs = std::pow(total / beta, alpha);
        CHECK(lhs <= rhs * (1 + 1e-9) + 1e-12);
    }
}

TEST_CASE("fort-free branching bound") {
    CHECK(fortfree_br_bound(2, std::uint64_t{1} << 40) == doctest::Approx(1.9).epsilon(1e-12));
    CHECK(fortfree_br_bound(2, 1 << 20) == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(fortfree_br_bound(3, 3) == doctest::Approx(3.0 - 6.0));
    CHECK_THROWS_AS(fortfree_br_bound(1, 16), std::invalid_argument);
    CHECK_THROWS_AS(fortfree_br_bound(2, 1), std::invalid_argument);

    // greedy family lower endpoints sit above the (weak) bound
    for (std::uint32_t N : {4u, 8u}) {
        TreeFamily fam = [N](std::uint32_t d) { return gen_greedy_fortfree_tree(N, d); };
        BranchingEstimate est = estimate_branching(fam, 1.2, 2.6, {3, 5});
        CHECK(est.lower >= fortfree_br_bound(2, N) - 0.05);
        CHECK(est.upper <= 2.0 + 0.05);  // max degree 3 caps the branching
    }
}
