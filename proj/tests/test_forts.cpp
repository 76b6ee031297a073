#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bootperc/dynamics.hpp"
#include "bootperc/forts.hpp"
#include "bootperc/generators.hpp"

using namespace bootperc;

namespace {

Graph random_graph(std::mt19937_64& rng, VertexId n, double edge_prob) {
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b)
            if (u(rng) < edge_prob) edges.emplace_back(a, b);
    return Graph::from_edges(n, edges);
}

RootedTree random_tree(std::mt19937_64& rng, VertexId n) {
    std::vector<VertexId> parents{kNoVertex};
    for (VertexId v = 1; v < n; ++v) parents.push_back(rng() % v);
    return RootedTree::from_parents(parents);
}

// Oracle: paint one eligible vertex at a time in random order. Painting is
// monotone, so the fixed red set must match the synchronous rounds.
std::vector<std::uint8_t> async_red(const RootedTree& t, std::uint32_t k,
                                    BoundaryMode mode, std::mt19937_64& rng) {
    const VertexId n = t.graph.num_vertices();
    std::vector<std::uint8_t> red(n, 0);
    while (true) {
        std::vector<VertexId> eligible;
        for (VertexId v = 0; v < n; ++v) {
            if (red[v]) continue;
            if (mode == BoundaryMode::open && t.boundary[v]) continue;
            std::uint32_t uncolored = 0;
            t.for_each_child(v, [&](VertexId w) { uncolored += !red[w]; });
            if (uncolored <= k - 1) eligible.push_back(v);
        }
        if (eligible.empty()) return red;
        red[eligible[rng() % eligible.size()]] = 1;
    }
}

// Reference for the minimal fort: check every subset of a tiny graph.
std::optional<std::vector<VertexId>> brute_min_fort(const Graph& g, std::uint32_t k,
                                                    std::size_t max_size) {
    std::optional<std::vector<VertexId>> best;
    for (unsigned mask = 1; mask < (1u << g.num_vertices()); ++mask) {
        std::vector<VertexId> f;
        for (VertexId v = 0; v < g.num_vertices(); ++v)
            if (mask >> v & 1) f.push_back(v);
        if (f.size() > max_size) continue;
        if (!is_fort(g, f, k)) continue;
        if (!best || f.size() < best->size() || (f.size() == best->size() && f < *best))
            best = f;
    }
    return best;
}

}  // namespace

TEST_CASE("fort predicate checks outdegrees and connectivity") {
    RootedTree t3 = gen_regular_tree(3, 3, RootedArity::d_plus_1);
    const Graph& g = t3.graph;
    VertexId leaf = g.num_vertices() - 1;
    CHECK(is_fort(g, {leaf}, 1));
    VertexId interior = t3.children_of(t3.root)[0];
    CHECK(!is_fort(g, {interior}, 1));  // outdegree 4
    CHECK(is_fort(g, {interior}, 4));

    SubdividedTree s = gen_subdivided_tree(3, 2);
    std::vector<VertexId> shell{s.tree.root};
    for (VertexId w : s.tree.graph.neighbors(s.tree.root)) shell.push_back(w);
    std::sort(shell.begin(), shell.end());
    CHECK(shell.size() == 5);
    CHECK(is_fort(s.tree.graph, shell, 1));

    // disconnected pair of leaves is not a fort
    Graph path = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(!is_fort(path, {0, 4}, 1));
    CHECK(is_fort(path, {0, 1, 2, 3, 4}, 0));
    CHECK_THROWS_AS(is_fort(path, {}, 1), std::invalid_argument);
    CHECK_THROWS_AS(is_fort(path, {7}, 1), std::invalid_argument);
}

TEST_CASE("failed occupation leaves vacant forts on trees") {
    std::mt19937_64 rng(41);
    OffspringDistribution d({{0, 0.2}, {1, 0.2}, {2, 0.3}, {3, 0.3}});
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        RootedTree t = gen_gw_tree(d, 6, trial);
        const VertexId n = t.graph.num_vertices();
        if (n < 3) continue;
        std::uint32_t k = 2 + rng() % 2;
        SiteConfig c0(n);
        for (VertexId v = 0; v < n; ++v)
            if (rng() % 100 < 55) c0.set(v);
        SiteConfig fin = run(t.graph, c0, k).final;

        // vacant components that avoid the truncation boundary are (k-1)-forts
        std::vector<std::uint8_t> seen(n, 0);
        for (VertexId v = 0; v < n; ++v) {
            if (fin.test(v) || seen[v]) continue;
            std::vector<VertexId> comp{v}, stack{v};
            seen[v] = 1;
            bool touches_boundary = false;
            while (!stack.empty()) {
                VertexId u = stack.back();
                stack.pop_back();
                if (t.boundary[u]) touches_boundary = true;
                for (VertexId w : t.graph.neighbors(u))
                    if (!fin.test(w) && !seen[w]) {
                        seen[w] = 1;
                        comp.push_back(w);
                        stack.push_back(w);
                    }
            }
            if (touches_boundary) continue;
            std::sort(comp.begin(), comp.end());
            CHECK(is_fort(t.graph, comp, k - 1));
            ++checked;
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("red coloring on the k-ary tree keeps the root uncolored") {
    for (std::uint32_t k : {2u, 3u}) {
        RootedTree t = gen_regular_tree(k, 5, RootedArity::d_ary);
        RedResult res = red_coloring(t, k, BoundaryMode::open);
        CHECK(res.outcome == RedResult::Outcome::kary_subtree);
        CHECK(res.subtree.size() == t.graph.num_vertices());
        for (VertexId v = 0; v < t.graph.num_vertices(); ++v) CHECK(!res.coloring.red[v]);
    }
}

TEST_CASE("red coloring paints the subdivided tree and extracts a 1-fort") {
    SubdividedTree s = gen_subdivided_tree(3, 3);
    RedResult res = red_coloring(s.tree, 2, BoundaryMode::open);
    REQUIRE(res.outcome == RedResult::Outcome::finite_fort);
    CHECK(is_fort(s.tree.graph, res.fort, 1));
    CHECK(std::find(res.fort.begin(), res.fort.end(), s.tree.root) != res.fort.end());
    for (VertexId v : res.fort) CHECK(!s.tree.boundary[v]);
    CHECK(res.fort.size() == 4);  // root plus all but one of its subdivision edges
}

TEST_CASE("red coloring on the greedy tree never yields a small fort") {
    RootedTree t = gen_greedy_fortfree_tree(4, 12);
    RedResult res = red_coloring(t, 2, BoundaryMode::open);
    if (res.outcome == RedResult::Outcome::finite_fort) {
        CHECK(is_fort(t.graph, res.fort, 1));
        CHECK(res.fort.size() > 4);
    } else {
        CHECK(res.outcome == RedResult::Outcome::kary_subtree);
        // genuine binary subtree: interior members have two member children
        std::vector<std::uint8_t> in(t.graph.num_vertices(), 0);
        for (VertexId v : res.subtree) in[v] = 1;
        for (VertexId v : res.subtree) {
            if (t.boundary[v]) continue;
            std::uint32_t inside = 0;
            t.for_each_child(v, [&](VertexId w) { inside += in[w]; });
            CHECK(inside == 2);
        }
    }
}

TEST_CASE("closed boundary mode paints every finite tree") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        RootedTree t = random_tree(rng, 2 + rng() % 30);
        std::uint32_t k = 1 + rng() % 3;
        RedResult res = red_coloring(t, k, BoundaryMode::closed);
        CHECK(res.outcome == RedResult::Outcome::finite_fort);
        for (VertexId v = 0; v < t.graph.num_vertices(); ++v) CHECK(res.coloring.red[v]);
        CHECK(is_fort(t.graph, res.fort, k - 1));
    }
}

TEST_CASE("red fixed point is independent of paint order") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 120; ++trial) {
        RootedTree t = random_tree(rng, 2 + rng() % 49);
        std::uint32_t k = 1 + rng() % 3;
        BoundaryMode mode = trial % 2 ? BoundaryMode::open : BoundaryMode::closed;
        if (mode == BoundaryMode::open && t.boundary[t.root]) continue;
        RedResult res = red_coloring(t, k, mode);
        CHECK(res.coloring.red == async_red(t, k, mode, rng));
        for (VertexId v = 0; v < t.graph.num_vertices(); ++v)
            CHECK(res.coloring.red[v] == (res.coloring.round_painted[v] >= 0));
    }
}

TEST_CASE("red coloring is inconclusive only on a depth-zero truncation") {
    RootedTree t = RootedTree::from_parents({kNoVertex}, 0);
    CHECK(red_coloring(t, 2, BoundaryMode::open).outcome ==
          RedResult::Outcome::inconclusive);
    CHECK(red_coloring(t, 2, BoundaryMode::closed).outcome ==
          RedResult::Outcome::finite_fort);
}

TEST_CASE("blue coloring certifies small level sets") {
    // chain below the root of a 3-ary tree: x keeps one child line
    RootedTree path = gen_path(4);
    FortCertificate single = blue_fort(path, 4, 1, 2);
    CHECK(single.vertices == std::vector<VertexId>{4});
    CHECK(single.k == 1);
    CHECK(is_fort(path.graph, single.vertices, 1));

    FortCertificate triple = blue_fort(path, 2, 2, 2);
    CHECK(triple.vertices == std::vector<VertexId>{2, 3, 4});
    CHECK(is_fort(path.graph, triple.vertices, 1));

    // T_3 truncation, k=4: |L_2(x)| = 9 < 3 * 4
    RootedTree t3 = gen_regular_tree(3, 4);
    VertexId x = t3.children_of(t3.root)[0];
    FortCertificate big = blue_fort(t3, x, 2, 4);
    CHECK(big.vertices.size() == 13);
    CHECK(is_fort(t3.graph, big.vertices, 3));
    CHECK(big.host_hash == t3.graph.structure_hash());
    for (VertexId v : big.vertices) CHECK(t3.depth[v] <= t3.depth[x] + 2);

    // bound failures
    CHECK_THROWS_AS(blue_fort(t3, x, 2, 3), std::invalid_argument);  // 9 >= 2*3
    CHECK_THROWS_AS(blue_fort(t3, t3.root, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(blue_fort(t3, x, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(blue_fort(t3, x, 1, 1), std::invalid_argument);

    // root variant takes the weaker k^R bound: |L_1(o)| = 3 < 4
    FortCertificate root_cert = blue_fort(t3, t3.root, 1, 4);
    CHECK(is_fort(t3.graph, root_cert.vertices, 3));
}

TEST_CASE("blue certificate excludes blue vertices and deep levels") {
    // chain 0 - 1 - 2 - 3 with two extra children under 3
    RootedTree t = RootedTree::from_parents({kNoVertex, 0, 1, 2, 3, 3});
    // from x = 1 with k=2, R=2: |L_2(1)| = 1 < 2; vertex 3 is blue (2 children)
    FortCertificate cert = blue_fort(t, 1, 2, 2);
    CHECK(cert.vertices == std::vector<VertexId>{1, 2});
    CHECK(is_fort(t.graph, cert.vertices, 1));
}

TEST_CASE("minimal fort search matches subset brute force") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 150; ++trial) {
        VertexId n = 2 + rng() % 9;
        Graph g = random_graph(rng, n, 0.35);
        std::uint32_t k = rng() % 3;
        std::size_t cap = 1 + rng() % n;
        auto got = find_min_fort(g, k, cap);
        auto want = brute_min_fort(g, k, cap);
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
            CHECK(got->vertices == *want);
            CHECK(got->k == k);
            CHECK(is_fort(g, got->vertices, k));
        }
    }
}

TEST_CASE("minimal fort search on the named trees") {
    // 3-regular tree interior has no small 1-fort
    RootedTree t3 = gen_regular_tree(3, 5, RootedArity::d_plus_1);
    std::vector<VertexId> interior;
    for (VertexId v = 0; v < t3.graph.num_vertices(); ++v)
        if (!t3.boundary[v]) interior.push_back(v);
    CHECK(!find_min_fort(t3.graph, 1, 8, interior).has_value());

    // subdivision introduces small 1-forts; the true minimum keeps the
    // original vertex and all but one of its subdivision neighbors
    SubdividedTree s = gen_subdivided_tree(3, 3);
    std::vector<VertexId> s_interior;
    for (VertexId v = 0; v < s.tree.graph.num_vertices(); ++v)
        if (!s.tree.boundary[v]) s_interior.push_back(v);
    auto cert = find_min_fort(s.tree.graph, 1, 5, s_interior);
    REQUIRE(cert.has_value());
    CHECK(cert->vertices.size() == 4);
    CHECK(is_fort(s.tree.graph, cert->vertices, 1));

    // k at least the max degree: single vertex, smallest id wins
    auto tiny = find_min_fort(t3.graph, 4, 3);
    REQUIRE(tiny.has_value());
    CHECK(tiny->vertices == std::vector<VertexId>{0});
}

TEST_CASE("greedy trees carry no interior 1-fort up to their parameter") {
    for (std::uint32_t N : {2u, 4u, 8u}) {
        RootedTree t = gen_greedy_fortfree_tree(N, 12);
        std::vector<VertexId> interior;
        for (VertexId v = 0; v < t.graph.num_vertices(); ++v)
            if (!t.boundary[v]) interior.push_back(v);
        CHECK(!find_min_fort(t.graph, 1, N, interior).has_value());
    }
}

TEST_CASE("search budget is enforced") {
    RootedTree t = gen_regular_tree(3, 6);
    CHECK_THROWS_AS(find_min_fort(t.graph, 1, 12, std::nullopt, 1000),
                    SearchBudgetExceeded);
}

TEST_CASE("connected set counts against brute force") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        VertexId n = 2 + rng() % 8;
        Graph g = random_graph(rng, n, 0.4);
        VertexId o = rng() % n;
        auto counts = connected_set_counts(g, o, n);
        std::vector<std::uint64_t> want(n + 1, 0);
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            if (!(mask >> o & 1)) continue;
            std::vector<VertexId> f;
            for (VertexId v = 0; v < n; ++v)
                if (mask >> v & 1) f.push_back(v);
            // reuse the fort predicate with unbounded outdegree for connectivity
            if (is_fort(g, f, n)) ++want[f.size()];
        }
        CHECK(counts == want);
    }

    // square lattice animals containing a fixed cell, small sizes
    Grid grid = gen_grid(7, false);
    auto counts = connected_set_counts(grid.graph, grid.at(3, 3), 4);
    CHECK(counts[1] == 1);
    CHECK(counts[2] == 4);
    CHECK(counts[3] == 18);
    CHECK(counts[4] == 76);
}
