#include "bootperc/generators.hpp"

#include <deque>
#include <stdexcept>

namespace bootperc {

namespace {

// Shared BFS builder: next_children(v, depth_v) returns how many children v
// gets; vertices at the truncation depth are never asked.
template <typename F>
std::vector<VertexId> grow_parents(std::uint32_t depth, F&& next_children) {
    std::vector<VertexId> parents{kNoVertex};
    std::vector<std::uint32_t> depths{0};
    for (std::size_t v = 0; v < parents.size(); ++v) {
        if (depths[v] == depth) continue;
        std::uint32_t c = next_children(static_cast<VertexId>(v), depths[v]);
        for (std::uint32_t i = 0; i < c; ++i) {
            parents.push_back(static_cast<VertexId>(v));
            depths.push_back(depths[v] + 1);
        }
    }
    return parents;
}

}  // namespace

RootedTree gen_regular_tree(std::uint32_t d, std::uint32_t depth, RootedArity arity) {
    if (d < 2) throw std::invalid_argument("gen_regular_tree: d must be >= 2");
    auto parents = grow_parents(depth, [&](VertexId v, std::uint32_t) {
        return (v == 0 && arity == RootedArity::d_plus_1) ? d + 1 : d;
    });
    return RootedTree::from_parents(parents, depth);
}

RootedTree gen_path(std::uint32_t depth) {
    auto parents = grow_parents(depth, [](VertexId, std::uint32_t) { return 1u; });
    return RootedTree::from_parents(parents, depth);
}

SubdividedTree gen_subdivided_tree(std::uint32_t d, std::uint32_t depth) {
    if (d < 2) throw std::invalid_argument("gen_subdivided_tree: d must be >= 2");
    // Original vertices sit at even depths, subdivision vertices at odd ones.
    std::vector<std::uint8_t> original;
    auto parents = grow_parents(2 * depth, [&](VertexId v, std::uint32_t dv) {
        bool orig = (dv % 2 == 0);
        original.resize(std::max<std::size_t>(original.size(), v + 1));
        original[v] = orig ? 1 : 0;
        if (!orig) return 1u;                  // subdivision vertex continues the edge
        return v == 0 ? d + 1 : d;             // original vertices branch
    });
    original.resize(parents.size(), 1);  // deepest originals were never asked
    SubdividedTree out{RootedTree::from_parents(parents, 2 * depth), std::move(original)};
    return out;
}

RootedTree gen_gw_tree(const OffspringDistribution& dist, std::uint32_t depth,
                       std::uint64_t seed) {
    dist.validate();
    std::mt19937_64 rng(seed);
    auto parents = grow_parents(
        depth, [&](VertexId, std::uint32_t) { return dist.sample(rng); });
    return RootedTree::from_parents(parents, depth);
}

RootedTree gen_greedy_fortfree_tree(std::uint32_t fort_free_n, std::uint32_t depth) {
    if (fort_free_n < 1)
        throw std::invalid_argument("gen_greedy_fortfree_tree: fort_free_n must be >= 1");
    const std::uint32_t N = fort_free_n;
    std::vector<VertexId> parents{kNoVertex};
    std::vector<std::uint32_t> depths{0};
    std::vector<std::vector<VertexId>> kids(1);
    // Capped distance from each built vertex to the nearest degree-2 vertex;
    // children inherit parent + 1 at creation, and each new degree-2 vertex
    // relaxes its radius-N ball over the vertices built so far.
    std::vector<std::uint32_t> dist2{0};  // the root is degree 2 by fiat

    auto add_child = [&](VertexId p) {
        auto v = static_cast<VertexId>(parents.size());
        parents.push_back(p);
        depths.push_back(depths[p] + 1);
        kids.emplace_back();
        kids[p].push_back(v);
        dist2.push_back(std::min(dist2[p] + 1, N));
        return v;
    };
    auto relax_from = [&](VertexId s) {
        dist2[s] = 0;
        std::deque<VertexId> q{s};
        while (!q.empty()) {
            VertexId u = q.front();
            q.pop_front();
            if (dist2[u] + 1 >= N) continue;
            auto visit = [&](VertexId w) {
                if (dist2[w] > dist2[u] + 1) {
                    dist2[w] = dist2[u] + 1;
                    q.push_back(w);
                }
            };
            if (parents[u] != kNoVertex) visit(parents[u]);
            for (VertexId w : kids[u]) visit(w);
        }
    };

    for (std::size_t v = 0; v < parents.size(); ++v) {
        if (depths[v] == depth) continue;
        if (v == 0) {
            add_child(0);
            add_child(0);
            continue;
        }
        if (dist2[v] >= N) {
            add_child(static_cast<VertexId>(v));
            relax_from(static_cast<VertexId>(v));
        } else {
            add_child(static_cast<VertexId>(v));
            add_child(static_cast<VertexId>(v));
        }
    }
    return RootedTree::from_parents(parents, depth);
}

Grid gen_grid(std::uint32_t side, bool filled_boundary) {
    if (side < 1) throw std::invalid_argument("gen_grid: side must be >= 1");
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(static_cast<std::size_t>(2) * side * (side - 1));
    auto id = [side](std::uint32_t r, std::uint32_t c) { return r * side + c; };
    for (std::uint32_t r = 0; r < side; ++r)
        for (std::uint32_t c = 0; c < side; ++c) {
            if (c + 1 < side) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < side) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    Grid g;
    g.side = side;
    g.graph = Graph::from_edges(side * side, edges);
    if (filled_boundary) {
        for (std::uint32_t r = 0; r < side; ++r)
            for (std::uint32_t c = 0; c < side; ++c)
                if (r == 0 || c == 0 || r + 1 == side || c + 1 == side)
                    g.boundary.push_back(id(r, c));
    }
    return g;
}

BuiltStructure build_structure(const GeneratorSpec& spec, std::uint32_t depth,
                               std::uint64_t seed) {
    BuiltStructure out;
    auto from_tree = [&](RootedTree t) {
        out.graph = t.graph;
        out.boundary.assign(t.boundary.begin(), t.boundary.end());
        out.tree = std::move(t);
    };
    switch (spec.kind) {
        case GeneratorSpec::Kind::regular_dary:
            from_tree(gen_regular_tree(spec.d, depth, RootedArity::d_ary));
            break;
        case GeneratorSpec::Kind::regular_dplus1:
            from_tree(gen_regular_tree(spec.d, depth, RootedArity::d_plus_1));
            break;
        case GeneratorSpec::Kind::subdivided:
            from_tree(gen_subdivided_tree(spec.d, depth).tree);
            break;
        case GeneratorSpec::Kind::gw:
            from_tree(gen_gw_tree(spec.dist, depth, seed));
            break;
        case GeneratorSpec::Kind::greedy:
            from_tree(gen_greedy_fortfree_tree(spec.fort_free_n, depth));
            break;
        case GeneratorSpec::Kind::path:
            from_tree(gen_path(depth));
            break;
        case GeneratorSpec::Kind::grid: {
            Grid g = gen_grid(depth, true);
            out.boundary.assign(g.graph.num_vertices(), 0);
            for (VertexId v : g.boundary) out.boundary[v] = 1;
            out.graph = std::move(g.graph);
            break;
        }
    }
    return out;
}

}  // namespace bootperc
