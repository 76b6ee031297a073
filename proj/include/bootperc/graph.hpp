// Core graph and rooted-tree types.
//
// Graph is an immutable undirected graph in CSR form: per-vertex neighbor
// lists, sorted ascending, symmetric, no self-loops, no parallel edges.
// RootedTree wraps a Graph with root, parent, depth and a per-vertex
// boundary flag marking vertices at the truncation depth (vertices whose
// children were cut off, as opposed to genuine leaves).
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace bootperc {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

struct Graph {
    static Graph from_edges(VertexId n, const std::vector<std::pair<VertexId, VertexId>>& edges);

    VertexId num_vertices() const { return n_; }
    std::size_t num_edges() const { return adjacency_.size() / 2; }

    std::span<const VertexId> neighbors(VertexId v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::uint32_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(VertexId u, VertexId v) const;

    // Throws std::invalid_argument if any structural invariant fails.
    void validate() const;

    // FNV-1a over the vertex count and adjacency structure; identifies the
    // host graph in exported certificates.
    std::uint64_t structure_hash() const;

  private:
    VertexId n_ = 0;
    std::vector<std::uint32_t> offsets_;  // size n_ + 1
    std::vector<VertexId> adjacency_;
};

struct RootedTree {
    Graph graph;
    VertexId root = 0;
    std::vector<VertexId> parent;        // kNoVertex at the root
    std::vector<std::uint32_t> depth;    // root has depth 0
    std::vector<std::uint8_t> boundary;  // 1 iff depth == truncation_depth
    std::uint32_t truncation_depth = 0;

    // Builds the tree from a parent vector (exactly one kNoVertex entry).
    // If truncation is not given, it defaults to the maximum depth, so the
    // deepest leaves are flagged as the truncation boundary.
    static RootedTree from_parents(const std::vector<VertexId>& parents,
                                   std::optional<std::uint32_t> truncation = std::nullopt);

    VertexId num_vertices() const { return graph.num_vertices(); }

    std::uint32_t child_count(VertexId v) const {
        return graph.degree(v) - (v == root ? 0u : 1u);
    }
    bool is_leaf(VertexId v) const { return child_count(v) == 0; }

    template <typename F>
    void for_each_child(VertexId v, F&& f) const {
        for (VertexId u : graph.neighbors(v))
            if (u != parent[v]) f(u);
    }
    std::vector<VertexId> children_of(VertexId v) const {
        std::vector<VertexId> out;
        out.reserve(child_count(v));
        for_each_child(v, [&](VertexId c) { out.push_back(c); });
        return out;
    }

    void validate() const;
};

// Offspring distribution with finitely many atoms (j, P(xi = j)), j distinct,
// probabilities summing to 1 within 1e-12.
struct OffspringDistribution {
    struct Atom {
        std::uint32_t j;
        double prob;
    };
    std::vector<Atom> atoms;

    OffspringDistribution() = default;
    explicit OffspringDistribution(std::vector<Atom> a);

    double mean() const;
    std::uint32_t min_j() const;
    std::uint32_t max_j() const;
    double prob_of(std::uint32_t j) const;

    std::uint32_t sample(std::mt19937_64& rng) const;

    void validate() const;
};

// Descendants of x exactly r levels below it (r = 0 gives {x}), ascending ids.
std::vector<VertexId> level_set(const RootedTree& t, VertexId x, std::uint32_t r);

// Parent-list text format: line i holds the parent of vertex i, -1 at the root.
std::string to_parent_list(const RootedTree& t);
RootedTree from_parent_list(const std::string& text);

}  // namespace bootperc
