// Deterministic and seeded structure generators.
//
// All tree generators number vertices in breadth-first order and return
// truncations: vertices at the requested depth carry the boundary flag.
// Galton-Watson sampling consumes one uniform draw per vertex in BFS order
// from std::mt19937_64, which pins the sampled shape for a given seed.
#pragma once

#include <cstdint>

#include "bootperc/graph.hpp"

namespace bootperc {

enum class RootedArity {
    d_ary,     // root has d children
    d_plus_1,  // root has d + 1 children, matching a (d+1)-regular tree
};

// Regular tree truncation; every internal vertex has d children. d >= 2.
RootedTree gen_regular_tree(std::uint32_t d, std::uint32_t depth,
                            RootedArity arity = RootedArity::d_ary);

// Path rooted at one end: every internal vertex has exactly one child.
RootedTree gen_path(std::uint32_t depth);

struct SubdividedTree {
    RootedTree tree;
    std::vector<std::uint8_t> is_original;  // 0 marks an edge-subdivision vertex
};

// (d+1)-regular tree of the given original depth with one extra vertex on
// every edge. Original interior vertices keep degree d + 1, subdivision
// vertices have degree 2; tree depth doubles.
SubdividedTree gen_subdivided_tree(std::uint32_t d, std::uint32_t depth);

// Galton-Watson truncation: each vertex above the truncation depth draws its
// child count independently from dist.
RootedTree gen_gw_tree(const OffspringDistribution& dist, std::uint32_t depth,
                       std::uint64_t seed);

// Maximum degree 3 tree with no 1-fort of size <= fort_free_n among interior
// vertices. The root keeps two children; every other internal vertex gets one
// child (becoming a degree-2 vertex) whenever doing so keeps all degree-2
// vertices, including the root, at pairwise distance >= fort_free_n, else two.
// Slots are scanned breadth-first, left to right.
RootedTree gen_greedy_fortfree_tree(std::uint32_t fort_free_n, std::uint32_t depth);

struct Grid {
    Graph graph;
    std::uint32_t side = 0;
    std::vector<VertexId> boundary;  // populated only when filled_boundary is set

    VertexId at(std::uint32_t row, std::uint32_t col) const { return row * side + col; }
};

// side x side square lattice with nearest-neighbor edges. With
// filled_boundary the perimeter cells are listed for the caller to pre-occupy.
Grid gen_grid(std::uint32_t side, bool filled_boundary);

// Named generator parameters, shared by the Monte Carlo entry points and the
// command line tool.
struct GeneratorSpec {
    enum class Kind { regular_dary, regular_dplus1, subdivided, gw, greedy, path, grid };
    Kind kind = Kind::regular_dary;
    std::uint32_t d = 3;            // regular and subdivided trees
    std::uint32_t fort_free_n = 4;  // greedy trees
    OffspringDistribution dist;     // gw trees
};

struct BuiltStructure {
    Graph graph;
    std::vector<std::uint8_t> boundary;   // truncation/perimeter flags
    std::optional<RootedTree> tree;       // absent for grids
};

// depth is the truncation depth for trees and the side length for grids.
BuiltStructure build_structure(const GeneratorSpec& spec, std::uint32_t depth,
                               std::uint64_t seed);

}  // namespace bootperc
