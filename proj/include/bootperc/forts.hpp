// k-fort verification, the red and blue coloring arguments, and exhaustive
// minimal-fort search.
//
// A k-fort is a connected set whose members each have at most k neighbors
// outside the set. Complete occupation under the (k+1)-rule fails exactly
// when a vacant k-fort survives, so forts are the certificates everything
// else in the library reasons about.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bootperc/graph.hpp"

namespace bootperc {

struct FortCertificate {
    std::vector<VertexId> vertices;  // sorted
    std::uint32_t k = 0;
    std::uint64_t host_hash = 0;     // structure_hash of the graph it certifies
};

// True iff f is connected and every member has at most k neighbors outside f.
bool is_fort(const Graph& g, const std::vector<VertexId>& f, std::uint32_t k);

// Truncation boundary handling for the red coloring. Open treats boundary
// leaves as having unknown children (never painted), which is the sound
// choice on a truncated infinite tree; closed counts them as childless, for
// genuinely finite trees.
enum class BoundaryMode { open, closed };

struct RedColoring {
    std::vector<std::uint8_t> red;
    std::vector<std::int32_t> round_painted;  // -1 when never painted
};

struct RedResult {
    enum class Outcome {
        finite_fort,    // root painted red, fort holds the witness
        kary_subtree,   // root never painted, subtree holds a k-ary subtree
        inconclusive,   // root is itself a boundary leaf, nothing to decide
    };
    RedColoring coloring;
    Outcome outcome = Outcome::inconclusive;
    std::vector<VertexId> fort;     // (k-1)-fort containing the root
    std::vector<VertexId> subtree;  // k-ary down to the truncation depth
};

// Round-synchronous painting: color red every vertex with at most k-1 non-red
// children, repeat to the fixed coloring. A red root yields a finite (k-1)-
// fort witness (never touching the boundary in open mode); an unpainted root
// yields the k-ary subtree inside the non-red component.
RedResult red_coloring(const RootedTree& t, std::uint32_t k,
                       BoundaryMode mode = BoundaryMode::open);

// Bottom-up blue coloring below x: level-R vertices are blue with >= k
// children, higher levels with >= k blue children. When the level-R set of x
// is small enough (< (k-1)k^(R-1), or < k^R for the root), the non-blue
// component of x within levels 0..R is a (k-1)-fort; that certificate is
// returned. Throws when the level bound fails.
FortCertificate blue_fort(const RootedTree& t, VertexId x, std::uint32_t R,
                          std::uint32_t k);

struct SearchBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Smallest k-fort of size <= max_size, breaking ties by lexicographic vertex
// order, or nullopt. Membership can be restricted (outdegrees always count
// the whole graph). Enumerates connected sets by canonical growth; budget
// caps the number of enumeration steps.
std::optional<FortCertificate> find_min_fort(
    const Graph& g, std::uint32_t k, std::size_t max_size,
    const std::optional<std::vector<VertexId>>& restrict_to = std::nullopt,
    std::uint64_t budget = 20'000'000);

// counts[s] = number of connected vertex sets of size s containing o,
// 1 <= s <= max_size. Same enumeration core as find_min_fort, no pruning.
std::vector<std::uint64_t> connected_set_counts(const Graph& g, VertexId o,
                                                std::size_t max_size,
                                                std::uint64_t budget = 20'000'000);

}  // namespace bootperc
