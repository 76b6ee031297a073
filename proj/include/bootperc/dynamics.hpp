// k-neighbor spreading rule and internally-spanned machinery.
//
// The rule is monotone, so the synchronous fixed point equals the fixed point
// of any fair update order; run() exploits that with a frontier queue.
// Truncation boundaries are the caller's business: pre-occupy boundary
// vertices in c0 to model occupation beyond the horizon, or leave them vacant.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bootperc/graph.hpp"

namespace bootperc {

// Bit-set over vertex ids. Dynamics only ever add vertices.
class SiteConfig {
  public:
    SiteConfig() = default;
    explicit SiteConfig(VertexId n) : n_(n), words_((n + 63) / 64, 0) {}
    static SiteConfig from_vertices(VertexId n, const std::vector<VertexId>& vs);
    static SiteConfig full(VertexId n);

    bool test(VertexId v) const { return (words_[v >> 6] >> (v & 63)) & 1; }
    void set(VertexId v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void reset(VertexId v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    VertexId n() const { return n_; }
    VertexId count() const;
    std::vector<VertexId> occupied_list() const;
    bool is_subset_of(const SiteConfig& other) const;
    bool operator==(const SiteConfig& other) const = default;

    // Hex digit i encodes vertices 4i..4i+3, vertex 4i in the low bit.
    std::string to_hex() const;
    static SiteConfig from_hex(const std::string& hex, VertexId n);

  private:
    VertexId n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct RunReport {
    SiteConfig final;
    std::uint32_t rounds = 0;  // equals newly_occupied_per_round.size()
    std::vector<std::uint32_t> newly_occupied_per_round;

    bool complete() const { return final.count() == final.n(); }
};

// One synchronous update: every vacant vertex with >= k occupied neighbors
// becomes occupied. k >= 1.
SiteConfig step(const Graph& g, const SiteConfig& c, std::uint32_t k);

// Iterate to the fixed configuration. The per-round list always ends with the
// zero round that certifies the fixed point, so rounds <= max(n, 1).
RunReport run(const Graph& g, const SiteConfig& c0, std::uint32_t k);

// True iff the dynamics restricted to g[s], started from c0 on s, occupy all
// of s.
bool internally_spanned(const Graph& g, const std::vector<VertexId>& s,
                        const SiteConfig& c0, std::uint32_t k);

// Strictly increasing connected internally spanned sets V_1 c V_2 c ... with
// o in V_1. Each set is minimal (greedy deletion, descending vertex id) for
// occupying the previous set plus its smallest eventually-occupied outside
// neighbor. Stops once a set exceeds max_size, no neighbor qualifies, or the
// graph is exhausted. Throws when o never becomes occupied.
std::vector<std::vector<VertexId>> spanned_sequence(const Graph& g, VertexId o,
                                                    const SiteConfig& c0,
                                                    std::uint32_t k,
                                                    std::size_t max_size);

}  // namespace bootperc
