#include "bootperc/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bootperc {

SiteConfig SiteConfig::from_vertices(VertexId n, const std::vector<VertexId>& vs) {
    SiteConfig c(n);
    for (VertexId v : vs) {
        if (v >= n) throw std::invalid_argument("vertex out of range");
        c.set(v);
    }
    return c;
}

SiteConfig SiteConfig::full(VertexId n) {
    SiteConfig c(n);
    for (VertexId v = 0; v < n; ++v) c.set(v);
    return c;
}

VertexId SiteConfig::count() const {
    std::uint64_t total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return static_cast<VertexId>(total);
}

std::vector<VertexId> SiteConfig::occupied_list() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < n_; ++v)
        if (test(v)) out.push_back(v);
    return out;
}

bool SiteConfig::is_subset_of(const SiteConfig& other) const {
    if (n_ != other.n_) return false;
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

std::string SiteConfig::to_hex() const {
    static const char digits[] = "0123456789abcdef";
    std::string out((n_ + 3) / 4, '0');
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = digits[(words_[i >> 4] >> ((i & 15) * 4)) & 0xf];
    return out;
}

SiteConfig SiteConfig::from_hex(const std::string& hex, VertexId n) {
    if (hex.size() != (n + 3u) / 4) throw std::invalid_argument("hex length mismatch");
    SiteConfig c(n);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        char ch = hex[i];
        std::uint64_t nib;
        if (ch >= '0' && ch <= '9') nib = ch - '0';
        else if (ch >= 'a' && ch <= 'f') nib = ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F') nib = ch - 'A' + 10;
        else throw std::invalid_argument("bad hex digit");
        c.words_[i >> 4] |= nib << ((i & 15) * 4);
    }
    for (VertexId v = (n / 4) * 4; v < (n + 3u) / 4 * 4; ++v)
        if (v >= n && ((c.words_[v >> 6] >> (v & 63)) & 1))
            throw std::invalid_argument("occupied bit beyond n");
    return c;
}

namespace {

void check_inputs(const Graph& g, const SiteConfig& c, std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (c.n() != g.num_vertices()) throw std::invalid_argument("config size mismatch");
}

}  // namespace

SiteConfig step(const Graph& g, const SiteConfig& c, std::uint32_t k) {
    check_inputs(g, c, k);
    SiteConfig out = c;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (c.test(v)) continue;
        std::uint32_t occ = 0;
        for (VertexId w : g.neighbors(v)) occ += c.test(w);
        if (occ >= k) out.set(v);
    }
    return out;
}

RunReport run(const Graph& g, const SiteConfig& c0, std::uint32_t k) {
    check_inputs(g, c0, k);
    RunReport rep;
    rep.final = c0;
    std::vector<std::uint32_t> occ_nb(g.num_vertices(), 0);
    std::vector<VertexId> frontier = c0.occupied_list();
    for (VertexId v : frontier)
        for (VertexId w : g.neighbors(v)) ++occ_nb[w];

    std::vector<std::uint8_t> queued(g.num_vertices(), 0);
    while (true) {
        std::vector<VertexId> next;
        for (VertexId v : frontier)
            for (VertexId w : g.neighbors(v))
                if (!rep.final.test(w) && !queued[w] && occ_nb[w] >= k) {
                    queued[w] = 1;
                    next.push_back(w);
                }
        rep.newly_occupied_per_round.push_back(static_cast<std::uint32_t>(next.size()));
        if (next.empty()) break;
        for (VertexId w : next) {
            rep.final.set(w);
            for (VertexId u : g.neighbors(w)) ++occ_nb[u];
        }
        frontier = std::move(next);
    }
    rep.rounds = static_cast<std::uint32_t>(rep.newly_occupied_per_round.size());
    return rep;
}

bool internally_spanned(const Graph& g, const std::vector<VertexId>& s,
                        const SiteConfig& c0, std::uint32_t k) {
    check_inputs(g, c0, k);
    std::vector<std::uint8_t> in_s(g.num_vertices(), 0);
    for (VertexId v : s) {
        if (v >= g.num_vertices()) throw std::invalid_argument("set vertex out of range");
        in_s[v] = 1;
    }
    std::size_t size = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) size += in_s[v];

    // run() on the induced subgraph, inlined with a membership filter
    SiteConfig occ(g.num_vertices());
    std::vector<VertexId> frontier;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (in_s[v] && c0.test(v)) {
            occ.set(v);
            frontier.push_back(v);
        }
    std::size_t occupied = frontier.size();
    std::vector<std::uint32_t> occ_nb(g.num_vertices(), 0);
    for (VertexId v : frontier)
        for (VertexId w : g.neighbors(v))
            if (in_s[w]) ++occ_nb[w];
    std::vector<std::uint8_t> queued(g.num_vertices(), 0);
    while (!frontier.empty()) {
        std::vector<VertexId> next;
        for (VertexId v : frontier)
            for (VertexId w : g.neighbors(v))
                if (in_s[w] && !occ.test(w) && !queued[w] && occ_nb[w] >= k) {
                    queued[w] = 1;
                    next.push_back(w);
                }
        for (VertexId w : next) {
            occ.set(w);
            ++occupied;
            for (VertexId u : g.neighbors(w))
                if (in_s[u]) ++occ_nb[u];
        }
        frontier = std::move(next);
    }
    return occupied == size;
}

namespace {

// Greedy minimization: delete vertices in descending id order while the
// restricted process still occupies every target.
std::vector<VertexId> minimal_spanning_set(const Graph& g, const SiteConfig& c0,
                                           std::uint32_t k,
                                           const std::vector<VertexId>& targets) {
    std::vector<std::uint8_t> keep(g.num_vertices(), 1);
    std::vector<std::uint8_t> pinned(g.num_vertices(), 0);
    for (VertexId t : targets) pinned[t] = 1;

    auto spans_targets = [&]() {
        std::vector<VertexId> s;
        for (VertexId v = 0; v < g.num_vertices(); ++v)
            if (keep[v]) s.push_back(v);
        // full occupation of s is not required, only of the targets
        SiteConfig occ(g.num_vertices());
        std::vector<VertexId> frontier;
        for (VertexId v : s)
            if (c0.test(v)) {
                occ.set(v);
                frontier.push_back(v);
            }
        std::vector<std::uint32_t> occ_nb(g.num_vertices(), 0);
        for (VertexId v : frontier)
            for (VertexId w : g.neighbors(v))
                if (keep[w]) ++occ_nb[w];
        std::vector<std::uint8_t> queued(g.num_vertices(), 0);
        while (!frontier.empty()) {
            std::vector<VertexId> next;
            for (VertexId v : frontier)
                for (VertexId w : g.neighbors(v))
                    if (keep[w] && !occ.test(w) && !queued[w] && occ_nb[w] >= k) {
                        queued[w] = 1;
                        next.push_back(w);
                    }
            for (VertexId w : next) {
                occ.set(w);
                for (VertexId u : g.neighbors(w))
                    if (keep[u]) ++occ_nb[u];
            }
            frontier = std::move(next);
        }
        for (VertexId t : targets)
            if (!occ.test(t)) return false;
        return true;
    };

    for (VertexId v = g.num_vertices(); v-- > 0;) {
        if (pinned[v]) continue;
        keep[v] = 0;
        if (!spans_targets()) keep[v] = 1;
    }
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (keep[v]) out.push_back(v);
    return out;
}

}  // namespace

std::vector<std::vector<VertexId>> spanned_sequence(const Graph& g, VertexId o,
                                                    const SiteConfig& c0,
                                                    std::uint32_t k,
                                                    std::size_t max_size) {
    check_inputs(g, c0, k);
    if (o >= g.num_vertices()) throw std::invalid_argument("origin out of range");
    RunReport full = run(g, c0, k);
    if (!full.final.test(o)) throw std::runtime_error("origin never occupied");

    std::vector<std::vector<VertexId>> chain;
    std::vector<VertexId> targets{o};
    while (true) {
        std::vector<VertexId> v_i = minimal_spanning_set(g, c0, k, targets);
        chain.push_back(v_i);
        if (v_i.size() > max_size || v_i.size() == g.num_vertices()) break;

        // smallest eventually-occupied neighbor outside the set
        std::vector<std::uint8_t> inside(g.num_vertices(), 0);
        for (VertexId v : v_i) inside[v] = 1;
        VertexId pick = kNoVertex;
        for (VertexId v : v_i)
            for (VertexId w : g.neighbors(v))
                if (!inside[w] && full.final.test(w) && w < pick) pick = w;
        if (pick == kNoVertex) break;
        targets = v_i;
        targets.push_back(pick);
    }
    return chain;
}

}  // namespace bootperc
