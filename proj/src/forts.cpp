#include "bootperc/forts.hpp"

#include <algorithm>
#include <cmath>

namespace bootperc {

bool is_fort(const Graph& g, const std::vector<VertexId>& f, std::uint32_t k) {
    if (f.empty()) throw std::invalid_argument("empty fort candidate");
    std::vector<std::uint8_t> in(g.num_vertices(), 0);
    for (VertexId v : f) {
        if (v >= g.num_vertices()) throw std::invalid_argument("fort vertex out of range");
        in[v] = 1;
    }
    // outdegree bound
    for (VertexId v : f) {
        std::uint32_t out = 0;
        for (VertexId w : g.neighbors(v)) out += !in[w];
        if (out > k) return false;
    }
    // connectivity
    std::vector<VertexId> stack{f[0]};
    std::vector<std::uint8_t> seen(g.num_vertices(), 0);
    seen[f[0]] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        ++reached;
        for (VertexId w : g.neighbors(v))
            if (in[w] && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    std::size_t distinct = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) distinct += in[v];
    return reached == distinct;
}

RedResult red_coloring(const RootedTree& t, std::uint32_t k, BoundaryMode mode) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const VertexId n = t.graph.num_vertices();
    RedResult res;
    res.coloring.red.assign(n, 0);
    res.coloring.round_painted.assign(n, -1);

    if (mode == BoundaryMode::open && t.boundary[t.root]) {
        res.outcome = RedResult::Outcome::inconclusive;
        return res;
    }

    std::vector<std::uint32_t> uncolored_children(n, 0);
    for (VertexId v = 0; v < n; ++v) uncolored_children[v] = t.child_count(v);

    auto paintable = [&](VertexId v) {
        if (res.coloring.red[v]) return false;
        if (mode == BoundaryMode::open && t.boundary[v]) return false;
        return uncolored_children[v] <= k - 1;
    };

    for (std::int32_t round = 1;; ++round) {
        std::vector<VertexId> batch;
        for (VertexId v = 0; v < n; ++v)
            if (paintable(v)) batch.push_back(v);
        if (batch.empty()) break;
        for (VertexId v : batch) {
            res.coloring.red[v] = 1;
            res.coloring.round_painted[v] = round;
            if (v != t.root) --uncolored_children[t.parent[v]];
        }
    }

    if (res.coloring.red[t.root]) {
        // Red witness: each member keeps all but k-1 of its children, chosen
        // among the earliest-painted ones. Painting rounds strictly decrease
        // downward, so the set is finite and, in open mode, interior.
        res.outcome = RedResult::Outcome::finite_fort;
        std::vector<VertexId> stack{t.root};
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            res.fort.push_back(v);
            std::uint32_t c = t.child_count(v);
            if (c <= k - 1) continue;
            std::vector<VertexId> reds;
            t.for_each_child(v, [&](VertexId w) {
                if (res.coloring.red[w]) reds.push_back(w);
            });
            std::sort(reds.begin(), reds.end(), [&](VertexId a, VertexId b) {
                auto ra = res.coloring.round_painted[a], rb = res.coloring.round_painted[b];
                return ra != rb ? ra < rb : a < b;
            });
            reds.resize(c - (k - 1));
            stack.insert(stack.end(), reds.begin(), reds.end());
        }
        std::sort(res.fort.begin(), res.fort.end());
    } else {
        // k-ary subtree: every interior non-red vertex keeps its k smallest
        // non-red children; boundary leaves terminate branches.
        res.outcome = RedResult::Outcome::kary_subtree;
        std::vector<VertexId> stack{t.root};
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            res.subtree.push_back(v);
            if (t.boundary[v]) continue;
            std::vector<VertexId> pick;
            t.for_each_child(v, [&](VertexId w) {
                if (!res.coloring.red[w]) pick.push_back(w);
            });
            std::sort(pick.begin(), pick.end());
            pick.resize(k);
            stack.insert(stack.end(), pick.begin(), pick.end());
        }
        std::sort(res.subtree.begin(), res.subtree.end());
    }
    return res;
}

FortCertificate blue_fort(const RootedTree& t, VertexId x, std::uint32_t R,
                          std::uint32_t k) {
    if (k < 2) throw std::invalid_argument("blue coloring needs k >= 2");
    if (R < 1) throw std::invalid_argument("R must be >= 1");
    if (x >= t.graph.num_vertices()) throw std::invalid_argument("vertex out of range");

    double bound = (x == t.root) ? std::pow(double(k), double(R))
                                 : (k - 1) * std::pow(double(k), double(R) - 1);
    std::vector<VertexId> level_r = level_set(t, x, R);
    if (!(double(level_r.size()) < bound))
        throw std::invalid_argument("level set too large for the blue coloring");

    // levels R, R-1, ..., 1 relative to x
    std::vector<std::uint8_t> blue(t.graph.num_vertices(), 0);
    std::vector<std::uint32_t> blue_children(t.graph.num_vertices(), 0);
    for (VertexId v : level_r)
        if (t.child_count(v) >= k) blue[v] = 1;
    for (std::uint32_t r = R; r-- > 1;) {
        for (VertexId v : level_set(t, x, r + 1))
            if (blue[v]) ++blue_children[t.parent[v]];
        for (VertexId v : level_set(t, x, r))
            if (blue_children[v] >= k) blue[v] = 1;
    }

    // non-blue component of x, downward through levels 0..R
    FortCertificate cert;
    cert.k = k - 1;
    cert.host_hash = t.graph.structure_hash();
    std::vector<std::pair<VertexId, std::uint32_t>> stack{{x, 0}};
    while (!stack.empty()) {
        auto [v, r] = stack.back();
        stack.pop_back();
        cert.vertices.push_back(v);
        if (r == R) continue;
        t.for_each_child(v, [&](VertexId w) {
            if (!blue[w]) stack.emplace_back(w, r + 1);
        });
    }
    std::sort(cert.vertices.begin(), cert.vertices.end());
    return cert;
}

namespace {

// Canonical-growth enumeration of connected sets containing `anchor`, never
// entering `forbidden`. Each set is reported exactly once. In fort mode the
// search prunes branches that cannot reach a fort within the size cap.
struct Enumerator {
    const Graph& g;
    std::uint64_t budget;
    std::uint64_t steps = 0;

    // status: 0 fresh, 1 candidate, 2 in set, 3 unavailable
    std::vector<std::uint8_t> status;
    std::vector<VertexId> cands;
    std::vector<VertexId> set;

    std::uint32_t fort_k = 0;
    bool fort_mode = false;
    std::size_t size_cap = 0;
    std::optional<std::vector<VertexId>> best;
    std::vector<std::uint64_t> counts;  // by size, counting mode

    Enumerator(const Graph& graph, std::uint64_t b) : g(graph), budget(b) {
        status.assign(g.num_vertices(), 0);
    }

    void run(VertexId anchor) {
        status[anchor] = 2;
        set.push_back(anchor);
        for (VertexId w : g.neighbors(anchor))
            if (status[w] == 0) {
                status[w] = 1;
                cands.push_back(w);
            }
        visit();
        if (set.size() < size_cap && !pruned()) extend(0);
        for (VertexId w : cands) status[w] = 0;
        cands.clear();
        set.clear();
        status[anchor] = 0;
    }

    void extend(std::size_t pos) {
        std::vector<VertexId> excluded;
        for (std::size_t i = pos; i < cands.size(); ++i) {
            VertexId c = cands[i];
            if (++steps > budget) throw SearchBudgetExceeded("search budget exceeded");
            status[c] = 2;
            set.push_back(c);
            std::size_t old = cands.size();
            for (VertexId w : g.neighbors(c))
                if (status[w] == 0) {
                    status[w] = 1;
                    cands.push_back(w);
                }
            visit();
            if (set.size() < size_cap && !pruned()) extend(i + 1);
            for (std::size_t j = old; j < cands.size(); ++j) status[cands[j]] = 0;
            cands.resize(old);
            set.pop_back();
            status[c] = 3;  // excluded for the rest of this branch
            excluded.push_back(c);
        }
        for (VertexId c : excluded) status[c] = 1;
    }

    void visit() {
        if (!fort_mode) {
            ++counts[set.size()];
            return;
        }
        if (best && best->size() < set.size()) return;
        for (VertexId v : set) {
            std::uint32_t out = 0;
            for (VertexId w : g.neighbors(v)) out += status[w] != 2;
            if (out > fort_k) return;
        }
        std::vector<VertexId> sorted = set;
        std::sort(sorted.begin(), sorted.end());
        if (!best || sorted.size() < best->size() ||
            (sorted.size() == best->size() && sorted < *best))
            best = std::move(sorted);
    }

    bool pruned() const {
        if (!fort_mode) return false;
        std::size_t cap = size_cap;
        if (best) cap = std::min(cap, best->size());
        std::uint32_t worst_deficit = 0;
        for (VertexId v : set) {
            std::uint32_t outside = 0, gone = 0;
            for (VertexId w : g.neighbors(v)) {
                outside += status[w] != 2;
                gone += status[w] == 3;
            }
            if (gone > fort_k) return true;  // v can never satisfy the bound
            if (outside > fort_k) worst_deficit = std::max(worst_deficit, outside - fort_k);
        }
        return set.size() + worst_deficit > cap;
    }
};

}  // namespace

std::optional<FortCertificate> find_min_fort(
    const Graph& g, std::uint32_t k, std::size_t max_size,
    const std::optional<std::vector<VertexId>>& restrict_to, std::uint64_t budget) {
    if (max_size < 1) throw std::invalid_argument("max_size must be >= 1");
    Enumerator e(g, budget);
    e.fort_mode = true;
    e.fort_k = k;
    e.size_cap = max_size;
    std::vector<std::uint8_t> allowed(g.num_vertices(), restrict_to ? 0 : 1);
    if (restrict_to)
        for (VertexId v : *restrict_to) {
            if (v >= g.num_vertices())
                throw std::invalid_argument("restriction vertex out of range");
            allowed[v] = 1;
        }
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (!allowed[v]) e.status[v] = 3;

    for (VertexId anchor = 0; anchor < g.num_vertices(); ++anchor) {
        if (!allowed[anchor]) continue;
        e.run(anchor);
        e.status[anchor] = 3;  // later anchors enumerate sets avoiding this one
    }
    if (!e.best) return std::nullopt;
    return FortCertificate{*e.best, k, g.structure_hash()};
}

std::vector<std::uint64_t> connected_set_counts(const Graph& g, VertexId o,
                                                std::size_t max_size,
                                                std::uint64_t budget) {
    if (o >= g.num_vertices()) throw std::invalid_argument("vertex out of range");
    if (max_size < 1) throw std::invalid_argument("max_size must be >= 1");
    Enumerator e(g, budget);
    e.size_cap = max_size;
    e.counts.assign(max_size + 1, 0);
    e.run(o);
    return e.counts;
}

}  // namespace bootperc
