#include "bootperc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace bootperc {

Graph Graph::from_edges(VertexId n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
    Graph g;
    g.n_ = n;
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop");
        g.offsets_[u + 1]++;
        g.offsets_[v + 1]++;
    }
    for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
    g.adjacency_.resize(2 * edges.size());
    std::vector<std::uint32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
        g.adjacency_[fill[u]++] = v;
        g.adjacency_[fill[v]++] = u;
    }
    for (VertexId v = 0; v < n; ++v) {
        auto* first = g.adjacency_.data() + g.offsets_[v];
        auto* last = g.adjacency_.data() + g.offsets_[v + 1];
        std::sort(first, last);
        if (std::adjacent_find(first, last) != last)
            throw std::invalid_argument("parallel edge");
    }
    return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::validate() const {
    if (offsets_.size() != static_cast<std::size_t>(n_) + 1)
        throw std::invalid_argument("offset table size mismatch");
    for (VertexId v = 0; v < n_; ++v) {
        auto nb = neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] >= n_) throw std::invalid_argument("neighbor out of range");
            if (nb[i] == v) throw std::invalid_argument("self-loop");
            if (i > 0 && nb[i - 1] >= nb[i]) throw std::invalid_argument("adjacency not sorted/unique");
            if (!has_edge(nb[i], v)) throw std::invalid_argument("asymmetric adjacency");
        }
    }
}

std::uint64_t Graph::structure_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(n_);
    for (auto o : offsets_) mix(o);
    for (auto a : adjacency_) mix(a);
    return h;
}

RootedTree RootedTree::from_parents(const std::vector<VertexId>& parents,
                                    std::optional<std::uint32_t> truncation) {
    const auto n = static_cast<VertexId>(parents.size());
    if (n == 0) throw std::invalid_argument("empty parent vector");
    RootedTree t;
    t.parent = parents;
    VertexId root = kNoVertex;
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(n - 1);
    for (VertexId v = 0; v < n; ++v) {
        if (parents[v] == kNoVertex) {
            if (root != kNoVertex) throw std::invalid_argument("multiple roots");
            root = v;
        } else {
            if (parents[v] >= n) throw std::invalid_argument("parent out of range");
            edges.emplace_back(parents[v], v);
        }
    }
    if (root == kNoVertex) throw std::invalid_argument("no root");
    t.root = root;
    t.graph = Graph::from_edges(n, edges);

    t.depth.assign(n, 0);
    std::vector<std::uint8_t> seen(n, 0);
    std::queue<VertexId> q;
    q.push(root);
    seen[root] = 1;
    std::uint32_t max_depth = 0;
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        max_depth = std::max(max_depth, t.depth[v]);
        for (VertexId u : t.graph.neighbors(v)) {
            if (u == parents[v]) continue;
            if (parents[u] != v) throw std::invalid_argument("parent vector is not a tree");
            if (seen[u]) throw std::invalid_argument("cycle in parent vector");
            seen[u] = 1;
            t.depth[u] = t.depth[v] + 1;
            q.push(u);
        }
    }
    for (VertexId v = 0; v < n; ++v)
        if (!seen[v]) throw std::invalid_argument("disconnected parent vector");

    t.truncation_depth = truncation.value_or(max_depth);
    t.boundary.assign(n, 0);
    for (VertexId v = 0; v < n; ++v)
        t.boundary[v] = (t.depth[v] == t.truncation_depth) ? 1 : 0;
    return t;
}

void RootedTree::validate() const {
    graph.validate();
    const VertexId n = num_vertices();
    if (parent.size() != n || depth.size() != n || boundary.size() != n)
        throw std::invalid_argument("field size mismatch");
    if (root >= n || parent[root] != kNoVertex) throw std::invalid_argument("bad root");
    if (graph.num_edges() + 1 != n) throw std::invalid_argument("edge count is not n - 1");
    for (VertexId v = 0; v < n; ++v) {
        if (v == root) {
            if (depth[v] != 0) throw std::invalid_argument("root depth nonzero");
            continue;
        }
        if (parent[v] >= n || !graph.has_edge(parent[v], v))
            throw std::invalid_argument("parent edge missing");
        if (depth[v] != depth[parent[v]] + 1) throw std::invalid_argument("depth mismatch");
        if (boundary[v] != (depth[v] == truncation_depth ? 1 : 0))
            throw std::invalid_argument("boundary flag mismatch");
    }
    if (boundary[root] != (depth[root] == truncation_depth ? 1 : 0))
        throw std::invalid_argument("boundary flag mismatch at root");
}

OffspringDistribution::OffspringDistribution(std::vector<Atom> a) : atoms(std::move(a)) {
    std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.j < y.j; });
    validate();
}

void OffspringDistribution::validate() const {
    if (atoms.empty()) throw std::invalid_argument("empty offspring distribution");
    double sum = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i].prob < 0.0 || atoms[i].prob > 1.0)
            throw std::invalid_argument("atom probability outside [0, 1]");
        if (i > 0 && atoms[i - 1].j >= atoms[i].j)
            throw std::invalid_argument("atom values not distinct");
        sum += atoms[i].prob;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("atom probabilities do not sum to 1");
}

double OffspringDistribution::mean() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.j * a.prob;
    return m;
}

std::uint32_t OffspringDistribution::min_j() const { return atoms.front().j; }
std::uint32_t OffspringDistribution::max_j() const { return atoms.back().j; }

double OffspringDistribution::prob_of(std::uint32_t j) const {
    for (const auto& a : atoms)
        if (a.j == j) return a.prob;
    return 0.0;
}

std::uint32_t OffspringDistribution::sample(std::mt19937_64& rng) const {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double acc = 0.0;
    for (const auto& a : atoms) {
        acc += a.prob;
        if (u < acc) return a.j;
    }
    return atoms.back().j;
}

std::vector<VertexId> level_set(const RootedTree& t, VertexId x, std::uint32_t r) {
    if (x >= t.num_vertices()) throw std::invalid_argument("vertex out of range");
    std::vector<VertexId> level{x};
    for (std::uint32_t step = 0; step < r; ++step) {
        std::vector<VertexId> next;
        for (VertexId v : level)
            t.for_each_child(v, [&](VertexId c) { next.push_back(c); });
        level = std::move(next);
        if (level.empty()) break;
    }
    std::sort(level.begin(), level.end());
    return level;
}

std::string to_parent_list(const RootedTree& t) {
    std::ostringstream out;
    for (VertexId v = 0; v < t.num_vertices(); ++v) {
        if (v == t.root)
            out << -1 << '\n';
        else
            out << t.parent[v] << '\n';
    }
    return out.str();
}

RootedTree from_parent_list(const std::string& text) {
    std::istringstream in(text);
    std::vector<VertexId> parents;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        long long p = std::stoll(line);
        parents.push_back(p < 0 ? kNoVertex : static_cast<VertexId>(p));
    }
    return RootedTree::from_parents(parents);
}

}  // namespace bootperc
