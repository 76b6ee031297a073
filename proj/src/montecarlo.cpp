#include "bootperc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "bootperc/dynamics.hpp"
#include "bootperc/rng.hpp"

namespace bootperc {

namespace {

double std_err_of(double est, std::uint64_t trials) {
    return std::sqrt(est * (1.0 - est) / static_cast<double>(trials));
}

// Depth-first vacant-witness exploration with two prunes: stop trying
// children once need of them survive, and bail once the remainder cannot
// reach need. In the failing regime the second prune caps the tried children
// at d - need + 1 = k, so the explored cluster branches like k(1-p) rather
// than d(1-p).
bool witness_reaches(std::mt19937_64& rng, std::uint32_t d, std::uint32_t need,
                     double p, std::uint32_t levels) {
    if (levels == 0) return true;
    std::uint32_t good = 0;
    for (std::uint32_t i = 0; i < d; ++i) {
        if (good >= need) return true;
        if (good + (d - i) < need) return false;
        bool vacant = uniform01(rng) >= p;
        if (vacant && witness_reaches(rng, d, need, p, levels - 1)) ++good;
    }
    return good >= need;
}

std::uint32_t d_column(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorSpec::Kind::regular_dary:
        case GeneratorSpec::Kind::regular_dplus1:
        case GeneratorSpec::Kind::subdivided:
            return spec.d;
        default:
            return 0;
    }
}

VertexId observable_vertex(const GeneratorSpec& spec, const BuiltStructure& built,
                           std::uint32_t depth) {
    if (spec.kind == GeneratorSpec::Kind::grid) return (depth / 2) * depth + depth / 2;
    return built.tree ? built.tree->root : 0;
}

void check_common(std::uint32_t k, std::uint64_t trials) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (trials == 0) throw std::invalid_argument("trials must be positive");
}

}  // namespace

SweepRow mc_extinction_depth_n(std::uint32_t d, std::uint32_t k, double p,
                               std::uint32_t n, std::uint64_t trials,
                               std::uint64_t seed) {
    if (k < 2 || k > d) throw std::invalid_argument("need 2 <= k <= d");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p outside [0,1]");
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    const std::uint32_t need = d + 1 - k;
    std::uint64_t failures = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(substream_seed(seed, 0, t));
        if (!witness_reaches(rng, d, need, p, n)) ++failures;
    }
    double est = static_cast<double>(failures) / static_cast<double>(trials);
    return {p, est, trials, std_err_of(est, trials), d, k, n, seed};
}

std::vector<SweepRow> mc_occupation_sweep(const GeneratorSpec& spec, std::uint32_t k,
                                          const std::vector<double>& p_grid,
                                          std::uint64_t trials, std::uint32_t depth,
                                          Boundary boundary, std::uint64_t seed) {
    check_common(k, trials);
    for (double p : p_grid)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p outside [0,1]");
    const bool resample = spec.kind == GeneratorSpec::Kind::gw;
    BuiltStructure built;
    if (!resample) built = build_structure(spec, depth, seed);
    std::vector<SweepRow> rows;
    rows.reserve(p_grid.size());
    for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
        const double p = p_grid[pi];
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            std::mt19937_64 rng(substream_seed(seed, pi, t));
            if (resample) built = build_structure(spec, depth, rng());
            const Graph& g = built.graph;
            const VertexId target = observable_vertex(spec, built, depth);
            SiteConfig c0(g.num_vertices());
            for (VertexId v = 0; v < g.num_vertices(); ++v) {
                bool occ = uniform01(rng) < p;
                if (boundary == Boundary::occupied && built.boundary[v]) occ = true;
                if (occ) c0.set(v);
            }
            if (run(g, c0, k).final.test(target)) ++hits;
        }
        double est = static_cast<double>(hits) / static_cast<double>(trials);
        rows.push_back({p, est, trials, std_err_of(est, trials), d_column(spec), k,
                        depth, seed});
    }
    return rows;
}

double mc_empirical_pc(const GeneratorSpec& spec, std::uint32_t k, std::uint32_t depth,
                       std::uint64_t trials, double tol, std::uint64_t seed) {
    check_common(k, trials);
    if (!(tol > 0.0 && tol < 0.5)) throw std::invalid_argument("tol outside (0, 0.5)");
    const bool resample = spec.kind == GeneratorSpec::Kind::gw;
    BuiltStructure built;
    if (!resample) built = build_structure(spec, depth, seed);
    std::vector<double> thresholds(static_cast<std::size_t>(trials));
    std::vector<double> u;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(substream_seed(seed, 0, t));
        if (resample) built = build_structure(spec, depth, rng());
        const Graph& g = built.graph;
        const VertexId target = observable_vertex(spec, built, depth);
        u.resize(g.num_vertices());
        for (double& x : u) x = uniform01(rng);
        auto occupied_at = [&](double p) {
            SiteConfig c0(g.num_vertices());
            for (VertexId v = 0; v < g.num_vertices(); ++v)
                if (u[v] < p) c0.set(v);
            return run(g, c0, k).final.test(target);
        };
        // occupied_at(1) holds since every U_v < 1; occupied_at(0) fails for
        // k >= 1, so the threshold lives in (0, 1].
        double lo = 0.0, hi = 1.0;
        while (hi - lo > tol) {
            double mid = 0.5 * (lo + hi);
            (occupied_at(mid) ? hi : lo) = mid;
        }
        thresholds[static_cast<std::size_t>(t)] = 0.5 * (lo + hi);
    }
    std::sort(thresholds.begin(), thresholds.end());
    return thresholds[(thresholds.size() - 1) / 2];
}

}  // namespace bootperc
