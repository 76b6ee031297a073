// Command line front end: binds the generators, solvers and Monte Carlo
// entry points into reproducible runs. Every invocation emits one JSON
// envelope {tool, version, command, params, seed, result} (or a CSV table
// for sweeps on request), with floats at 12 significant digits. Stochastic
// commands require an explicit --seed; there is deliberately no environment
// fallback, so a command line is the whole experiment.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bootperc/analytic.hpp"
#include "bootperc/dynamics.hpp"
#include "bootperc/forts.hpp"
#include "bootperc/generators.hpp"
#include "bootperc/montecarlo.hpp"
#include "bootperc/rng.hpp"
#include "bootperc/serialize.hpp"
#include "bootperc/treecalc.hpp"

namespace {

using namespace bootperc;

constexpr const char* kTool = "bootperc";
constexpr const char* kVersion = "0.1.0";

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const std::string& tok : split(s, ',')) {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty number list");
    return out;
}

std::vector<std::uint32_t> parse_u32s(const std::string& s) {
    std::vector<std::uint32_t> out;
    for (double v : parse_doubles(s)) {
        auto u = static_cast<std::uint32_t>(v);
        if (static_cast<double>(u) != v) throw std::invalid_argument("expected integers");
        out.push_back(u);
    }
    return out;
}

// "j:prob,..." with probabilities renormalized only when they already sum to
// 1 within 1e-9; anything farther off is a typo, not a scale choice.
OffspringDistribution parse_dist(const std::string& s) {
    std::vector<OffspringDistribution::Atom> atoms;
    double sum = 0;
    for (const std::string& tok : split(s, ',')) {
        auto parts = split(tok, ':');
        if (parts.size() != 2) throw std::invalid_argument("expected j:prob, got '" + tok + "'");
        std::size_t used = 0;
        unsigned long j = std::stoul(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("bad child count '" + parts[0] + "'");
        double prob = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("bad probability '" + parts[1] + "'");
        atoms.push_back({static_cast<std::uint32_t>(j), prob});
        sum += prob;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("offspring probabilities sum to " + fmt12(sum) +
                                    ", expected 1 within 1e-9");
    for (auto& a : atoms) a.prob /= sum;
    return OffspringDistribution(atoms);
}

GeneratorSpec::Kind parse_kind(const std::string& name) {
    if (name == "regular-dary") return GeneratorSpec::Kind::regular_dary;
    if (name == "regular-dplus1") return GeneratorSpec::Kind::regular_dplus1;
    if (name == "subdivided") return GeneratorSpec::Kind::subdivided;
    if (name == "gw") return GeneratorSpec::Kind::gw;
    if (name == "greedy") return GeneratorSpec::Kind::greedy;
    if (name == "path") return GeneratorSpec::Kind::path;
    if (name == "grid") return GeneratorSpec::Kind::grid;
    throw std::invalid_argument("unknown generator '" + name + "'");
}

RootedTree load_tree(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open tree file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return from_parent_list(buf.str());
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw std::runtime_error("cannot write '" + output_path + "'");
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

struct Cli {
    // shared output controls
    std::string output_path;
    std::string format = "json";

    // critical
    std::uint32_t d = 3;
    std::uint32_t k = 2;
    double tol = 1e-10;
    double gamma = 0;
    std::string dlist;

    // structure selection
    std::string gen;
    std::string dist;
    std::string tree_path;
    std::uint32_t depth = 6;
    std::uint32_t fort_free_n = 4;
    std::string boundary = "vacant";

    // experiments
    std::string mode = "occupation";
    std::string p_grid;
    double p = 0;
    std::uint64_t trials = 0;
    double pc_tol = 0.01;
    std::uint64_t seed = 0;
    bool seed_given = false;

    // prune
    std::vector<double> betas;
    double beta = 0;

    // forts
    std::string method;
    std::uint32_t max_size = 8;
    bool interior = false;
    std::string boundary_mode = "open";
    std::uint32_t blue_x = 0;
    std::uint32_t blue_R = 1;

    // bound
    std::string bound_type;
    double h = 0;

    // branching
    double lambda_lo = 0;
    double lambda_hi = 0;
    std::string depths;
};

GeneratorSpec make_spec(const Cli& c) {
    GeneratorSpec spec;
    spec.kind = parse_kind(c.gen);
    spec.d = c.d;
    spec.fort_free_n = c.fort_free_n;
    if (spec.kind == GeneratorSpec::Kind::gw) {
        if (c.dist.empty()) throw std::invalid_argument("gw generator needs --dist");
        spec.dist = parse_dist(c.dist);
    }
    return spec;
}

void require_seed(const Cli& c) {
    if (!c.seed_given)
        throw std::invalid_argument("stochastic command requires an explicit --seed");
}

Json structure_params(const Cli& c) {
    Json p{{"gen", c.gen}, {"depth", c.depth}};
    if (!c.dist.empty()) p["dist"] = c.dist;
    if (c.gen == "greedy") p["fort_free_n"] = c.fort_free_n;
    if (c.gen == "regular-dary" || c.gen == "regular-dplus1" || c.gen == "subdivided")
        p["d"] = c.d;
    return p;
}

Json cmd_critical(const Cli& c) {
    if (!c.dlist.empty()) {
        auto rows = asymptotic_gamma_check(c.gamma, parse_u32s(c.dlist));
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        return Json{{"gamma", sig12(c.gamma)}, {"rows", arr}};
    }
    CriticalResult r = critical_p_regular(c.d, c.k, c.tol);
    Json out = to_json(r);
    if (c.k == c.d)
        out["closed_form"] = sig12(closed_form_kd(c.d));
    else if (c.k == 2)
        out["closed_form"] = sig12(closed_form_k2(c.d));
    else
        out["closed_form"] = nullptr;
    return out;
}

Json cmd_gw_critical(const Cli& c) {
    return to_json(gw_critical(parse_dist(c.dist), c.k, c.tol));
}

Json cmd_simulate(const Cli& c) {
    GeneratorSpec spec = make_spec(c);
    std::mt19937_64 rng(substream_seed(c.seed, 0, 0));
    BuiltStructure built = spec.kind == GeneratorSpec::Kind::gw
                               ? build_structure(spec, c.depth, rng())
                               : build_structure(spec, c.depth, c.seed);
    const Graph& g = built.graph;
    bool wired = c.boundary == "occupied";
    SiteConfig c0(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        bool occ = uniform01(rng) < c.p;
        if (wired && built.boundary[v]) occ = true;
        if (occ) c0.set(v);
    }
    RunReport report = run(g, c0, c.k);
    VertexId target = spec.kind == GeneratorSpec::Kind::grid
                          ? (c.depth / 2) * c.depth + c.depth / 2
                          : (built.tree ? built.tree->root : 0);
    Json out = run_report_json(report);
    out["initial_hex"] = c0.to_hex();
    out["initially_occupied"] = c0.count();
    out["target"] = target;
    out["target_occupied"] = report.final.test(target);
    out["structure_hash"] = g.structure_hash();
    return out;
}

Json sweep_result(const Cli& c, std::vector<SweepRow>& rows_out) {
    if (c.mode == "extinction") {
        for (double p : parse_doubles(c.p_grid))
            rows_out.push_back(mc_extinction_depth_n(c.d, c.k, p, c.depth, c.trials, c.seed));
        Json arr = Json::array();
        for (const auto& r : rows_out) arr.push_back(to_json(r));
        return Json{{"rows", arr}};
    }
    if (c.mode == "occupation") {
        GeneratorSpec spec = make_spec(c);
        Boundary b = c.boundary == "occupied" ? Boundary::occupied : Boundary::vacant;
        rows_out = mc_occupation_sweep(spec, c.k, parse_doubles(c.p_grid), c.trials,
                                       c.depth, b, c.seed);
        Json arr = Json::array();
        for (const auto& r : rows_out) arr.push_back(to_json(r));
        return Json{{"rows", arr}};
    }
    if (c.mode == "empirical-pc") {
        GeneratorSpec spec = make_spec(c);
        double pc = mc_empirical_pc(spec, c.k, c.depth, c.trials, c.pc_tol, c.seed);
        return Json{{"p_estimate", sig12(pc)}, {"tol", sig12(c.pc_tol)}, {"trials", c.trials}};
    }
    throw std::invalid_argument("unknown sweep mode '" + c.mode + "'");
}

Json cmd_prune(const Cli& c, const RootedTree& t) {
    std::vector<double> betas = c.betas;
    if (betas.empty() && c.beta > 0) betas.push_back(c.beta);
    if (betas.size() != c.k)
        throw std::invalid_argument("prune needs exactly k betas (k=" + std::to_string(c.k) +
                                    ", got " + std::to_string(betas.size()) + ")");
    if (c.k == 1) return to_json(prune_beta(t, betas[0]));
    auto reports = prune_k(t, c.k, betas);
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return Json{{"reports", arr}};
}

Json cmd_forts(const Cli& c) {
    BuiltStructure built;
    if (!c.tree_path.empty()) {
        RootedTree t = load_tree(c.tree_path);
        built.graph = t.graph;
        built.boundary.assign(t.boundary.begin(), t.boundary.end());
        built.tree = std::move(t);
    } else {
        GeneratorSpec spec = make_spec(c);
        if (spec.kind == GeneratorSpec::Kind::gw) require_seed(c);
        built = build_structure(spec, c.depth, c.seed);
    }
    const Graph& g = built.graph;
    if (c.method == "min") {
        std::optional<std::vector<VertexId>> restrict_to;
        if (c.interior) {
            restrict_to.emplace();
            for (VertexId v = 0; v < g.num_vertices(); ++v)
                if (!built.boundary[v]) restrict_to->push_back(v);
        }
        auto cert = find_min_fort(g, c.k, c.max_size, restrict_to);
        Json out{{"found", cert.has_value()}, {"max_size", c.max_size}};
        out["certificate"] = cert ? to_json(*cert) : Json(nullptr);
        return out;
    }
    if (!built.tree) throw std::invalid_argument("method needs a rooted tree");
    const RootedTree& t = *built.tree;
    if (c.method == "red") {
        BoundaryMode mode = c.boundary_mode == "closed" ? BoundaryMode::closed
                                                        : BoundaryMode::open;
        RedResult r = red_coloring(t, c.k, mode);
        const char* outcome = r.outcome == RedResult::Outcome::finite_fort ? "finite_fort"
                              : r.outcome == RedResult::Outcome::kary_subtree
                                  ? "kary_subtree"
                                  : "inconclusive";
        Json out{{"outcome", outcome}, {"fort", r.fort}, {"subtree", r.subtree}};
        if (r.outcome == RedResult::Outcome::finite_fort)
            out["certificate"] =
                to_json(FortCertificate{r.fort, c.k - 1, g.structure_hash()});
        return out;
    }
    if (c.method == "blue")
        return Json{{"certificate", to_json(blue_fort(t, c.blue_x, c.blue_R, c.k))}};
    throw std::invalid_argument("unknown forts method '" + c.method + "'");
}

Json cmd_bound(const Cli& c) {
    if (c.bound_type == "anchored") return to_json(anchored_bound(c.d, c.k, c.h));
    if (c.bound_type == "qlower") {
        double value = q_lower_bound(c.d, c.k, c.tol);
        return Json{{"value", sig12(value)}, {"z_at_value", sig12(z_fixed_point(c.d, c.k, value))}};
    }
    throw std::invalid_argument("unknown bound type '" + c.bound_type + "'");
}

Json cmd_branching(const Cli& c) {
    GeneratorSpec::Kind kind = parse_kind(c.gen);
    std::uint32_t d = c.d, ffn = c.fort_free_n;
    TreeFamily family;
    switch (kind) {
        case GeneratorSpec::Kind::regular_dary:
            family = [d](std::uint32_t n) { return gen_regular_tree(d, n, RootedArity::d_ary); };
            break;
        case GeneratorSpec::Kind::regular_dplus1:
            family = [d](std::uint32_t n) { return gen_regular_tree(d, n, RootedArity::d_plus_1); };
            break;
        case GeneratorSpec::Kind::subdivided:
            family = [d](std::uint32_t n) { return gen_subdivided_tree(d, n).tree; };
            break;
        case GeneratorSpec::Kind::path:
            family = [](std::uint32_t n) { return gen_path(n); };
            break;
        case GeneratorSpec::Kind::greedy:
            family = [ffn](std::uint32_t n) { return gen_greedy_fortfree_tree(ffn, n); };
            break;
        default:
            throw std::invalid_argument("branching needs a deterministic tree family");
    }
    return to_json(estimate_branching(family, c.lambda_lo, c.lambda_hi, parse_u32s(c.depths)));
}

int emit_error(const std::string& command, const std::string& message) {
    Json err{{"tool", kTool}, {"version", kVersion}, {"command", command}, {"error", message}};
    std::cout << err.dump() << '\n';
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bootstrap percolation toolkit"};
    app.require_subcommand(1);
    Cli c;

    auto add_output = [&](CLI::App* sc) {
        sc->add_option("--output", c.output_path, "write the artifact here instead of stdout");
    };
    auto add_structure = [&](CLI::App* sc, bool need_gen) {
        auto* g = sc->add_option("--gen", c.gen,
                                 "regular-dary|regular-dplus1|subdivided|gw|greedy|path|grid");
        if (need_gen) g->required();
        sc->add_option("--d", c.d, "degree parameter");
        sc->add_option("--depth", c.depth, "truncation depth (grid side)");
        sc->add_option("--dist", c.dist, "offspring distribution j:prob,...");
        sc->add_option("--fort-free-n", c.fort_free_n, "greedy generator window");
    };
    auto add_seed = [&](CLI::App* sc) {
        sc->add_option("--seed", c.seed, "master seed (required)")
            ->each([&](const std::string&) { c.seed_given = true; });
    };

    CLI::App* critical = app.add_subcommand("critical", "regular tree critical density");
    critical->add_option("--d", c.d, "children per vertex");
    critical->add_option("--k", c.k, "rule threshold");
    critical->add_option("--tol", c.tol, "bisection bracket width");
    critical->add_option("--gamma", c.gamma, "threshold fraction for the table mode");
    critical->add_option("--dlist", c.dlist, "comma list of d for the table mode");
    add_output(critical);

    CLI::App* gwc = app.add_subcommand("gw-critical", "branching tree critical density");
    gwc->add_option("--dist", c.dist, "offspring distribution j:prob,...")->required();
    gwc->add_option("--k", c.k, "rule threshold")->required();
    gwc->add_option("--tol", c.tol, "bisection bracket width");
    add_output(gwc);

    CLI::App* sim = app.add_subcommand("simulate", "one seeded run of the dynamics");
    add_structure(sim, true);
    sim->add_option("--k", c.k, "rule threshold")->required();
    sim->add_option("--p", c.p, "occupation density")->required()->check(CLI::Range(0.0, 1.0));
    sim->add_option("--boundary", c.boundary, "vacant|occupied")
        ->check(CLI::IsMember({"vacant", "occupied"}));
    add_seed(sim);
    add_output(sim);

    CLI::App* sweep = app.add_subcommand("sweep", "seeded Monte Carlo sweeps");
    sweep->add_option("--mode", c.mode, "occupation|extinction|empirical-pc")
        ->check(CLI::IsMember({"occupation", "extinction", "empirical-pc"}));
    add_structure(sweep, false);
    sweep->add_option("--k", c.k, "rule threshold")->required();
    sweep->add_option("--p-grid", c.p_grid, "comma list of densities");
    sweep->add_option("--trials", c.trials, "trials per grid point")->required();
    sweep->add_option("--tol", c.pc_tol, "bisection tolerance for empirical-pc");
    sweep->add_option("--boundary", c.boundary, "vacant|occupied")
        ->check(CLI::IsMember({"vacant", "occupied"}));
    sweep->add_option("--format", c.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    add_seed(sweep);
    add_output(sweep);

    CLI::App* prune = app.add_subcommand("prune", "beta-prune a finite tree into a fort");
    prune->add_option("--tree", c.tree_path, "parent-list tree file")->required();
    prune->add_option("--k", c.k, "number of pruning rounds");
    prune->add_option("--beta", c.beta, "single pruning beta (k = 1)");
    prune->add_option("--betas", [&c](const std::vector<std::string>& vals) {
        c.betas = parse_doubles(vals.back());
        return true;
    }, "comma list of betas, one per round");
    add_output(prune);

    CLI::App* forts = app.add_subcommand("forts", "fort search and coloring certificates");
    forts->add_option("--method", c.method, "min|red|blue")
        ->required()
        ->check(CLI::IsMember({"min", "red", "blue"}));
    add_structure(forts, false);
    forts->add_option("--tree", c.tree_path, "parent-list tree file");
    forts->add_option("--k", c.k, "fort parameter (min, blue) or rule threshold (red)")
        ->required();
    forts->add_option("--max-size", c.max_size, "search cap for min");
    forts->add_flag("--interior", c.interior, "restrict membership to non-boundary vertices");
    forts->add_option("--boundary-mode", c.boundary_mode, "open|closed for red")
        ->check(CLI::IsMember({"open", "closed"}));
    forts->add_option("--x", c.blue_x, "blue coloring anchor vertex");
    forts->add_option("--R", c.blue_R, "blue coloring depth");
    add_seed(forts);
    add_output(forts);

    CLI::App* bound = app.add_subcommand("bound", "analytic density bounds");
    bound->add_option("--type", c.bound_type, "anchored|qlower")
        ->required()
        ->check(CLI::IsMember({"anchored", "qlower"}));
    bound->add_option("--d", c.d, "graph degree")->required();
    bound->add_option("--k", c.k, "rule threshold")->required();
    bound->add_option("--expansion", c.h, "anchored expansion constant");
    bound->add_option("--tol", c.tol, "bisection tolerance");
    add_output(bound);

    CLI::App* branching = app.add_subcommand("branching", "bracket the branching number");
    branching->add_option("--gen", c.gen, "deterministic tree family")->required();
    branching->add_option("--d", c.d, "degree parameter");
    branching->add_option("--fort-free-n", c.fort_free_n, "greedy generator window");
    branching->add_option("--lambda-lo", c.lambda_lo, "bracket start")->required();
    branching->add_option("--lambda-hi", c.lambda_hi, "bracket end")->required();
    branching->add_option("--depths", c.depths, "comma list of evaluation depths")->required();
    add_output(branching);

    std::string command = "(none)";
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        for (const CLI::App* sc : app.get_subcommands()) command = sc->get_name();
        return emit_error(command, std::string("argument error: ") + e.what());
    }
    CLI::App* sub = app.get_subcommands().front();
    command = sub->get_name();

    try {
        Json params;
        Json result;
        std::optional<std::uint64_t> seed_echo;
        if (sub == critical) {
            params = {{"tol", c.tol}};
            if (!c.dlist.empty()) {
                params["gamma"] = c.gamma;
                params["dlist"] = c.dlist;
            } else {
                params["d"] = c.d;
                params["k"] = c.k;
            }
            result = cmd_critical(c);
        } else if (sub == gwc) {
            params = {{"dist", c.dist}, {"k", c.k}, {"tol", c.tol}};
            result = cmd_gw_critical(c);
        } else if (sub == sim) {
            require_seed(c);
            seed_echo = c.seed;
            params = structure_params(c);
            params["k"] = c.k;
            params["p"] = sig12(c.p);
            params["boundary"] = c.boundary;
            result = cmd_simulate(c);
        } else if (sub == sweep) {
            require_seed(c);
            seed_echo = c.seed;
            params = c.mode == "extinction" ? Json{{"d", c.d}, {"depth", c.depth}}
                                            : structure_params(c);
            params["mode"] = c.mode;
            params["k"] = c.k;
            params["trials"] = c.trials;
            if (c.mode == "empirical-pc") {
                params["tol"] = sig12(c.pc_tol);
            } else {
                if (c.p_grid.empty()) throw std::invalid_argument("mode needs --p-grid");
                params["p_grid"] = c.p_grid;
            }
            if (c.mode == "occupation") params["boundary"] = c.boundary;
            std::vector<SweepRow> rows;
            result = sweep_result(c, rows);
            if (c.format == "csv") {
                if (c.mode == "empirical-pc")
                    throw std::invalid_argument("empirical-pc emits JSON only");
                std::vector<std::pair<std::string, std::string>> prov{
                    {"tool", kTool},
                    {"version", kVersion},
                    {"command", command},
                    {"params", params.dump()},
                    {"seed", std::to_string(c.seed)}};
                emit(sweep_csv(rows, prov), c.output_path);
                return 0;
            }
        } else if (sub == prune) {
            params = {{"tree", c.tree_path}, {"k", c.k}};
            if (!c.betas.empty())
                params["betas"] = c.betas;
            else
                params["beta"] = c.beta;
            result = cmd_prune(c, load_tree(c.tree_path));
        } else if (sub == forts) {
            params = c.tree_path.empty() ? structure_params(c) : Json{{"tree", c.tree_path}};
            params["method"] = c.method;
            params["k"] = c.k;
            if (c.method == "min") {
                params["max_size"] = c.max_size;
                params["interior"] = c.interior;
            }
            if (c.method == "blue") {
                params["x"] = c.blue_x;
                params["R"] = c.blue_R;
            }
            if (c.seed_given) seed_echo = c.seed;
            result = cmd_forts(c);
        } else if (sub == bound) {
            params = {{"type", c.bound_type}, {"d", c.d}, {"k", c.k}};
            if (c.bound_type == "anchored") params["expansion"] = sig12(c.h);
            result = cmd_bound(c);
        } else if (sub == branching) {
            params = {{"gen", c.gen},       {"d", c.d},
                      {"lambda_lo", sig12(c.lambda_lo)}, {"lambda_hi", sig12(c.lambda_hi)},
                      {"depths", c.depths}};
            result = cmd_branching(c);
        }
        Json envelope{{"tool", kTool},     {"version", kVersion}, {"command", command},
                      {"params", params},  {"seed", seed_echo ? Json(*seed_echo) : Json(nullptr)},
                      {"result", result}};
        emit(envelope.dump(), c.output_path);
        return 0;
    } catch (const std::exception& e) {
        return emit_error(command, e.what());
    }
}
