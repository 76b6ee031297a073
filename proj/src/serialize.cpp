#include "bootperc/serialize.hpp"

#include <cstdio>
#include <cstdlib>

namespace bootperc {

std::string fmt12(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double sig12(double x) { return std::strtod(fmt12(x).c_str(), nullptr); }

Json to_json(const FortCertificate& cert) {
    return Json{{"k", cert.k}, {"vertices", cert.vertices}, {"host_hash", cert.host_hash}};
}

FortCertificate fort_from_json(const Json& j) {
    FortCertificate cert;
    cert.k = j.at("k").get<std::uint32_t>();
    cert.vertices = j.at("vertices").get<std::vector<VertexId>>();
    cert.host_hash = j.at("host_hash").get<std::uint64_t>();
    return cert;
}

Json to_json(const CriticalResult& r) {
    return Json{{"p_crit", sig12(r.p_crit)},
                {"bracket_width", sig12(r.bracket_width)},
                {"method", r.method == CriticalMethod::closed_form ? "closed_form" : "bisection"}};
}

Json to_json(const FixedPointResult& r) {
    return Json{{"value", sig12(r.value)},
                {"iterations", r.iterations},
                {"residual", sig12(r.residual)},
                {"capped", r.capped}};
}

Json to_json(const GammaRow& r) {
    return Json{{"d", r.d},
                {"k", r.k},
                {"p_crit", sig12(r.p_crit)},
                {"remark_bound", sig12(r.remark_bound)},
                {"bound_ok", r.bound_ok}};
}

Json to_json(const AnchoredBoundReport& r) {
    return Json{{"d", r.d},
                {"k", r.k},
                {"h", sig12(r.h)},
                {"c", sig12(r.c)},
                {"K", sig12(r.K)},
                {"p_explicit", sig12(r.p_explicit)},
                {"p_sharp", sig12(r.p_sharp)},
                {"rate_at_sharp", sig12(r.rate_at_sharp)}};
}

Json to_json(const AnimalRow& r) {
    return Json{{"m", r.m}, {"count", r.count}, {"bound", sig12(r.bound)}};
}

Json to_json(const PruneReport& r) {
    return Json{{"fort", to_json(r.fort)},
                {"beta", sig12(r.beta)},
                {"alpha", sig12(r.alpha)},
                {"lhs", sig12(r.lhs)},
                {"rhs", sig12(r.rhs)}};
}

Json to_json(const BranchingEstimate& r) {
    return Json{{"lower", sig12(r.lower)}, {"upper", sig12(r.upper)}, {"depth_used", r.depth_used}};
}

Json to_json(const SweepRow& r) {
    return Json{{"p", sig12(r.p)},
                {"estimate", sig12(r.estimate)},
                {"trials", r.trials},
                {"std_err", sig12(r.std_err)},
                {"d", r.d},
                {"k", r.k},
                {"depth", r.depth},
                {"seed", r.seed}};
}

Json run_report_json(const RunReport& r) {
    return Json{{"n", r.final.n()},
                {"complete", r.complete()},
                {"occupied", r.final.count()},
                {"rounds", r.rounds},
                {"newly_occupied_per_round", r.newly_occupied_per_round},
                {"final_hex", r.final.to_hex()}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows,
                      const std::vector<std::pair<std::string, std::string>>& provenance) {
    std::string out;
    for (const auto& [key, value] : provenance) out += "# " + key + "=" + value + "\n";
    out += "p,estimate,std_err,trials,d,k,depth,seed\n";
    for (const SweepRow& r : rows) {
        out += fmt12(r.p) + "," + fmt12(r.estimate) + "," + fmt12(r.std_err) + ",";
        out += std::to_string(r.trials) + "," + std::to_string(r.d) + "," +
               std::to_string(r.k) + "," + std::to_string(r.depth) + "," +
               std::to_string(r.seed) + "\n";
    }
    return out;
}

}  // namespace bootperc
