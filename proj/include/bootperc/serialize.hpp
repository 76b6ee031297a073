// JSON and CSV forms of the report types, shared by the command line tool and
// the round-trip tests.
//
// Floating values are rounded to 12 significant digits before they enter an
// artifact, so emitted numbers are stable across platforms that agree on
// %.12g. Certificates carry the host graph hash, which lets a reader rebuild
// the structure and re-run is_fort before trusting the vertices.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bootperc/analytic.hpp"
#include "bootperc/dynamics.hpp"
#include "bootperc/forts.hpp"
#include "bootperc/montecarlo.hpp"
#include "bootperc/treecalc.hpp"

namespace bootperc {

using Json = nlohmann::json;

// Nearest double to the %.12g rendering of x.
double sig12(double x);
std::string fmt12(double x);

Json to_json(const FortCertificate& cert);
FortCertificate fort_from_json(const Json& j);

Json to_json(const CriticalResult& r);
Json to_json(const FixedPointResult& r);
Json to_json(const GammaRow& r);
Json to_json(const AnchoredBoundReport& r);
Json to_json(const AnimalRow& r);
Json to_json(const PruneReport& r);
Json to_json(const BranchingEstimate& r);
Json to_json(const SweepRow& r);

// RunReport plus the vertex count needed to parse final_hex back.
Json run_report_json(const RunReport& r);

// Fixed column order "p,estimate,std_err,trials,d,k,depth,seed" preceded by
// "# key=value" provenance comment lines.
std::string sweep_csv(const std::vector<SweepRow>& rows,
                      const std::vector<std::pair<std::string, std::string>>& provenance);

}  // namespace bootperc
