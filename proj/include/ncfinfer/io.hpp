#pragma once

// File formats and reports.
//
//   wiring      JSON {"nodes": [names...], "regulators": {name: [names...]}}
//               Every node needs an entry; list order is input order.
//   time course CSV, header of node names then one 0/1 row per time step.
//               Blank lines and lines starting with '#' are skipped.
//   rules       JSON {name: "anf"} using x1..xk for the node's regulators
//               in wiring order, as printed by to_anf_string.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ncfinfer/dynamics.hpp"
#include "ncfinfer/infer.hpp"

namespace ncfinfer {

using Json = nlohmann::ordered_json;

WiringDiagram parse_wiring(std::string_view text);
std::string serialize_wiring(const WiringDiagram& w);

TimeCourse parse_timecourse(std::string_view text);
std::string serialize_timecourse(const TimeCourse& tc);

BooleanNetwork parse_rules(std::string_view text, const WiringDiagram& w);
std::string serialize_rules(const BooleanNetwork& net);

std::string sha256_hex(std::string_view bytes);

/// Content digests recorded in every report.
struct Provenance {
  std::string wiring_sha256;
  std::vector<std::string> timecourse_sha256;
};

/// State as a 0/1 string, node 0 first.
std::string state_string(std::uint32_t state, unsigned nodes);

Json inference_report(const WiringDiagram& w, const InferenceResult& res, const Provenance& inputs);

/// Fixed-width table: node, inputs, model-space size, NCFs of that arity,
/// fitting NCFs, degenerate fits; followed by the model count.
std::string inference_table(const WiringDiagram& w, const InferenceResult& res);

/// One ANF string per line, in set order.
std::string ncf_set_lines(const NcfSet& set);

/// [{"truth_table": int, "anf": str, "witness": {"sigma","a","b"}}...];
/// sigma lists 1-based variable numbers.
Json ncf_set_json(const NcfSet& set);

Json stats_report(const EnsembleStats& stats, const Provenance& inputs);

/// CSV with columns bin_start,bin_end,networks.
std::string stats_csv(const EnsembleStats& stats);

Json phase_space_report(const BooleanNetwork& net, const PhaseSpace& ps);

}  // namespace ncfinfer
