#include "ncfinfer/io.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <set>
#include <sstream>

namespace ncfinfer {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Json parse_json(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::string node_list(const WiringDiagram& w, const std::vector<std::size_t>& idx) {
  std::string s;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (j != 0) s += ",";
    s += w.name(idx[j]);
  }
  return s;
}

}  // namespace

WiringDiagram parse_wiring(std::string_view text) {
  const Json doc = parse_json(text, "wiring");
  if (!doc.is_object()) throw ParseError("wiring: top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "nodes" && key != "regulators") throw ParseError("wiring: unknown field '" + key + "'");
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) throw ParseError("wiring: 'nodes' must be an array");
  if (!doc.contains("regulators") || !doc["regulators"].is_object()) {
    throw ParseError("wiring: 'regulators' must be an object");
  }

  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
    const auto& n = doc["nodes"][i];
    if (!n.is_string()) throw ParseError("wiring: nodes[" + std::to_string(i) + "] must be a string");
    nodes.push_back(n.get<std::string>());
  }
  auto index_of = [&](const std::string& name) -> std::optional<std::size_t> {
    auto it = std::find(nodes.begin(), nodes.end(), name);
    if (it == nodes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - nodes.begin());
  };
  std::set<std::string> distinct;
  for (const auto& n : nodes) {
    if (!distinct.insert(n).second) throw ParseError("wiring: nodes: duplicate node '" + n + "'");
  }

  std::vector<std::vector<std::size_t>> regulators(nodes.size());
  std::vector<bool> listed(nodes.size(), false);
  for (const auto& [target, regs] : doc["regulators"].items()) {
    const auto t = index_of(target);
    if (!t) throw ParseError("wiring: regulators: unknown node '" + target + "'");
    if (!regs.is_array()) throw ParseError("wiring: regulators." + target + " must be an array");
    listed[*t] = true;
    for (std::size_t j = 0; j < regs.size(); ++j) {
      const std::string field = "wiring: regulators." + target + "[" + std::to_string(j) + "]";
      if (!regs[j].is_string()) throw ParseError(field + " must be a string");
      const auto r = index_of(regs[j].get<std::string>());
      if (!r) throw ParseError(field + ": unknown node '" + regs[j].get<std::string>() + "'");
      regulators[*t].push_back(*r);
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!listed[i]) throw ParseError("wiring: regulators: no entry for node '" + nodes[i] + "'");
  }
  try {
    return WiringDiagram(std::move(nodes), std::move(regulators));
  } catch (const ConfigError& e) {
    throw ParseError(std::string("wiring: ") + e.what());
  }
}

std::string serialize_wiring(const WiringDiagram& w) {
  Json doc;
  doc["nodes"] = w.nodes();
  Json regs = Json::object();
  for (std::size_t i = 0; i < w.size(); ++i) {
    Json list = Json::array();
    for (auto r : w.regulators(i)) list.push_back(w.name(r));
    regs[w.name(i)] = std::move(list);
  }
  doc["regulators"] = std::move(regs);
  return doc.dump(2) + "\n";
}

TimeCourse parse_timecourse(std::string_view text) {
  std::vector<std::string> header;
  std::vector<std::vector<std::uint8_t>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_fields(line);
    const std::string where = "time course line " + std::to_string(line_no);
    if (header.empty()) {
      for (const auto& f : fields) {
        if (f.empty()) throw ParseError(where + ": empty column name");
      }
      header = std::move(fields);
      continue;
    }
    if (fields.size() != header.size()) {
      throw ParseError(where + ": expected " + std::to_string(header.size()) + " values, found " +
                       std::to_string(fields.size()));
    }
    std::vector<std::uint8_t> row;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c] != "0" && fields[c] != "1") {
        throw ParseError(where + ", column '" + header[c] + "': value '" + fields[c] + "' is not 0 or 1");
      }
      row.push_back(fields[c] == "1");
    }
    rows.push_back(std::move(row));
  }
  if (header.empty()) throw ParseError("time course: missing header row");
  try {
    return TimeCourse(std::move(header), std::move(rows));
  } catch (const ConfigError& e) {
    throw ParseError(std::string("time course: ") + e.what());
  }
}

std::string serialize_timecourse(const TimeCourse& tc) {
  std::string out;
  for (std::size_t c = 0; c < tc.nodes().size(); ++c) {
    const auto& name = tc.nodes()[c];
    if (name.find_first_of(",\n#") != std::string::npos) {
      throw ArgumentError("node name '" + name + "' cannot be written to CSV");
    }
    if (c != 0) out += ',';
    out += name;
  }
  out += '\n';
  for (const auto& row : tc.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c != 0) out += ',';
      out += row[c] ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

BooleanNetwork parse_rules(std::string_view text, const WiringDiagram& w) {
  const Json doc = parse_json(text, "rules");
  if (!doc.is_object()) throw ParseError("rules: top level must be an object");
  std::vector<std::optional<TruthTable>> locals(w.size());
  for (const auto& [name, value] : doc.items()) {
    const auto i = w.index_of(name);
    if (!i) throw ParseError("rules: unknown node '" + name + "'");
    if (!value.is_string()) throw ParseError("rules." + name + " must be a string");
    try {
      locals[*i] = anf_to_tt(parse_anf(value.get<std::string>(), w.in_degree(*i)));
    } catch (const ParseError& e) {
      throw ParseError("rules." + name + ": " + e.what());
    }
  }
  std::vector<TruthTable> tables;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!locals[i]) throw ParseError("rules: no rule for node '" + w.name(i) + "'");
    tables.push_back(std::move(*locals[i]));
  }
  return BooleanNetwork(w, std::move(tables));
}

std::string serialize_rules(const BooleanNetwork& net) {
  Json doc = Json::object();
  for (std::size_t i = 0; i < net.size(); ++i) doc[net.wiring().name(i)] = to_anf_string(net.local(i));
  return doc.dump(2) + "\n";
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("digest", "SHA-256 computation failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return out.str();
}

std::string state_string(std::uint32_t state, unsigned nodes) {
  std::string s(nodes, '0');
  for (unsigned i = 0; i < nodes; ++i) {
    if ((state >> i) & 1u) s[i] = '1';
  }
  return s;
}

namespace {

Json provenance_json(const Provenance& inputs) {
  Json j;
  j["wiring_sha256"] = inputs.wiring_sha256;
  j["timecourse_sha256"] = inputs.timecourse_sha256;
  return j;
}

}  // namespace

Json inference_report(const WiringDiagram& w, const InferenceResult& res, const Provenance& inputs) {
  Json doc;
  doc["inputs"] = provenance_json(inputs);
  Json nodes = Json::array();
  for (const auto& n : res.nodes) {
    Json j;
    j["name"] = n.name;
    Json regs = Json::array();
    for (auto r : n.regulators) regs.push_back(w.name(r));
    j["regulators"] = std::move(regs);
    j["in_degree"] = n.regulators.size();
    j["distinct_inputs"] = n.data.distinct_inputs();
    j["model_space_log2"] = n.space_log2;
    j["model_space_size"] = "2^" + std::to_string(n.space_log2);
    j["ncfs_of_arity"] = n.ncf_total;
    j["ncf_count"] = n.ncfs.size();
    Json anf = Json::array();
    for (const auto& e : n.ncfs) anf.push_back(to_anf_string(e.table));
    j["ncfs"] = std::move(anf);
    j["degenerate_fit_count"] = n.degenerate_fits.size();
    Json degenerate = Json::array();
    for (const auto& t : n.degenerate_fits) degenerate.push_back(to_anf_string(t));
    j["degenerate_fits"] = std::move(degenerate);
    nodes.push_back(std::move(j));
  }
  doc["nodes"] = std::move(nodes);
  doc["model_count"] = count_models(res);
  return doc;
}

std::string inference_table(const WiringDiagram& w, const InferenceResult& res) {
  std::size_t width = 4;
  for (const auto& n : res.nodes) width = std::max(width, n.name.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "node" << std::right << std::setw(8) << "inputs"
      << std::setw(14) << "model-space" << std::setw(8) << "ncfs" << std::setw(14) << "fitting-ncfs"
      << std::setw(17) << "degenerate-fits" << "  regulators\n";
  for (const auto& n : res.nodes) {
    out << std::left << std::setw(static_cast<int>(width)) << n.name << std::right << std::setw(8)
        << n.regulators.size() << std::setw(14) << ("2^" + std::to_string(n.space_log2)) << std::setw(8)
        << n.ncf_total << std::setw(14) << n.ncfs.size() << std::setw(17) << n.degenerate_fits.size() << "  "
        << node_list(w, n.regulators) << "\n";
  }
  out << "nested canalyzing models: " << count_models(res) << "\n";
  return out.str();
}

std::string ncf_set_lines(const NcfSet& set) {
  std::string out;
  for (const auto& e : set) out += to_anf_string(e.table) + "\n";
  return out;
}

Json ncf_set_json(const NcfSet& set) {
  Json list = Json::array();
  for (const auto& e : set) {
    Json j;
    if (set.arity() <= 6) {
      j["truth_table"] = e.table.to_integer();
    } else {
      j["truth_table"] = to_bit_string(e.table);
    }
    j["anf"] = to_anf_string(e.table);
    Json sigma = Json::array();
    for (auto v : e.witness.sigma) sigma.push_back(v + 1);
    j["witness"] = {{"sigma", sigma}, {"a", e.witness.a}, {"b", e.witness.b}};
    list.push_back(std::move(j));
  }
  return list;
}

Json stats_report(const EnsembleStats& stats, const Provenance& inputs) {
  Json doc;
  doc["inputs"] = provenance_json(inputs);
  doc["mode"] = to_string(stats.mode);
  doc["seed"] = stats.seed;
  doc["sampling"] = "independent uniform choice per node over its candidate set";
  doc["rng"] = "mt19937_64 per sample, seeded with splitmix64 derivation of (seed, sample index)";
  doc["sample_count"] = stats.sample_count;
  doc["mean_components"] = stats.mean_components;
  doc["mean_trajectory_component_size"] = stats.mean_trajectory_component_size;
  doc["count_trajectory_not_in_largest"] = stats.count_trajectory_not_in_largest;
  doc["mean_size_when_not_largest"] = stats.mean_size_when_not_largest;
  doc["fallback_nodes"] = stats.fallback_nodes;
  Json hist = Json::array();
  for (std::size_t b = 0; b < stats.histogram.size(); ++b) {
    hist.push_back({{"bin_start", b * stats.bin_width}, {"networks", stats.histogram[b]}});
  }
  doc["histogram_bin_width"] = stats.bin_width;
  doc["histogram"] = std::move(hist);
  doc["trajectory_component_sizes"] = stats.trajectory_component_sizes;
  doc["component_counts"] = stats.component_counts;
  return doc;
}

std::string stats_csv(const EnsembleStats& stats) {
  std::ostringstream out;
  out << "bin_start,bin_end,networks\n";
  for (std::size_t b = 0; b < stats.histogram.size(); ++b) {
    out << b * stats.bin_width << ',' << (b + 1) * stats.bin_width << ',' << stats.histogram[b] << '\n';
  }
  return out.str();
}

Json phase_space_report(const BooleanNetwork& net, const PhaseSpace& ps) {
  Json doc;
  doc["nodes"] = net.wiring().nodes();
  doc["states"] = ps.successor.size();
  doc["component_count"] = ps.component_count();
  Json comps = Json::array();
  for (std::size_t c = 0; c < ps.component_count(); ++c) {
    Json cycle = Json::array();
    for (auto s : ps.cycles[c]) cycle.push_back(state_string(s, ps.nodes));
    comps.push_back({{"size", ps.component_sizes[c]}, {"attractor", std::move(cycle)}});
  }
  doc["components"] = std::move(comps);
  return doc;
}

}  // namespace ncfinfer
