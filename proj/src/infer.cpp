#include "ncfinfer/infer.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ncfinfer/parallel.hpp"

namespace ncfinfer {

WiringDiagram::WiringDiagram(std::vector<std::string> nodes, std::vector<std::vector<std::size_t>> regulators,
                             unsigned max_in_degree)
    : nodes_(std::move(nodes)), regulators_(std::move(regulators)) {
  if (regulators_.size() != nodes_.size()) throw ConfigError("one regulator list per node required");
  std::set<std::string> names;
  for (const auto& n : nodes_) {
    if (n.empty()) throw ConfigError("node names must be nonempty");
    if (!names.insert(n).second) throw ConfigError("duplicate node '" + n + "'");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    std::set<std::size_t> seen;
    for (auto r : regulators_[i]) {
      if (r >= nodes_.size()) throw ConfigError("node '" + nodes_[i] + "': regulator index out of range");
      if (!seen.insert(r).second) {
        throw ConfigError("node '" + nodes_[i] + "': regulator '" + nodes_[r] + "' listed twice");
      }
    }
    if (regulators_[i].size() > max_in_degree) {
      throw ConfigError("node '" + nodes_[i] + "': in-degree " + std::to_string(regulators_[i].size()) +
                        " exceeds cap " + std::to_string(max_in_degree));
    }
  }
}

std::optional<std::size_t> WiringDiagram::index_of(std::string_view name) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), name);
  if (it == nodes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

TimeCourse::TimeCourse(std::vector<std::string> nodes, std::vector<std::vector<std::uint8_t>> rows)
    : nodes_(std::move(nodes)), rows_(std::move(rows)) {
  std::set<std::string> names;
  for (const auto& n : nodes_) {
    if (!names.insert(n).second) throw ConfigError("time course: duplicate column '" + n + "'");
  }
  if (rows_.size() < 2) throw ConfigError("time course needs at least 2 rows");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != nodes_.size()) {
      throw ConfigError("time course row " + std::to_string(r + 1) + " has " + std::to_string(rows_[r].size()) +
                        " values, expected " + std::to_string(nodes_.size()));
    }
    for (auto v : rows_[r]) {
      if (v > 1) throw ConfigError("time course row " + std::to_string(r + 1) + " has a non-binary value");
    }
  }
}

TimeCourse TimeCourse::aligned_to(const WiringDiagram& w) const {
  if (nodes_ == w.nodes()) return *this;
  if (nodes_.size() != w.size()) {
    throw ConfigError("time course has " + std::to_string(nodes_.size()) + " columns, wiring has " +
                      std::to_string(w.size()) + " nodes");
  }
  std::vector<std::size_t> column(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto it = std::find(nodes_.begin(), nodes_.end(), w.name(i));
    if (it == nodes_.end()) throw ConfigError("time course is missing node '" + w.name(i) + "'");
    column[i] = static_cast<std::size_t>(it - nodes_.begin());
  }
  std::vector<std::vector<std::uint8_t>> rows;
  rows.reserve(rows_.size());
  for (const auto& row : rows_) {
    std::vector<std::uint8_t> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = row[column[i]];
    rows.push_back(std::move(out));
  }
  return TimeCourse(w.nodes(), std::move(rows));
}

std::uint32_t state_index(std::span<const std::uint8_t> row) {
  if (row.size() > 32) throw CapacityError("states wider than 32 nodes are not supported");
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < row.size(); ++i) s |= std::uint32_t{row[i] != 0} << i;
  return s;
}

LocalData local_data(const WiringDiagram& w, std::span<const TimeCourse> courses, std::size_t node) {
  if (node >= w.size()) throw ArgumentError("node index out of range");
  const auto& regs = w.regulators(node);
  const unsigned k = static_cast<unsigned>(regs.size());
  LocalData data(k);

  struct Origin {
    bool output;
    std::size_t course, row;
  };
  std::map<std::uint32_t, Origin> origin;
  auto where = [&](std::size_t course, std::size_t row) {
    std::string s = "row " + std::to_string(row + 1);
    if (courses.size() > 1) s = "course " + std::to_string(course + 1) + " " + s;
    return s;
  };

  for (std::size_t c = 0; c < courses.size(); ++c) {
    const TimeCourse tc = courses[c].aligned_to(w);
    const auto& rows = tc.rows();
    for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
      std::uint32_t input = 0;
      for (unsigned j = 0; j < k; ++j) input |= std::uint32_t{rows[r][regs[j]]} << j;
      const bool output = rows[r + 1][node] != 0;
      auto [it, inserted] = origin.try_emplace(input, Origin{output, c, r});
      if (!inserted && it->second.output != output) {
        throw InconsistencyError("node '" + w.name(node) + "': input pattern " + point_string(input, k) +
                                 " leads to " + std::to_string(it->second.output) + " after " +
                                 where(it->second.course, it->second.row) + " but to " + std::to_string(output) +
                                 " after " + where(c, r));
      }
      data.add(input, output);
    }
  }
  return data;
}

NcfSet infer_ncfs(const WiringDiagram& w, std::span<const TimeCourse> courses, std::size_t node) {
  const LocalData data = local_data(w, courses, node);
  if (data.arity() == 0) return NcfSet(0);
  return ncf_catalog(data.arity()).filter([&](const TruthTable& t) { return fits(t, data); });
}

NcfSet infer_ncfs_from_forms(const WiringDiagram& w, std::span<const TimeCourse> courses, std::size_t node) {
  const LocalData data = local_data(w, courses, node);
  if (data.arity() == 0) return NcfSet(0);
  std::vector<NcfSet::Entry> entries;
  for_each_form(data.arity(), [&](const NcfForm& form) {
    TruthTable t = ncf_from_form(form);
    if (fits(t, data)) entries.push_back({std::move(t), form});
  });
  return NcfSet::from_entries(data.arity(), std::move(entries));
}

bool cross_check(const WiringDiagram& w, std::span<const TimeCourse> courses, std::size_t node) {
  return infer_ncfs(w, courses, node) == infer_ncfs_from_forms(w, courses, node);
}

std::vector<TruthTable> degenerate_fits(const LocalData& data) {
  const unsigned k = data.arity();
  std::vector<TruthTable> out;
  for (bool value : {false, true}) {
    TruthTable c = constant(k, value, ArityLimit::hard);
    if (fits(c, data)) out.push_back(std::move(c));
  }
  const VarSet full = (VarSet{1} << k) - 1;
  for (VarSet subset = 1; subset < full; ++subset) {
    std::vector<unsigned> positions;
    for (unsigned v = 0; v < k; ++v) {
      if ((subset >> v) & 1u) positions.push_back(v);
    }
    for (const auto& e : ncf_catalog(static_cast<unsigned>(positions.size()))) {
      TruthTable t = embed(e.table, k, positions);
      if (fits(t, data)) out.push_back(std::move(t));
    }
  }
  // Essential-variable sets differ across subsets, so there are no duplicates.
  std::sort(out.begin(), out.end());
  return out;
}

InferenceResult infer(const WiringDiagram& w, std::span<const TimeCourse> courses, const InferOptions& options) {
  std::vector<std::size_t> targets;
  if (options.only_node) {
    if (*options.only_node >= w.size()) throw ArgumentError("node index out of range");
    targets.push_back(*options.only_node);
  } else {
    for (std::size_t i = 0; i < w.size(); ++i) targets.push_back(i);
  }

  InferenceResult res;
  res.nodes.resize(targets.size());
  parallel_for(targets.size(), options.threads, [&](std::size_t t) {
    const std::size_t i = targets[t];
    NodeInference& out = res.nodes[t];
    out.node = i;
    out.name = w.name(i);
    out.regulators = w.regulators(i);
    out.data = local_data(w, courses, i);
    out.space_log2 = model_space_log2(out.data);
    const unsigned k = out.data.arity();
    if (k > 0) {
      out.ncf_total = ncf_catalog(k).size();
      out.ncfs = ncf_catalog(k).filter([&](const TruthTable& tt) { return fits(tt, out.data); });
    }
    out.degenerate_fits = degenerate_fits(out.data);
  });
  return res;
}

std::uint64_t count_models(const InferenceResult& res) {
  if (std::any_of(res.nodes.begin(), res.nodes.end(), [](const NodeInference& n) { return n.ncfs.empty(); })) {
    return 0;
  }
  std::uint64_t product = 1;
  for (const auto& n : res.nodes) {
    if (__builtin_mul_overflow(product, static_cast<std::uint64_t>(n.ncfs.size()), &product)) {
      throw CapacityError("model count overflows 64 bits");
    }
  }
  return product;
}

}  // namespace ncfinfer
