#pragma once

// Per-node inference of every nested canalyzing function that fits a time
// course on a fixed wiring diagram.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ncfinfer/modelspace.hpp"
#include "ncfinfer/ncf.hpp"

namespace ncfinfer {

/// Directed regulator -> target graph. Node order fixes state bit order;
/// each regulator list fixes the input order of that node's local function.
class WiringDiagram {
 public:
  WiringDiagram() = default;
  /// Throws ConfigError on duplicate names, invalid or repeated regulators,
  /// or an in-degree above `max_in_degree`.
  WiringDiagram(std::vector<std::string> nodes, std::vector<std::vector<std::size_t>> regulators,
                unsigned max_in_degree = kSoftArityCap);

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  const std::string& name(std::size_t i) const { return nodes_.at(i); }
  const std::vector<std::size_t>& regulators(std::size_t i) const { return regulators_.at(i); }
  unsigned in_degree(std::size_t i) const { return static_cast<unsigned>(regulators_.at(i).size()); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const WiringDiagram&, const WiringDiagram&) = default;

 private:
  std::vector<std::string> nodes_;
  std::vector<std::vector<std::size_t>> regulators_;
};

/// Consecutive global states; rows r and r+1 form one transition.
class TimeCourse {
 public:
  TimeCourse() = default;
  /// Throws ConfigError on duplicate names, ragged or non-binary rows, or
  /// fewer than two rows.
  TimeCourse(std::vector<std::string> nodes, std::vector<std::vector<std::uint8_t>> rows);

  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  const std::vector<std::vector<std::uint8_t>>& rows() const noexcept { return rows_; }
  std::size_t transitions() const noexcept { return rows_.size() - 1; }

  /// Same data with columns in wiring order. Throws ConfigError unless the
  /// node name sets agree.
  TimeCourse aligned_to(const WiringDiagram& w) const;

  friend bool operator==(const TimeCourse&, const TimeCourse&) = default;

 private:
  std::vector<std::string> nodes_;
  std::vector<std::vector<std::uint8_t>> rows_;
};

/// Packs a global state; node i is bit i.
std::uint32_t state_index(std::span<const std::uint8_t> row);

/// (state restricted to regulators(i), next state of i) for every transition
/// of every course. Courses are not joined end to end. Throws
/// InconsistencyError naming the node, the input pattern and both rows.
LocalData local_data(const WiringDiagram& w, std::span<const TimeCourse> courses, std::size_t node);

/// Enumerated NCFs of arity in_degree(node) that fit the node's data. Empty
/// for a node without regulators.
NcfSet infer_ncfs(const WiringDiagram& w, std::span<const TimeCourse> courses, std::size_t node);

/// Form-first route: evaluate every form, keep the fitting tables, dedupe.
NcfSet infer_ncfs_from_forms(const WiringDiagram& w, std::span<const TimeCourse> courses, std::size_t node);

/// True iff both routes return the same set.
bool cross_check(const WiringDiagram& w, std::span<const TimeCourse> courses, std::size_t node);

struct NodeInference {
  std::size_t node = 0;
  std::string name;
  std::vector<std::size_t> regulators;
  LocalData data;
  std::uint64_t space_log2 = 0;
  /// Number of NCFs of this arity before fitting.
  std::size_t ncf_total = 0;
  NcfSet ncfs;
  /// Fitting functions that are nested canalyzing in a proper subset of the
  /// regulators, constants included, ascending. Excluded from `ncfs`;
  /// reported so near-misses are visible.
  std::vector<TruthTable> degenerate_fits;
};

struct InferenceResult {
  std::vector<NodeInference> nodes;
};

struct InferOptions {
  unsigned threads = 0;  // 0: default_threads()
  std::optional<std::size_t> only_node;
};

InferenceResult infer(const WiringDiagram& w, std::span<const TimeCourse> courses, const InferOptions& options = {});

/// Fitting functions nested canalyzing in a proper subset of the inputs.
std::vector<TruthTable> degenerate_fits(const LocalData& data);

/// Product of per-node NCF counts. Throws CapacityError on 64-bit overflow.
std::uint64_t count_models(const InferenceResult& res);

}  // namespace ncfinfer
