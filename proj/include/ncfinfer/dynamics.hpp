#pragma once

// Synchronous phase-space analysis and ensemble statistics.
//
// A global state is an integer whose bit i is node i. A component is a
// weakly connected component of the successor graph; each holds exactly one
// attractor cycle and equals that attractor's basin.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ncfinfer/infer.hpp"

namespace ncfinfer {

inline constexpr unsigned kMaxPhaseSpaceNodes = 24;

class BooleanNetwork {
 public:
  /// Throws ConfigError unless locals[i].arity() == in_degree(i) for all i.
  BooleanNetwork(WiringDiagram wiring, std::vector<TruthTable> locals);

  std::size_t size() const noexcept { return wiring_.size(); }
  const WiringDiagram& wiring() const noexcept { return wiring_; }
  const TruthTable& local(std::size_t i) const { return locals_.at(i); }

  std::uint32_t step(std::uint32_t state) const;

 private:
  WiringDiagram wiring_;
  std::vector<TruthTable> locals_;
};

/// Synchronous update of a state given as 0/1 values in node order.
std::vector<std::uint8_t> step(const BooleanNetwork& net, std::span<const std::uint8_t> state);

struct PhaseSpace {
  unsigned nodes = 0;
  std::vector<std::uint32_t> successor;
  std::vector<std::uint32_t> component;  // component id of each state
  std::vector<std::uint64_t> component_sizes;
  /// Attractor of each component, starting at its least state and listed in
  /// update order.
  std::vector<std::vector<std::uint32_t>> cycles;

  std::size_t component_count() const noexcept { return component_sizes.size(); }
  std::uint64_t largest_component_size() const;
};

/// Components are numbered in order of their least state. Throws
/// CapacityError for networks with more than kMaxPhaseSpaceNodes nodes.
PhaseSpace phase_space(const BooleanNetwork& net);

std::vector<std::vector<std::uint32_t>> attractors(const PhaseSpace& ps);

/// Size of the component holding the trajectory. Throws InvariantViolation
/// if the states span more than one component, ArgumentError on an empty
/// trajectory or an out-of-range state.
std::uint64_t trajectory_component_size(const PhaseSpace& ps, std::span<const std::uint32_t> trajectory);

enum class SampleMode { ncf, unrestricted };

std::string to_string(SampleMode mode);
SampleMode parse_sample_mode(std::string_view text);

struct SampleOptions {
  std::uint64_t samples = 2000;
  std::uint64_t seed = 1;
  SampleMode mode = SampleMode::ncf;
  /// States whose component is tracked, usually the observed time course.
  std::vector<std::uint32_t> trajectory;
  /// In ncf mode, a node without NCFs draws from its degenerate fits
  /// (functions nested canalyzing in a subset of its regulators) instead of
  /// failing.
  bool degenerate_fallback = false;
  unsigned threads = 0;
};

struct EnsembleStats {
  SampleMode mode = SampleMode::ncf;
  std::uint64_t seed = 0;
  std::uint64_t sample_count = 0;
  double mean_components = 0;
  double mean_trajectory_component_size = 0;
  std::uint64_t count_trajectory_not_in_largest = 0;
  /// Mean trajectory-component size over the samples counted above; 0 when
  /// there are none.
  double mean_size_when_not_largest = 0;
  /// Histogram of trajectory-component sizes: 32 bins of width 2^n / 32
  /// (width 1 for n < 5); the maximum size 2^n falls in the last bin.
  std::uint64_t bin_width = 1;
  std::vector<std::uint64_t> histogram;
  std::vector<std::uint64_t> trajectory_component_sizes;
  std::vector<std::uint64_t> component_counts;
  /// Nodes that used the degenerate fallback.
  std::vector<std::string> fallback_nodes;
};

/// Draws `samples` networks, choosing each node's local function uniformly
/// and independently from its candidates (the fitting NCFs, or the whole
/// model space), and aggregates phase-space statistics. Sample i uses an
/// engine seeded with derive_seed(seed, i), so output is independent of the
/// thread count. Throws ConfigError if a node has no candidates.
EnsembleStats sample_ensemble(const WiringDiagram& w, const InferenceResult& res, const SampleOptions& options);

}  // namespace ncfinfer
