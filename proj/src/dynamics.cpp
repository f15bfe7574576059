#include "ncfinfer/dynamics.hpp"

#include <algorithm>
#include <limits>

#include "ncfinfer/parallel.hpp"
#include "ncfinfer/rng.hpp"

namespace ncfinfer {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

}  // namespace

BooleanNetwork::BooleanNetwork(WiringDiagram wiring, std::vector<TruthTable> locals)
    : wiring_(std::move(wiring)), locals_(std::move(locals)) {
  if (locals_.size() != wiring_.size()) throw ConfigError("one local function per node required");
  for (std::size_t i = 0; i < locals_.size(); ++i) {
    if (locals_[i].arity() != wiring_.in_degree(i)) {
      throw ConfigError("node '" + wiring_.name(i) + "': local function has arity " +
                        std::to_string(locals_[i].arity()) + ", node has " + std::to_string(wiring_.in_degree(i)) +
                        " regulators");
    }
  }
}

std::uint32_t BooleanNetwork::step(std::uint32_t state) const {
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < locals_.size(); ++i) {
    const auto& regs = wiring_.regulators(i);
    std::size_t input = 0;
    for (std::size_t j = 0; j < regs.size(); ++j) input |= std::size_t{(state >> regs[j]) & 1u} << j;
    if (locals_[i].get(input)) next |= std::uint32_t{1} << i;
  }
  return next;
}

std::vector<std::uint8_t> step(const BooleanNetwork& net, std::span<const std::uint8_t> state) {
  if (state.size() != net.size()) {
    throw ArgumentError("state has " + std::to_string(state.size()) + " entries, network has " +
                        std::to_string(net.size()) + " nodes");
  }
  for (auto v : state) {
    if (v > 1) throw ArgumentError("state entries must be 0 or 1");
  }
  const std::uint32_t next = net.step(state_index(state));
  std::vector<std::uint8_t> out(net.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (next >> i) & 1u;
  return out;
}

std::uint64_t PhaseSpace::largest_component_size() const {
  return component_sizes.empty() ? 0 : *std::max_element(component_sizes.begin(), component_sizes.end());
}

PhaseSpace phase_space(const BooleanNetwork& net) {
  if (net.size() > kMaxPhaseSpaceNodes) {
    throw CapacityError("phase space of " + std::to_string(net.size()) + " nodes exceeds the limit of " +
                        std::to_string(kMaxPhaseSpaceNodes));
  }
  PhaseSpace ps;
  ps.nodes = static_cast<unsigned>(net.size());
  const std::uint32_t states = std::uint32_t{1} << ps.nodes;
  ps.successor.resize(states);
  for (std::uint32_t s = 0; s < states; ++s) ps.successor[s] = net.step(s);

  // Walk from each unassigned state until reaching an assigned state or
  // revisiting the current walk, which closes a new cycle.
  ps.component.assign(states, kUnset);
  std::vector<std::uint32_t> walk_mark(states, kUnset);
  std::vector<std::uint32_t> path;
  for (std::uint32_t start = 0; start < states; ++start) {
    if (ps.component[start] != kUnset) continue;
    path.clear();
    std::uint32_t x = start;
    while (ps.component[x] == kUnset && walk_mark[x] != start) {
      walk_mark[x] = start;
      path.push_back(x);
      x = ps.successor[x];
    }
    std::uint32_t id;
    if (ps.component[x] == kUnset) {
      id = static_cast<std::uint32_t>(ps.cycles.size());
      std::vector<std::uint32_t> cycle{x};
      for (std::uint32_t y = ps.successor[x]; y != x; y = ps.successor[y]) cycle.push_back(y);
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      ps.cycles.push_back(std::move(cycle));
      ps.component_sizes.push_back(0);
    } else {
      id = ps.component[x];
    }
    for (auto p : path) ps.component[p] = id;
    ps.component_sizes[id] += path.size();
  }
  return ps;
}

std::vector<std::vector<std::uint32_t>> attractors(const PhaseSpace& ps) { return ps.cycles; }

std::uint64_t trajectory_component_size(const PhaseSpace& ps, std::span<const std::uint32_t> trajectory) {
  if (trajectory.empty()) throw ArgumentError("empty trajectory");
  for (auto s : trajectory) {
    if (s >= ps.component.size()) throw ArgumentError("trajectory state out of range");
  }
  const std::uint32_t id = ps.component[trajectory.front()];
  for (auto s : trajectory) {
    if (ps.component[s] != id) {
      throw InvariantViolation("trajectory spans components " + std::to_string(id) + " and " +
                               std::to_string(ps.component[s]));
    }
  }
  return ps.component_sizes[id];
}

std::string to_string(SampleMode mode) { return mode == SampleMode::ncf ? "ncf" : "unrestricted"; }

SampleMode parse_sample_mode(std::string_view text) {
  if (text == "ncf") return SampleMode::ncf;
  if (text == "unrestricted") return SampleMode::unrestricted;
  throw ArgumentError("unknown sample mode '" + std::string(text) + "' (expected ncf or unrestricted)");
}

EnsembleStats sample_ensemble(const WiringDiagram& w, const InferenceResult& res, const SampleOptions& options) {
  if (options.samples == 0) throw ConfigError("sample count must be positive");
  if (options.trajectory.empty()) throw ConfigError("a trajectory is required");
  if (res.nodes.size() != w.size()) throw ConfigError("inference result must cover every node of the wiring");
  if (w.size() > kMaxPhaseSpaceNodes) {
    throw CapacityError("phase space of " + std::to_string(w.size()) + " nodes exceeds the limit of " +
                        std::to_string(kMaxPhaseSpaceNodes));
  }

  EnsembleStats stats;
  stats.mode = options.mode;
  stats.seed = options.seed;
  stats.sample_count = options.samples;

  // Candidate tables per node. Unrestricted mode indexes the model space
  // lazily instead of listing up to 2^32 functions.
  std::vector<std::vector<TruthTable>> candidates(w.size());
  std::vector<ModelSpace> spaces;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const NodeInference& node = res.nodes[i];
    if (node.node != i || node.regulators != w.regulators(i)) {
      throw ConfigError("inference result does not match the wiring at node '" + w.name(i) + "'");
    }
    if (options.mode == SampleMode::ncf) {
      for (const auto& e : node.ncfs) candidates[i].push_back(e.table);
      if (candidates[i].empty() && options.degenerate_fallback && !node.degenerate_fits.empty()) {
        candidates[i] = node.degenerate_fits;
        stats.fallback_nodes.push_back(node.name);
      }
      if (candidates[i].empty()) {
        throw ConfigError("node '" + node.name + "' has no nested canalyzing candidates");
      }
    } else {
      spaces.emplace_back(node.data);
      if (spaces.back().size_log2() >= 64) {
        throw CapacityError("node '" + node.name + "': model space too large to sample");
      }
    }
  }

  const unsigned n = static_cast<unsigned>(w.size());
  const std::uint64_t states = std::uint64_t{1} << n;
  stats.bin_width = std::max<std::uint64_t>(1, states / 32);
  stats.histogram.assign(states / stats.bin_width, 0);
  stats.trajectory_component_sizes.resize(options.samples);
  stats.component_counts.resize(options.samples);
  std::vector<std::uint8_t> in_largest(options.samples);

  parallel_for(options.samples, options.threads, [&](std::size_t s) {
    Engine engine(derive_seed(options.seed, s));
    std::vector<TruthTable> locals;
    locals.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (options.mode == SampleMode::ncf) {
        locals.push_back(candidates[i][uniform_below(engine, candidates[i].size())]);
      } else {
        const auto& space = spaces[i];
        locals.push_back(space.element(uniform_below(engine, std::uint64_t{1} << space.size_log2())));
      }
    }
    const PhaseSpace ps = phase_space(BooleanNetwork(w, std::move(locals)));
    const std::uint64_t size = trajectory_component_size(ps, options.trajectory);
    stats.trajectory_component_sizes[s] = size;
    stats.component_counts[s] = ps.component_count();
    in_largest[s] = size == ps.largest_component_size();
  });

  std::uint64_t component_total = 0, size_total = 0, not_largest_total = 0;
  for (std::size_t s = 0; s < options.samples; ++s) {
    const std::uint64_t size = stats.trajectory_component_sizes[s];
    component_total += stats.component_counts[s];
    size_total += size;
    if (!in_largest[s]) {
      ++stats.count_trajectory_not_in_largest;
      not_largest_total += size;
    }
    stats.histogram[std::min<std::uint64_t>(size / stats.bin_width, stats.histogram.size() - 1)]++;
  }
  const double m = static_cast<double>(options.samples);
  stats.mean_components = static_cast<double>(component_total) / m;
  stats.mean_trajectory_component_size = static_cast<double>(size_total) / m;
  if (stats.count_trajectory_not_in_largest > 0) {
    stats.mean_size_when_not_largest =
        static_cast<double>(not_largest_total) / static_cast<double>(stats.count_trajectory_not_in_largest);
  }
  return stats;
}

}  // namespace ncfinfer
