#pragma once

// The space of Boolean functions agreeing with observed input/output pairs
// for one node: the interpolant plus every multiple of the polynomial that
// vanishes on the observed inputs.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ncfinfer/boolfun.hpp"

namespace ncfinfer {

struct Observation {
  std::uint32_t input;  // point index, x_{i+1} = bit i
  bool output;

  friend auto operator<=>(const Observation&, const Observation&) = default;
};

/// Observations restricted to one node's regulators. Duplicates collapse;
/// contradictory pairs are rejected.
class LocalData {
 public:
  explicit LocalData(unsigned arity = 0);

  /// Throws InconsistencyError naming the clashing input.
  LocalData(unsigned arity, std::span<const Observation> pairs);

  /// Adds one pair; returns false if it was already present.
  /// Throws InconsistencyError if the input was seen with the other output.
  bool add(std::uint32_t input, bool output);
  bool add(std::span<const std::uint8_t> input, bool output);

  unsigned arity() const noexcept { return arity_; }
  /// Distinct observations, ascending by input.
  std::span<const Observation> pairs() const noexcept { return pairs_; }
  std::size_t distinct_inputs() const noexcept { return pairs_.size(); }
  bool seen(std::uint32_t input) const;

  friend bool operator==(const LocalData&, const LocalData&) = default;

 private:
  unsigned arity_;
  std::vector<Observation> pairs_;
};

/// Point string such as "01101" (x_1 first).
std::string point_string(std::uint32_t input, unsigned arity);

/// Fits every pair and is 0 on every unseen input.
TruthTable interpolant(const LocalData& d);

/// 0 on every seen input, 1 on every unseen input.
TruthTable ideal_generator(const LocalData& d);

/// ANF of f + g * p, where f is the interpolant and p the ideal generator.
CoeffVector coset_element(const LocalData& d, const CoeffVector& g);

bool fits(const TruthTable& t, const LocalData& d);

/// log2 of the number of fitting functions: 2^arity - distinct inputs.
std::uint64_t model_space_log2(const LocalData& d);

/// 2^(2^arity - distinct inputs). Throws CapacityError if that exceeds 2^63.
std::uint64_t model_space_size(const LocalData& d);

/// Indexable view of every function fitting `d`. Element i assigns bit j of
/// i to the j-th unseen input (ascending); element 0 is the interpolant.
class ModelSpace {
 public:
  explicit ModelSpace(LocalData data);

  unsigned arity() const noexcept { return data_.arity(); }
  const LocalData& data() const noexcept { return data_; }
  const TruthTable& interpolant() const noexcept { return interpolant_; }
  std::span<const std::uint32_t> unseen() const noexcept { return unseen_; }
  std::uint64_t size_log2() const noexcept { return unseen_.size(); }

  /// Requires size_log2() < 64 and index < 2^size_log2().
  TruthTable element(std::uint64_t index) const;

  /// All elements in index order. Throws CapacityError above 2^24 elements.
  std::vector<TruthTable> materialize() const;

 private:
  LocalData data_;
  TruthTable interpolant_;
  std::vector<std::uint32_t> unseen_;
};

}  // namespace ncfinfer
