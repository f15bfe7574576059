#pragma once

// Nested canalyzing functions (NCFs).
//
// A form (sigma, a, b) of arity k evaluates as a cascade: the value is b[i]
// for the least layer i with x_{sigma[i]} == a[i], and !b[k-1] when no layer
// fires. Variables are 0-based, so sigma is a permutation of {0, ..., k-1}.

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ncfinfer/boolfun.hpp"

namespace ncfinfer {

/// Permutation of {0..k-1}; entry i is the variable tested at layer i.
using Permutation = std::vector<unsigned>;

struct NcfForm {
  Permutation sigma;
  std::vector<std::uint8_t> a;  // canalyzing input per layer
  std::vector<std::uint8_t> b;  // canalyzed output per layer

  NcfForm() = default;
  /// Throws ArgumentError unless sigma is a bijection and a, b match its length.
  NcfForm(Permutation sigma, std::vector<std::uint8_t> a, std::vector<std::uint8_t> b);

  unsigned arity() const noexcept { return static_cast<unsigned>(sigma.size()); }

  friend auto operator<=>(const NcfForm&, const NcfForm&) = default;
};

void validate_permutation(std::span<const unsigned> sigma);

TruthTable ncf_from_form(const NcfForm& form);

/// The sigma-prefix ending at the sigma-latest member of `s`.
/// Throws ArgumentError for an empty set or a member outside sigma's range.
VarSet completion(VarSet s, std::span<const unsigned> sigma);

/// Coefficient criterion: c_{[k]} = 1 and, for every nonempty proper subset
/// S, c_S equals c of the completion of S times the product of
/// c_{[k] \ {v}} over the variables v in completion(S) \ S.
bool is_ncf_wrt(const CoeffVector& c, std::span<const unsigned> sigma);

/// True iff the function is nested canalyzing for some variable order.
/// Arity 0 is never nested canalyzing.
bool is_ncf(const TruthTable& t);

/// Every form generating `t`, in ascending form order. Empty iff !is_ncf(t).
std::vector<NcfForm> ncf_forms_of(const TruthTable& t);

/// Calls `visit` for each of the k! * 2^k * 2^k forms of arity k.
/// Requires 1 <= k <= 6.
void for_each_form(unsigned k, const std::function<void(const NcfForm&)>& visit);

/// Deduplicated NCFs of one arity, ascending by truth-table value, each with
/// its least generating form as a witness.
class NcfSet {
 public:
  struct Entry {
    TruthTable table;
    NcfForm witness;
  };

  explicit NcfSet(unsigned arity = 0) : arity_(arity) {}

  /// Sorts and deduplicates; for repeated tables the least form is kept.
  static NcfSet from_entries(unsigned arity, std::vector<Entry> entries);

  unsigned arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  bool contains(const TruthTable& t) const;

  /// Members for which `keep` holds, preserving order.
  NcfSet filter(const std::function<bool(const TruthTable&)>& keep) const;

  friend bool operator==(const NcfSet& x, const NcfSet& y) {
    if (x.arity_ != y.arity_ || x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x.entries_[i].table != y.entries_[i].table) return false;
    }
    return true;
  }

 private:
  unsigned arity_;
  std::vector<Entry> entries_;
};

/// All NCFs of arity k (each depends on all k variables). Generated from
/// every form and deduplicated; parallel across permutations with a
/// deterministic merge. Throws ArgumentError for k == 0, CapacityError for k > 6.
NcfSet enumerate_ncfs(unsigned k, unsigned threads = 0);

/// Process-wide cached `enumerate_ncfs(k)`; safe to call concurrently.
const NcfSet& ncf_catalog(unsigned k);

}  // namespace ncfinfer
