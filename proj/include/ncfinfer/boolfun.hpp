#pragma once

// Boolean functions on a small number of ordered inputs.
//
// Index convention (shared by truth tables and ANF coefficient vectors):
// variable x_{i+1} is bit i of an index. For a truth table, position m holds
// the value at the point whose coordinates are the bits of m; for an ANF
// vector, position m holds the coefficient of the monomial whose variable set
// has characteristic vector m. Variables are 0-based in this API (index i is
// x_{i+1} in printed form).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncfinfer/errors.hpp"

namespace ncfinfer {

inline constexpr unsigned kSoftArityCap = 5;
inline constexpr unsigned kHardArityCap = 16;

/// Bit mask over variables: bit i set means variable i is in the set.
using VarSet = std::uint32_t;

enum class ArityLimit { soft, hard };

namespace detail {

/// Packed 2^arity bit vector. Wrapped by the strong types below.
template <class Tag>
class BitTable {
 public:
  BitTable() : BitTable(0) {}

  explicit BitTable(unsigned arity, ArityLimit limit = ArityLimit::soft) : arity_(arity) {
    const unsigned cap = limit == ArityLimit::soft ? kSoftArityCap : kHardArityCap;
    if (arity > cap) {
      throw ArgumentError("arity " + std::to_string(arity) + " exceeds cap " + std::to_string(cap) +
                          (limit == ArityLimit::soft ? " (use ArityLimit::hard to lift the soft cap)" : ""));
    }
    words_.assign(word_count(arity), 0);
  }

  /// Builds from explicit 0/1 values in index order.
  static BitTable from_values(unsigned arity, std::span<const std::uint8_t> values,
                              ArityLimit limit = ArityLimit::soft) {
    BitTable t(arity, limit);
    if (values.size() != t.size()) {
      throw ArgumentError("expected " + std::to_string(t.size()) + " values, got " +
                          std::to_string(values.size()));
    }
    for (std::size_t m = 0; m < values.size(); ++m) {
      if (values[m] > 1) throw ArgumentError("values must be 0 or 1");
      t.set(m, values[m] != 0);
    }
    return t;
  }

  static BitTable from_values(unsigned arity, std::initializer_list<std::uint8_t> values) {
    return from_values(arity, std::span<const std::uint8_t>(values.begin(), values.size()));
  }

  /// Builds from the integer whose bit m is position m. Requires arity <= 6.
  static BitTable from_integer(unsigned arity, std::uint64_t bits, ArityLimit limit = ArityLimit::soft) {
    if (arity > 6) throw ArgumentError("from_integer requires arity <= 6");
    BitTable t(arity, limit);
    t.words_[0] = bits & low_mask(arity);
    if (t.words_[0] != bits) throw ArgumentError("integer has bits beyond 2^arity positions");
    return t;
  }

  unsigned arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return std::size_t{1} << arity_; }

  bool get(std::size_t m) const { return (words_[m >> 6] >> (m & 63)) & 1u; }
  bool operator[](std::size_t m) const { return get(m); }

  void set(std::size_t m, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (m & 63);
    if (v) {
      words_[m >> 6] |= bit;
    } else {
      words_[m >> 6] &= ~bit;
    }
  }

  /// Integer value (bit m = position m); only for arity <= 6.
  std::uint64_t to_integer() const {
    if (arity_ > 6) throw ArgumentError("to_integer requires arity <= 6");
    return words_[0];
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  BitTable& operator^=(const BitTable& o) { return combine(o, [](auto a, auto b) { return a ^ b; }); }
  BitTable& operator&=(const BitTable& o) { return combine(o, [](auto a, auto b) { return a & b; }); }
  BitTable& operator|=(const BitTable& o) { return combine(o, [](auto a, auto b) { return a | b; }); }
  friend BitTable operator^(BitTable a, const BitTable& b) { return a ^= b; }
  friend BitTable operator&(BitTable a, const BitTable& b) { return a &= b; }
  friend BitTable operator|(BitTable a, const BitTable& b) { return a |= b; }
  friend BitTable operator~(BitTable a) {
    for (auto& w : a.words_) w = ~w;
    a.words_.back() &= low_mask(a.arity_);
    return a;
  }

  friend bool operator==(const BitTable&, const BitTable&) = default;

  /// Orders by arity, then by integer value (most significant word first).
  friend std::strong_ordering operator<=>(const BitTable& a, const BitTable& b) {
    if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  static constexpr std::uint64_t low_mask(unsigned arity) {
    return arity >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::size_t{1} << arity)) - 1;
  }

 private:
  static std::size_t word_count(unsigned arity) { return arity <= 6 ? 1 : std::size_t{1} << (arity - 6); }

  template <class Op>
  BitTable& combine(const BitTable& o, Op op) {
    if (o.arity_ != arity_) throw ArgumentError("arity mismatch in bitwise operation");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] = op(words_[i], o.words_[i]);
    return *this;
  }

  unsigned arity_ = 0;
  std::vector<std::uint64_t> words_;
};

struct TruthTableTag {};
struct CoeffVectorTag {};

}  // namespace detail

/// Value vector of a Boolean function on `arity` ordered inputs.
using TruthTable = detail::BitTable<detail::TruthTableTag>;
/// Algebraic normal form coefficients c_S, indexed by the subset mask S.
using CoeffVector = detail::BitTable<detail::CoeffVectorTag>;

/// Subset Moebius transform over F2: returns the ANF coefficients of `t`.
CoeffVector tt_to_anf(const TruthTable& t);

/// Evaluates the polynomial with coefficients `c` at every point.
TruthTable anf_to_tt(const CoeffVector& c);

/// Value at a point given as 0/1 coordinates (x_1 first).
bool eval(const TruthTable& t, std::span<const std::uint8_t> point);

/// Variables whose flip changes the value at some point.
VarSet essential_vars(const TruthTable& t);

inline bool depends_on_all(const TruthTable& t) {
  return essential_vars(t) == (t.arity() == 0 ? 0u : (VarSet{1} << t.arity()) - 1);
}

TruthTable constant(unsigned arity, bool value, ArityLimit limit = ArityLimit::soft);

/// Projection x_{var+1} as a function of `arity` inputs.
TruthTable projection(unsigned arity, unsigned var, ArityLimit limit = ArityLimit::soft);

/// Re-expresses `t` as a function of `arity` inputs, mapping its input j to
/// variable `positions[j]`. The result ignores the other variables.
TruthTable embed(const TruthTable& t, unsigned arity, std::span<const unsigned> positions);

/// Renders ANF as "+"-joined monomials such as "1+x1+x2*x3". Monomials are
/// ordered by degree, then lexicographically by variable number; the zero
/// polynomial prints as "0".
std::string to_anf_string(const CoeffVector& c);

inline std::string to_anf_string(const TruthTable& t) { return to_anf_string(tt_to_anf(t)); }

/// Parses the format produced by `to_anf_string`. Whitespace is ignored and
/// repeated monomials cancel. Variable numbers must not exceed `arity`.
CoeffVector parse_anf(std::string_view text, unsigned arity);

/// Truth-table bits as a '0'/'1' string in index order.
std::string to_bit_string(const TruthTable& t);

}  // namespace ncfinfer
