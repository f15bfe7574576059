#include "ncfinfer/boolfun.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace ncfinfer {

namespace {

// Positions whose bit i is 0, for the in-word variables i < 6.
constexpr std::uint64_t kVarLow[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
};

ArityLimit limit_for(unsigned arity) { return arity > kSoftArityCap ? ArityLimit::hard : ArityLimit::soft; }

// In-place Moebius transform; it is its own inverse over F2.
void moebius(std::span<std::uint64_t> words, unsigned arity) {
  for (unsigned i = 0; i < std::min(arity, 6u); ++i) {
    const unsigned shift = 1u << i;
    for (auto& w : words) w ^= (w & kVarLow[i]) << shift;
  }
  for (unsigned i = 6; i < arity; ++i) {
    const std::size_t stride = std::size_t{1} << (i - 6);
    for (std::size_t base = 0; base < words.size(); base += 2 * stride) {
      for (std::size_t j = base; j < base + stride; ++j) words[j + stride] ^= words[j];
    }
  }
}

}  // namespace

CoeffVector tt_to_anf(const TruthTable& t) {
  CoeffVector c(t.arity(), limit_for(t.arity()));
  std::copy(t.words().begin(), t.words().end(), c.words().begin());
  moebius(c.words(), t.arity());
  return c;
}

TruthTable anf_to_tt(const CoeffVector& c) {
  TruthTable t(c.arity(), limit_for(c.arity()));
  std::copy(c.words().begin(), c.words().end(), t.words().begin());
  moebius(t.words(), c.arity());
  return t;
}

bool eval(const TruthTable& t, std::span<const std::uint8_t> point) {
  if (point.size() != t.arity()) {
    throw ArgumentError("point has " + std::to_string(point.size()) + " coordinates, function has arity " +
                        std::to_string(t.arity()));
  }
  std::size_t m = 0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (point[i] > 1) throw ArgumentError("point coordinates must be 0 or 1");
    m |= std::size_t{point[i]} << i;
  }
  return t.get(m);
}

VarSet essential_vars(const TruthTable& t) {
  VarSet out = 0;
  const auto words = t.words();
  for (unsigned i = 0; i < t.arity(); ++i) {
    bool essential = false;
    if (i < 6) {
      const unsigned shift = 1u << i;
      for (auto w : words) {
        if (((w ^ (w >> shift)) & kVarLow[i]) != 0) {
          essential = true;
          break;
        }
      }
    } else {
      const std::size_t stride = std::size_t{1} << (i - 6);
      for (std::size_t base = 0; base < words.size() && !essential; base += 2 * stride) {
        for (std::size_t j = base; j < base + stride; ++j) {
          if (words[j] != words[j + stride]) {
            essential = true;
            break;
          }
        }
      }
    }
    if (essential) out |= VarSet{1} << i;
  }
  return out;
}

TruthTable constant(unsigned arity, bool value, ArityLimit limit) {
  TruthTable t(arity, limit);
  return value ? ~t : t;
}

TruthTable projection(unsigned arity, unsigned var, ArityLimit limit) {
  if (var >= arity) throw ArgumentError("projection variable out of range");
  TruthTable t(arity, limit);
  for (std::size_t m = 0; m < t.size(); ++m) t.set(m, (m >> var) & 1u);
  return t;
}

TruthTable embed(const TruthTable& t, unsigned arity, std::span<const unsigned> positions) {
  if (positions.size() != t.arity()) throw ArgumentError("embed: one position per input required");
  TruthTable out(arity, limit_for(arity));
  for (auto p : positions) {
    if (p >= arity) throw ArgumentError("embed: position out of range");
  }
  for (std::size_t m = 0; m < out.size(); ++m) {
    std::size_t inner = 0;
    for (std::size_t j = 0; j < positions.size(); ++j) inner |= ((m >> positions[j]) & 1u) << j;
    out.set(m, t.get(inner));
  }
  return out;
}

std::string to_anf_string(const CoeffVector& c) {
  std::vector<std::size_t> monomials;
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (c.get(m)) monomials.push_back(m);
  }
  if (monomials.empty()) return "0";
  // Degree first, then compare sorted variable lists.
  std::sort(monomials.begin(), monomials.end(), [](std::size_t a, std::size_t b) {
    const int da = __builtin_popcountll(a), db = __builtin_popcountll(b);
    if (da != db) return da < db;
    while (a != 0 && b != 0) {
      const int la = __builtin_ctzll(a), lb = __builtin_ctzll(b);
      if (la != lb) return la < lb;
      a &= a - 1;
      b &= b - 1;
    }
    return false;
  });
  std::string out;
  for (std::size_t k = 0; k < monomials.size(); ++k) {
    if (k != 0) out += '+';
    const std::size_t m = monomials[k];
    if (m == 0) {
      out += '1';
      continue;
    }
    bool first = true;
    for (unsigned i = 0; i < c.arity(); ++i) {
      if ((m >> i) & 1u) {
        if (!first) out += '*';
        out += 'x';
        out += std::to_string(i + 1);
        first = false;
      }
    }
  }
  return out;
}

CoeffVector parse_anf(std::string_view text, unsigned arity) {
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  }
  if (compact.empty()) throw ParseError("empty polynomial");
  CoeffVector c(arity, limit_for(arity));
  auto fail = [&](const std::string& why) { throw ParseError("polynomial '" + std::string(text) + "': " + why); };

  std::size_t pos = 0;
  while (true) {
    // One monomial: factors joined by '*'.
    std::size_t mask = 0;
    bool zero = false;
    while (true) {
      if (pos >= compact.size()) fail("unexpected end");
      if (compact[pos] == '0' || compact[pos] == '1') {
        zero = zero || compact[pos] == '0';
        ++pos;
      } else if (compact[pos] == 'x') {
        ++pos;
        unsigned var = 0;
        auto [end, ec] = std::from_chars(compact.data() + pos, compact.data() + compact.size(), var);
        if (ec != std::errc{} || end == compact.data() + pos) fail("expected variable number after 'x'");
        pos = static_cast<std::size_t>(end - compact.data());
        if (var == 0 || var > arity) fail("variable x" + std::to_string(var) + " out of range 1.." + std::to_string(arity));
        mask |= std::size_t{1} << (var - 1);
      } else {
        fail(std::string("unexpected character '") + compact[pos] + "'");
      }
      if (pos < compact.size() && compact[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!zero) c.set(mask, !c.get(mask));
    if (pos == compact.size()) break;
    if (compact[pos] != '+') fail(std::string("unexpected character '") + compact[pos] + "'");
    ++pos;
  }
  return c;
}

std::string to_bit_string(const TruthTable& t) {
  std::string s(t.size(), '0');
  for (std::size_t m = 0; m < t.size(); ++m) {
    if (t.get(m)) s[m] = '1';
  }
  return s;
}

}  // namespace ncfinfer
