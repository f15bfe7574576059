#include "ncfinfer/ncf.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <numeric>

#include "ncfinfer/parallel.hpp"

namespace ncfinfer {

namespace {

constexpr unsigned kMaxFormArity = 6;

Permutation identity(unsigned k) {
  Permutation p(k);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

std::uint64_t literal_word(unsigned var, bool value) {
  static constexpr std::uint64_t kVarHigh[6] = {
      0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
      0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull,
  };
  return value ? kVarHigh[var] : ~kVarHigh[var];
}

// Single-word cascade for arity <= 6.
std::uint64_t cascade_word(unsigned k, std::span<const unsigned> sigma, unsigned a, unsigned b) {
  std::uint64_t remaining = TruthTable::low_mask(k);
  std::uint64_t value = 0;
  for (unsigned i = 0; i < k; ++i) {
    const std::uint64_t fire = remaining & literal_word(sigma[i], (a >> i) & 1u);
    if ((b >> i) & 1u) value |= fire;
    remaining &= ~fire;
  }
  if (!((b >> (k - 1)) & 1u)) value |= remaining;
  return value;
}

std::vector<std::uint8_t> bits_of(unsigned word, unsigned k) {
  std::vector<std::uint8_t> v(k);
  for (unsigned i = 0; i < k; ++i) v[i] = (word >> i) & 1u;
  return v;
}

// Function equal to t with variable v fixed to `value`.
TruthTable cofactor(const TruthTable& t, unsigned v, bool value) {
  TruthTable out(t.arity(), t.arity() > kSoftArityCap ? ArityLimit::hard : ArityLimit::soft);
  const std::size_t bit = std::size_t{1} << v;
  for (std::size_t m = 0; m < t.size(); ++m) {
    out.set(m, t.get(value ? (m | bit) : (m & ~bit)));
  }
  return out;
}

std::optional<bool> constant_value(const TruthTable& t) {
  const std::size_t ones = t.count();
  if (ones == 0) return false;
  if (ones == t.size()) return true;
  return std::nullopt;
}

// Forms of t over the variables in `remaining`, t independent of all others.
void collect_forms(const TruthTable& t, VarSet remaining, NcfForm& prefix, std::vector<NcfForm>& out) {
  const unsigned left = static_cast<unsigned>(__builtin_popcount(remaining));
  for (unsigned v = 0; v < t.arity(); ++v) {
    if (!((remaining >> v) & 1u)) continue;
    for (unsigned a = 0; a < 2; ++a) {
      const auto fired = constant_value(cofactor(t, v, a != 0));
      if (!fired) continue;
      const TruthTable rest = cofactor(t, v, a == 0);
      prefix.sigma.push_back(v);
      prefix.a.push_back(static_cast<std::uint8_t>(a));
      prefix.b.push_back(*fired);
      if (left == 1) {
        // Last layer: the other branch must give the complement.
        if (constant_value(rest) == std::optional<bool>(!*fired)) out.push_back(prefix);
      } else {
        collect_forms(rest, remaining & ~(VarSet{1} << v), prefix, out);
      }
      prefix.sigma.pop_back();
      prefix.a.pop_back();
      prefix.b.pop_back();
    }
  }
}

}  // namespace

void validate_permutation(std::span<const unsigned> sigma) {
  std::vector<bool> seen(sigma.size(), false);
  for (auto v : sigma) {
    if (v >= sigma.size() || seen[v]) throw ArgumentError("sigma is not a permutation of 0..k-1");
    seen[v] = true;
  }
}

NcfForm::NcfForm(Permutation sigma_in, std::vector<std::uint8_t> a_in, std::vector<std::uint8_t> b_in)
    : sigma(std::move(sigma_in)), a(std::move(a_in)), b(std::move(b_in)) {
  validate_permutation(sigma);
  if (a.size() != sigma.size() || b.size() != sigma.size()) {
    throw ArgumentError("form vectors a and b must have one entry per layer");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 1 || b[i] > 1) throw ArgumentError("form values must be 0 or 1");
  }
}

TruthTable ncf_from_form(const NcfForm& form) {
  const unsigned k = form.arity();
  if (k == 0) throw ArgumentError("a form needs at least one layer");
  validate_permutation(form.sigma);
  const ArityLimit limit = k > kSoftArityCap ? ArityLimit::hard : ArityLimit::soft;
  TruthTable remaining = constant(k, true, limit);
  TruthTable value(k, limit);
  for (unsigned i = 0; i < k; ++i) {
    TruthTable literal = projection(k, form.sigma[i], limit);
    if (!form.a[i]) literal = ~literal;
    const TruthTable fire = remaining & literal;
    if (form.b[i]) value |= fire;
    remaining &= ~fire;
  }
  if (!form.b[k - 1]) value |= remaining;
  return value;
}

VarSet completion(VarSet s, std::span<const unsigned> sigma) {
  if (s == 0) throw ArgumentError("completion of the empty set is undefined");
  if (sigma.size() < 32 && (s >> sigma.size()) != 0) throw ArgumentError("subset has variables outside sigma");
  VarSet prefix = 0;
  VarSet result = 0;
  for (auto v : sigma) {
    prefix |= VarSet{1} << v;
    if ((s >> v) & 1u) result = prefix;
  }
  return result;
}

bool is_ncf_wrt(const CoeffVector& c, std::span<const unsigned> sigma) {
  const unsigned k = c.arity();
  if (sigma.size() != k) throw ArgumentError("sigma length must equal arity");
  validate_permutation(sigma);
  if (k == 0) return false;
  const VarSet full = (VarSet{1} << k) - 1;
  if (!c.get(full)) return false;

  VarSet cofull = 0;  // bit v set iff c_{[k] \ {v}} = 1
  for (unsigned v = 0; v < k; ++v) {
    if (c.get(full & ~(VarSet{1} << v))) cofull |= VarSet{1} << v;
  }
  for (VarSet s = 1; s < full; ++s) {
    const VarSet closure = completion(s, sigma);
    const VarSet missing = closure & ~s;
    const bool rhs = c.get(closure) && (missing & ~cofull) == 0;
    if (c.get(s) != rhs) return false;
  }
  return true;
}

bool is_ncf(const TruthTable& t) {
  const unsigned k = t.arity();
  if (k == 0) return false;
  const CoeffVector c = tt_to_anf(t);
  if (!c.get((std::size_t{1} << k) - 1)) return false;
  Permutation sigma = identity(k);
  do {
    if (is_ncf_wrt(c, sigma)) return true;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return false;
}

std::vector<NcfForm> ncf_forms_of(const TruthTable& t) {
  std::vector<NcfForm> out;
  if (t.arity() == 0) return out;
  NcfForm prefix;
  collect_forms(t, (VarSet{1} << t.arity()) - 1, prefix, out);
  std::sort(out.begin(), out.end());
  return out;
}

void for_each_form(unsigned k, const std::function<void(const NcfForm&)>& visit) {
  if (k == 0) throw ArgumentError("form arity must be at least 1");
  if (k > kMaxFormArity) throw CapacityError("form enumeration supports arity <= 6");
  Permutation sigma = identity(k);
  do {
    for (unsigned a = 0; a < (1u << k); ++a) {
      for (unsigned b = 0; b < (1u << k); ++b) {
        visit(NcfForm{sigma, bits_of(a, k), bits_of(b, k)});
      }
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

NcfSet NcfSet::from_entries(unsigned arity, std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    if (auto c = x.table <=> y.table; c != 0) return c < 0;
    return x.witness < y.witness;
  });
  auto last = std::unique(entries.begin(), entries.end(),
                          [](const Entry& x, const Entry& y) { return x.table == y.table; });
  entries.erase(last, entries.end());
  NcfSet set(arity);
  set.entries_ = std::move(entries);
  return set;
}

bool NcfSet::contains(const TruthTable& t) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), t,
                             [](const Entry& e, const TruthTable& x) { return e.table < x; });
  return it != entries_.end() && it->table == t;
}

NcfSet NcfSet::filter(const std::function<bool(const TruthTable&)>& keep) const {
  NcfSet out(arity_);
  for (const auto& e : entries_) {
    if (keep(e.table)) out.entries_.push_back(e);
  }
  return out;
}

NcfSet enumerate_ncfs(unsigned k, unsigned threads) {
  if (k == 0) throw ArgumentError("enumerate_ncfs requires k >= 1");
  if (k > kMaxFormArity) throw CapacityError("enumerate_ncfs supports k <= 6");

  std::vector<Permutation> perms;
  Permutation sigma = identity(k);
  do {
    perms.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  // Per permutation: the least (a, b) for each distinct table, where codes
  // compare as the bit vectors a[0..k) and b[0..k) do (bit-reversed).
  struct Hit {
    std::uint64_t table;
    unsigned a, b;
    std::size_t perm;
  };
  const unsigned codes = 1u << k;
  auto reversed = [k](unsigned code) {
    unsigned r = 0;
    for (unsigned i = 0; i < k; ++i) r |= ((code >> i) & 1u) << (k - 1 - i);
    return r;
  };
  auto by_table_then_form = [&](const Hit& x, const Hit& y) {
    if (x.table != y.table) return x.table < y.table;
    if (x.perm != y.perm) return x.perm < y.perm;
    if (x.a != y.a) return reversed(x.a) < reversed(y.a);
    return reversed(x.b) < reversed(y.b);
  };
  auto same_table = [](const Hit& x, const Hit& y) { return x.table == y.table; };

  std::vector<std::vector<Hit>> hits(perms.size());
  parallel_for(perms.size(), threads, [&](std::size_t p) {
    std::vector<Hit> local;
    local.reserve(std::size_t{codes} * codes);
    for (unsigned a = 0; a < codes; ++a) {
      for (unsigned b = 0; b < codes; ++b) local.push_back({cascade_word(k, perms[p], a, b), a, b, p});
    }
    std::sort(local.begin(), local.end(), by_table_then_form);
    local.erase(std::unique(local.begin(), local.end(), same_table), local.end());
    hits[p] = std::move(local);
  });

  std::vector<Hit> merged;
  for (auto& h : hits) merged.insert(merged.end(), h.begin(), h.end());
  std::sort(merged.begin(), merged.end(), by_table_then_form);
  merged.erase(std::unique(merged.begin(), merged.end(), same_table), merged.end());

  std::vector<NcfSet::Entry> entries;
  entries.reserve(merged.size());
  for (const auto& h : merged) {
    entries.push_back({TruthTable::from_integer(k, h.table, ArityLimit::hard),
                       NcfForm{perms[h.perm], bits_of(h.a, k), bits_of(h.b, k)}});
  }
  return NcfSet::from_entries(k, std::move(entries));
}

const NcfSet& ncf_catalog(unsigned k) {
  if (k == 0) throw ArgumentError("ncf_catalog requires k >= 1");
  if (k > kMaxFormArity) throw CapacityError("ncf_catalog supports k <= 6");
  static std::array<std::once_flag, kMaxFormArity + 1> once;
  static std::array<NcfSet, kMaxFormArity + 1> cache;
  std::call_once(once[k], [k] { cache[k] = enumerate_ncfs(k); });
  return cache[k];
}

}  // namespace ncfinfer
