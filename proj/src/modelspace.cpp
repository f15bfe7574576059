#include "ncfinfer/modelspace.hpp"

#include <algorithm>

namespace ncfinfer {

namespace {

ArityLimit limit_for(unsigned arity) { return arity > kSoftArityCap ? ArityLimit::hard : ArityLimit::soft; }

}  // namespace

LocalData::LocalData(unsigned arity) : arity_(arity) {
  if (arity > kHardArityCap) throw ArgumentError("local data arity exceeds " + std::to_string(kHardArityCap));
}

LocalData::LocalData(unsigned arity, std::span<const Observation> pairs) : LocalData(arity) {
  for (const auto& p : pairs) add(p.input, p.output);
}

bool LocalData::add(std::uint32_t input, bool output) {
  if ((std::uint64_t{input} >> arity_) != 0) throw ArgumentError("input index out of range for arity");
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), input,
                             [](const Observation& o, std::uint32_t x) { return o.input < x; });
  if (it != pairs_.end() && it->input == input) {
    if (it->output != output) {
      throw InconsistencyError("input " + point_string(input, arity_) + " observed with outputs 0 and 1");
    }
    return false;
  }
  pairs_.insert(it, Observation{input, output});
  return true;
}

bool LocalData::add(std::span<const std::uint8_t> input, bool output) {
  if (input.size() != arity_) throw ArgumentError("input length does not match arity");
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input[i] > 1) throw ArgumentError("input coordinates must be 0 or 1");
    m |= std::uint32_t{input[i]} << i;
  }
  return add(m, output);
}

bool LocalData::seen(std::uint32_t input) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), input,
                             [](const Observation& o, std::uint32_t x) { return o.input < x; });
  return it != pairs_.end() && it->input == input;
}

std::string point_string(std::uint32_t input, unsigned arity) {
  std::string s(arity, '0');
  for (unsigned i = 0; i < arity; ++i) {
    if ((input >> i) & 1u) s[i] = '1';
  }
  return s;
}

TruthTable interpolant(const LocalData& d) {
  TruthTable f(d.arity(), limit_for(d.arity()));
  for (const auto& p : d.pairs()) f.set(p.input, p.output);
  return f;
}

TruthTable ideal_generator(const LocalData& d) {
  TruthTable p = constant(d.arity(), true, limit_for(d.arity()));
  for (const auto& o : d.pairs()) p.set(o.input, false);
  return p;
}

CoeffVector coset_element(const LocalData& d, const CoeffVector& g) {
  if (g.arity() != d.arity()) throw ArgumentError("coset_element: arity of g must match the data");
  return tt_to_anf(interpolant(d) ^ (anf_to_tt(g) & ideal_generator(d)));
}

bool fits(const TruthTable& t, const LocalData& d) {
  if (t.arity() != d.arity()) throw ArgumentError("fits: arity mismatch");
  return std::all_of(d.pairs().begin(), d.pairs().end(),
                     [&](const Observation& o) { return t.get(o.input) == o.output; });
}

std::uint64_t model_space_log2(const LocalData& d) {
  return (std::uint64_t{1} << d.arity()) - d.distinct_inputs();
}

std::uint64_t model_space_size(const LocalData& d) {
  const auto e = model_space_log2(d);
  if (e >= 64) throw CapacityError("model space size 2^" + std::to_string(e) + " does not fit in 64 bits");
  return std::uint64_t{1} << e;
}

ModelSpace::ModelSpace(LocalData data) : data_(std::move(data)), interpolant_(ncfinfer::interpolant(data_)) {
  const std::uint64_t points = std::uint64_t{1} << data_.arity();
  for (std::uint64_t m = 0; m < points; ++m) {
    if (!data_.seen(static_cast<std::uint32_t>(m))) unseen_.push_back(static_cast<std::uint32_t>(m));
  }
}

TruthTable ModelSpace::element(std::uint64_t index) const {
  if (size_log2() >= 64) throw CapacityError("model space too large to index with 64 bits");
  if ((index >> size_log2()) != 0) throw ArgumentError("model space index out of range");
  TruthTable t = interpolant_;
  for (std::size_t j = 0; j < unseen_.size(); ++j) {
    if ((index >> j) & 1u) t.set(unseen_[j], true);
  }
  return t;
}

std::vector<TruthTable> ModelSpace::materialize() const {
  if (size_log2() > 24) {
    throw CapacityError("model space of 2^" + std::to_string(size_log2()) + " functions is too large to list");
  }
  const std::uint64_t n = std::uint64_t{1} << size_log2();
  std::vector<TruthTable> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(element(i));
  return out;
}

}  // namespace ncfinfer
