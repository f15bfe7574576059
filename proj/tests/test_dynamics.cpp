#include <doctest.h>

#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "ncfinfer/dynamics.hpp"
#include "ncfinfer/io.hpp"
#include "ncfinfer/rng.hpp"

using namespace ncfinfer;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Node i reads only itself.
BooleanNetwork self_network(unsigned n, const TruthTable& local) {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> regs;
  for (unsigned i = 0; i < n; ++i) {
    names.push_back("n" + std::to_string(i));
    regs.push_back({i});
  }
  return BooleanNetwork(WiringDiagram(names, regs), std::vector<TruthTable>(n, local));
}

BooleanNetwork random_network(std::mt19937_64& rng, unsigned n) {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> regs(n);
  std::vector<TruthTable> locals;
  for (unsigned i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
  for (auto& r : regs) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(1 + rng() % std::min(3u, n));
    r = pool;
    locals.push_back(TruthTable::from_integer(static_cast<unsigned>(r.size()),
                                              rng() & ((std::uint64_t{1} << (1u << r.size())) - 1)));
  }
  return BooleanNetwork(WiringDiagram(names, regs), locals);
}

// Components by union-find over the edges m -> successor(m).
std::vector<std::uint64_t> component_sizes_by_union_find(const BooleanNetwork& net, unsigned n) {
  std::vector<std::uint32_t> parent(std::size_t{1} << n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint32_t m = 0; m < parent.size(); ++m) parent[find(m)] = find(net.step(m));
  std::map<std::uint32_t, std::uint64_t> sizes;
  for (std::uint32_t m = 0; m < parent.size(); ++m) sizes[find(m)]++;
  std::multiset<std::uint64_t> sorted;
  for (auto [root, size] : sizes) sorted.insert(size);
  return {sorted.begin(), sorted.end()};
}

struct Yeast {
  WiringDiagram wiring = parse_wiring(slurp(NCFINFER_DATA_DIR "/yeast/wiring.json"));
  std::vector<TimeCourse> courses{parse_timecourse(slurp(NCFINFER_DATA_DIR "/yeast/timecourse.csv"))};
  InferenceResult res = infer(wiring, courses);

  std::vector<std::uint32_t> trajectory() const {
    std::vector<std::uint32_t> out;
    for (const auto& row : courses[0].rows()) out.push_back(state_index(row));
    return out;
  }
};

const Yeast& yeast() {
  static const Yeast y;
  return y;
}

}  // namespace

TEST_CASE("identity network: every state is a fixed point") {
  const auto ps = phase_space(self_network(3, projection(1, 0)));
  CHECK(ps.component_count() == 8);
  CHECK(ps.largest_component_size() == 1);
  for (std::uint32_t m = 0; m < 8; ++m) {
    CHECK(ps.successor[m] == m);
    CHECK(ps.cycles[ps.component[m]] == std::vector<std::uint32_t>{m});
  }
}

TEST_CASE("constant-0 network collapses to the zero state") {
  const auto ps = phase_space(self_network(3, constant(1, false)));
  REQUIRE(ps.component_count() == 1);
  CHECK(ps.component_sizes[0] == 8);
  CHECK(ps.cycles[0] == std::vector<std::uint32_t>{0});
}

TEST_CASE("negation network has two-cycles") {
  const auto net = self_network(2, TruthTable::from_values(1, {1, 0}));
  const auto ps = phase_space(net);
  REQUIRE(ps.component_count() == 2);
  CHECK(ps.cycles[0] == std::vector<std::uint32_t>{0b00, 0b11});
  CHECK(ps.cycles[1] == std::vector<std::uint32_t>{0b01, 0b10});
  CHECK(attractors(ps) == ps.cycles);

  const std::uint8_t s[] = {1, 0};
  CHECK(step(net, s) == std::vector<std::uint8_t>{0, 1});
}

TEST_CASE("two-node swap network") {
  // A' = B, B' = A: fixed points 00, 11 and the cycle 01 <-> 10.
  const BooleanNetwork net(WiringDiagram({"A", "B"}, {{1}, {0}}), {projection(1, 0), projection(1, 0)});
  const auto ps = phase_space(net);
  REQUIRE(ps.component_count() == 3);
  CHECK(ps.cycles[0] == std::vector<std::uint32_t>{0b00});
  CHECK(ps.cycles[1] == std::vector<std::uint32_t>{0b01, 0b10});
  CHECK(ps.cycles[2] == std::vector<std::uint32_t>{0b11});
}

TEST_CASE("phase space invariants on random networks") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 60; ++rep) {
    const unsigned n = 1 + rng() % 8;
    const auto net = random_network(rng, n);
    const auto ps = phase_space(net);
    const std::size_t states = std::size_t{1} << n;

    std::uint64_t total = 0;
    for (auto s : ps.component_sizes) total += s;
    REQUIRE(total == states);
    REQUIRE(ps.cycles.size() == ps.component_count());

    // Each component holds exactly one cycle, whose states are in it.
    for (std::size_t c = 0; c < ps.cycles.size(); ++c) {
      const auto& cyc = ps.cycles[c];
      REQUIRE_FALSE(cyc.empty());
      REQUIRE(cyc.front() == *std::min_element(cyc.begin(), cyc.end()));
      for (std::size_t j = 0; j < cyc.size(); ++j) {
        REQUIRE(ps.component[cyc[j]] == c);
        REQUIRE(ps.successor[cyc[j]] == cyc[(j + 1) % cyc.size()]);
      }
    }
    for (std::uint32_t m = 0; m < states; ++m) {
      REQUIRE(ps.successor[m] == net.step(m));
      REQUIRE(ps.component[m] == ps.component[ps.successor[m]]);
    }
    // Numbered by least state.
    std::vector<std::uint32_t> least(ps.component_count(), ~0u);
    for (std::uint32_t m = 0; m < states; ++m) least[ps.component[m]] = std::min(least[ps.component[m]], m);
    REQUIRE(std::is_sorted(least.begin(), least.end()));

    auto sizes = ps.component_sizes;
    std::sort(sizes.begin(), sizes.end());
    REQUIRE(sizes == component_sizes_by_union_find(net, n));
  }
}

TEST_CASE("trajectory_component_size") {
  const auto net = self_network(2, TruthTable::from_values(1, {1, 0}));
  const auto ps = phase_space(net);
  const std::uint32_t ok[] = {0b00, 0b11, 0b00};
  CHECK(trajectory_component_size(ps, ok) == 2);
  const std::uint32_t split[] = {0b00, 0b01};
  CHECK_THROWS_AS(trajectory_component_size(ps, split), InvariantViolation);
  CHECK_THROWS_AS(trajectory_component_size(ps, std::span<const std::uint32_t>{}), ArgumentError);
  const std::uint32_t out_of_range[] = {4};
  CHECK_THROWS_AS(trajectory_component_size(ps, out_of_range), ArgumentError);

  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 30; ++rep) {
    const auto rnet = random_network(rng, 6);
    const auto rps = phase_space(rnet);
    std::vector<std::uint32_t> traj{static_cast<std::uint32_t>(rng() % 64)};
    for (int t = 0; t < 10; ++t) traj.push_back(rnet.step(traj.back()));
    REQUIRE(trajectory_component_size(rps, traj) == rps.component_sizes[rps.component[traj[0]]]);
  }
}

TEST_CASE("network validation") {
  CHECK_THROWS_AS(BooleanNetwork(WiringDiagram({"A"}, {{0}}), {TruthTable(2)}), ConfigError);
  CHECK_THROWS_AS(BooleanNetwork(WiringDiagram({"A"}, {{0}}), {}), ConfigError);
}

TEST_CASE("derive_seed and uniform_below") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  Engine e(derive_seed(7, 3));
  std::vector<int> counts(3);
  for (int i = 0; i < 3000; ++i) counts[uniform_below(e, 3)]++;
  for (int c : counts) CHECK(c > 850);
}

TEST_CASE("sampling a one-node network") {
  // A reads itself; the single pair 0 -> 1 admits NOT x1 and the constant 1.
  WiringDiagram w({"A"}, {{0}});
  std::vector<TimeCourse> tc{TimeCourse({"A"}, {{0}, {1}})};
  const auto res = infer(w, tc);
  REQUIRE(res.nodes[0].ncfs.size() == 1);
  CHECK(res.nodes[0].ncfs[0].table == TruthTable::from_values(1, {1, 0}));

  SampleOptions opt;
  opt.samples = 4;
  opt.trajectory = {0, 1};
  for (SampleMode mode : {SampleMode::ncf, SampleMode::unrestricted}) {
    opt.mode = mode;
    const auto stats = sample_ensemble(w, res, opt);
    CHECK(stats.sample_count == 4);
    CHECK(stats.mean_components == doctest::Approx(1.0));
    CHECK(stats.mean_trajectory_component_size == doctest::Approx(2.0));
    CHECK(stats.count_trajectory_not_in_largest == 0);
    CHECK(stats.mean_size_when_not_largest == 0.0);
    REQUIRE(stats.histogram.size() == 2);
    CHECK(stats.histogram[1] == 4);
  }
}

TEST_CASE("trajectory outside the largest component") {
  // A' = A, B' = A and B: components {00, 10}, {01}, {11}.
  WiringDiagram w({"A", "B"}, {{0}, {0, 1}});
  InferenceResult res;
  res.nodes.resize(2);
  for (std::size_t i = 0; i < 2; ++i) {
    res.nodes[i].node = i;
    res.nodes[i].regulators = w.regulators(i);
  }
  res.nodes[0].ncfs = ncf_catalog(1).filter([](const TruthTable& t) { return t == projection(1, 0); });
  res.nodes[1].ncfs = ncf_catalog(2).filter([](const TruthTable& t) { return t == TruthTable::from_values(2, {0, 0, 0, 1}); });
  SampleOptions opt;
  opt.samples = 3;
  opt.trajectory = {0b11};
  const auto stats = sample_ensemble(w, res, opt);
  CHECK(stats.mean_components == doctest::Approx(3.0));
  CHECK(stats.mean_trajectory_component_size == doctest::Approx(1.0));
  CHECK(stats.count_trajectory_not_in_largest == 3);
  CHECK(stats.mean_size_when_not_largest == doctest::Approx(1.0));
}

TEST_CASE("sampling requires candidates unless the fallback is enabled") {
  const auto& y = yeast();
  SampleOptions opt;
  opt.samples = 20;
  opt.trajectory = y.trajectory();
  CHECK_THROWS_AS(sample_ensemble(y.wiring, y.res, opt), ConfigError);

  opt.degenerate_fallback = true;
  const auto stats = sample_ensemble(y.wiring, y.res, opt);
  CHECK(stats.fallback_nodes == std::vector<std::string>{"Cln3"});
  CHECK(stats.sample_count == 20);
  CHECK(stats.bin_width == 64);
  CHECK(stats.histogram.size() == 32);
  std::uint64_t hist_total = 0;
  for (auto h : stats.histogram) hist_total += h;
  CHECK(hist_total == 20);

  opt.trajectory.clear();
  CHECK_THROWS_AS(sample_ensemble(y.wiring, y.res, opt), ConfigError);
}

TEST_CASE("sampling is deterministic and independent of threads") {
  const auto& y = yeast();
  SampleOptions opt;
  opt.samples = 200;
  opt.seed = 42;
  opt.trajectory = y.trajectory();
  opt.degenerate_fallback = true;
  for (SampleMode mode : {SampleMode::ncf, SampleMode::unrestricted}) {
    opt.mode = mode;
    opt.threads = 1;
    const auto a = sample_ensemble(y.wiring, y.res, opt);
    opt.threads = 4;
    const auto b = sample_ensemble(y.wiring, y.res, opt);
    CHECK(a.trajectory_component_sizes == b.trajectory_component_sizes);
    CHECK(a.component_counts == b.component_counts);
    CHECK(a.histogram == b.histogram);
    CHECK(a.mean_components == b.mean_components);
  }
  opt.mode = SampleMode::ncf;
  opt.seed = 43;
  const auto c = sample_ensemble(y.wiring, y.res, opt);
  opt.seed = 42;
  const auto d = sample_ensemble(y.wiring, y.res, opt);
  CHECK(c.trajectory_component_sizes != d.trajectory_component_sizes);
}

TEST_CASE("sample mode names") {
  CHECK(to_string(SampleMode::ncf) == "ncf");
  CHECK(parse_sample_mode("unrestricted") == SampleMode::unrestricted);
  CHECK_THROWS_AS(parse_sample_mode("both"), ArgumentError);
}
