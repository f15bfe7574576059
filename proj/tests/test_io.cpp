#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ncfinfer/io.hpp"

using namespace ncfinfer;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::string kYeastWiring = slurp(NCFINFER_DATA_DIR "/yeast/wiring.json");
const std::string kYeastCourse = slurp(NCFINFER_DATA_DIR "/yeast/timecourse.csv");

std::string parse_error(auto&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("wiring with a self-loop") {
  const auto w = parse_wiring(R"({"nodes": ["A", "B"], "regulators": {"A": ["A", "B"], "B": []}})");
  CHECK(w.size() == 2);
  CHECK(w.regulators(0) == std::vector<std::size_t>{0, 1});
  CHECK(w.in_degree(1) == 0);
}

TEST_CASE("yeast wiring") {
  const auto w = parse_wiring(kYeastWiring);
  REQUIRE(w.size() == 11);
  const unsigned expected[] = {1, 3, 3, 1, 4, 4, 3, 3, 5, 5, 3};
  for (std::size_t i = 0; i < 11; ++i) CHECK(w.in_degree(i) == expected[i]);
  CHECK(w.name(0) == "Cln3");
  CHECK(parse_wiring(serialize_wiring(w)) == w);
}

TEST_CASE("wiring errors carry field context") {
  CHECK(parse_error([] { parse_wiring(R"({"nodes": ["A"], "regulators": {"A": ["Z"]}})"); })
            .find("regulators.A[0]") != std::string::npos);
  CHECK(parse_error([] { parse_wiring(R"({"nodes": ["A"], "regulators": {}})"); }).find("'A'") !=
        std::string::npos);
  CHECK(parse_error([] { parse_wiring(R"({"nodes": ["A"], "regulators": {"A": []}, "x": 1})"); })
            .find("'x'") != std::string::npos);
  CHECK_FALSE(parse_error([] { parse_wiring("{"); }).empty());
  CHECK_FALSE(parse_error([] { parse_wiring(R"({"nodes": ["A", "A"], "regulators": {"A": []}})"); }).empty());
}

TEST_CASE("yeast time course") {
  const auto tc = parse_timecourse(kYeastCourse);
  REQUIRE(tc.rows().size() == 13);
  CHECK(tc.nodes().size() == 11);
  CHECK(tc.transitions() == 12);
  CHECK(tc.rows()[0] == std::vector<std::uint8_t>{1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0});
  CHECK(parse_timecourse(serialize_timecourse(tc)) == tc);
}

TEST_CASE("time course parsing") {
  const auto two = parse_timecourse("# comment\nA,B\n\n0,1\n1,1\n");
  CHECK(two.transitions() == 1);
  CHECK(two.rows()[1] == std::vector<std::uint8_t>{1, 1});

  const auto bad = parse_error([] { parse_timecourse("A,B\n0,1\n2,1\n"); });
  CHECK(bad.find("line 3") != std::string::npos);
  CHECK(bad.find("'A'") != std::string::npos);
  CHECK(parse_error([] { parse_timecourse("A,B\n0,1\n1\n"); }).find("line 3") != std::string::npos);
  CHECK_FALSE(parse_error([] { parse_timecourse("A,B\n0,1\n"); }).empty());
  CHECK_FALSE(parse_error([] { parse_timecourse(""); }).empty());
}

TEST_CASE("rules") {
  const auto w = parse_wiring(R"({"nodes": ["A", "B"], "regulators": {"A": ["B"], "B": ["A", "B"]}})");
  const auto net = parse_rules(R"({"A": "1+x1", "B": "x1*x2"})", w);
  CHECK(net.local(0) == TruthTable::from_values(1, {1, 0}));
  CHECK(net.local(1) == TruthTable::from_values(2, {0, 0, 0, 1}));
  CHECK(net.step(0b00) == 0b01u);
  CHECK(parse_rules(serialize_rules(net), w).local(1) == net.local(1));

  CHECK(parse_error([&] { parse_rules(R"({"A": "x1"})", w); }).find("'B'") != std::string::npos);
  CHECK(parse_error([&] { parse_rules(R"({"A": "x2", "B": "0"})", w); }).find("rules.A") != std::string::npos);
  CHECK_FALSE(parse_error([&] { parse_rules(R"({"A": "x1", "B": "0", "C": "1"})", w); }).empty());
}

TEST_CASE("sha256_hex") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("state_string") {
  CHECK(state_string(0b001, 3) == "100");
  CHECK(state_string(0, 2) == "00");
}

TEST_CASE("inference report and table") {
  const auto w = parse_wiring(kYeastWiring);
  const std::vector<TimeCourse> tc{parse_timecourse(kYeastCourse)};
  const auto res = infer(w, tc);
  const Provenance prov{sha256_hex(kYeastWiring), {sha256_hex(kYeastCourse)}};
  const Json doc = inference_report(w, res, prov);

  CHECK(doc["model_count"] == 0);
  CHECK(doc["inputs"]["wiring_sha256"] == prov.wiring_sha256);
  REQUIRE(doc["nodes"].size() == 11);
  const Json& cdh1 = doc["nodes"][4];
  CHECK(cdh1["name"] == "Cdh1");
  CHECK(cdh1["in_degree"] == 4);
  CHECK(cdh1["ncf_count"] == 12);
  CHECK(cdh1["ncfs"].size() == 12);
  CHECK(cdh1["ncfs_of_arity"] == 736);
  CHECK(cdh1["model_space_size"] == "2^9");
  const Json& cln3 = doc["nodes"][0];
  CHECK(cln3["degenerate_fits"][0] == "0");

  const std::string table = inference_table(w, res);
  CHECK(table.find("Sic1") != std::string::npos);
  CHECK(table.find("nested canalyzing models: 0") != std::string::npos);
}

TEST_CASE("NCF set export") {
  const auto& set = ncf_catalog(1);
  CHECK(ncf_set_lines(set) == "1+x1\nx1\n");
  const Json doc = ncf_set_json(set);
  REQUIRE(doc.size() == 2);
  CHECK(doc[1]["truth_table"] == 2);
  CHECK(doc[1]["anf"] == "x1");
  CHECK(doc[0]["witness"]["sigma"] == Json::array({1}));
}

TEST_CASE("stats report and CSV") {
  EnsembleStats stats;
  stats.bin_width = 2;
  stats.histogram = {3, 0, 1};
  stats.sample_count = 4;
  const std::string csv = stats_csv(stats);
  CHECK(csv == "bin_start,bin_end,networks\n0,2,3\n2,4,0\n4,6,1\n");
  const Json doc = stats_report(stats, {});
  CHECK(doc["mode"] == "ncf");
  CHECK(doc["histogram"].size() == 3);
  CHECK(doc.contains("rng"));
}

TEST_CASE("phase space report") {
  const auto w = parse_wiring(R"({"nodes": ["A", "B"], "regulators": {"A": ["B"], "B": ["A"]}})");
  const auto net = parse_rules(R"({"A": "x1", "B": "x1"})", w);
  const Json doc = phase_space_report(net, phase_space(net));
  CHECK(doc["states"] == 4);
  CHECK(doc["component_count"] == 3);
}
