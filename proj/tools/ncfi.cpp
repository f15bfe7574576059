// ncfi: infer nested canalyzing models from time courses and analyze their
// dynamics. Run `ncfi --help` for the subcommands.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ncfinfer/dynamics.hpp"
#include "ncfinfer/io.hpp"
#include "ncfinfer/ncf.hpp"

namespace fs = std::filesystem;
using namespace ncfinfer;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Output {
  std::string name;
  std::string content;
};

// Writes every file or none: contents go to temporaries first.
void write_outputs(const std::string& dir, const std::vector<Output>& outputs) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
  std::vector<std::pair<fs::path, fs::path>> staged;
  try {
    for (const auto& o : outputs) {
      const fs::path final_path = fs::path(dir) / o.name;
      const fs::path tmp = fs::path(dir) / ("." + o.name + ".tmp");
      std::ofstream out(tmp, std::ios::binary);
      out << o.content;
      out.close();
      if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
      staged.emplace_back(tmp, final_path);
    }
  } catch (...) {
    for (const auto& [tmp, _] : staged) fs::remove(tmp, ec);
    throw;
  }
  for (const auto& [tmp, final_path] : staged) fs::rename(tmp, final_path);
}

void emit(const std::string& out_dir, const std::vector<Output>& outputs, const std::string& stdout_text) {
  if (out_dir.empty()) {
    std::cout << stdout_text;
  } else {
    write_outputs(out_dir, outputs);
  }
}

struct Inputs {
  WiringDiagram wiring;
  std::vector<TimeCourse> courses;
  Provenance provenance;
};

Inputs load_inputs(const std::string& wiring_path, const std::vector<std::string>& course_paths) {
  Inputs in;
  const std::string wiring_text = read_file(wiring_path);
  try {
    in.wiring = parse_wiring(wiring_text);
  } catch (const Error& e) {
    throw ParseError(wiring_path + ": " + e.what());
  }
  in.provenance.wiring_sha256 = sha256_hex(wiring_text);
  for (const auto& path : course_paths) {
    const std::string text = read_file(path);
    try {
      in.courses.push_back(parse_timecourse(text).aligned_to(in.wiring));
    } catch (const Error& e) {
      throw ParseError(path + ": " + e.what());
    }
    in.provenance.timecourse_sha256.push_back(sha256_hex(text));
  }
  return in;
}

std::size_t resolve_node(const WiringDiagram& w, const std::string& name) {
  const auto i = w.index_of(name);
  if (!i) throw ConfigError("unknown node '" + name + "'");
  return *i;
}

void print_error(const std::string& kind, const std::string& message) {
  Json err;
  err["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infer nested canalyzing Boolean models from time courses and analyze their dynamics"};
  app.require_subcommand(1);

  std::string wiring_path, out_dir, node_name, rules_path;
  std::vector<std::string> course_paths;
  std::uint64_t seed = 1, samples = 2000;
  std::string mode_text;
  bool fallback = false;
  unsigned arity = 0;

  auto add_inputs = [&](CLI::App* sub, bool courses_required) {
    sub->add_option("--wiring", wiring_path, "Wiring diagram (JSON)")->required()->check(CLI::ExistingFile);
    auto* tc = sub->add_option("--timecourse", course_paths, "Time course (CSV); repeatable")->check(CLI::ExistingFile);
    if (courses_required) tc->required();
    sub->add_option("--out", out_dir, "Output directory (default: print to stdout)");
  };

  auto* infer_cmd = app.add_subcommand("infer", "Fitting NCFs per node, model-space report and model count");
  add_inputs(infer_cmd, true);
  infer_cmd->add_option("--node", node_name, "Restrict inference to one node");

  auto* enum_cmd = app.add_subcommand("enumerate-ncfs", "List every NCF of the given arity");
  enum_cmd->add_option("k", arity, "Number of inputs")->required()->check(CLI::Range(1, 6));
  enum_cmd->add_option("--out", out_dir, "Output directory (default: print ANF lines to stdout)");

  auto* dyn_cmd = app.add_subcommand("dynamics", "Phase space of one model given by ANF rules");
  add_inputs(dyn_cmd, false);
  dyn_cmd->add_option("--rules", rules_path, "Rules file (JSON node -> ANF)")->required()->check(CLI::ExistingFile);

  auto* sample_cmd = app.add_subcommand("sample", "Ensemble statistics over randomly drawn fitting models");
  add_inputs(sample_cmd, true);
  sample_cmd->add_option("--seed", seed, "Random seed");
  sample_cmd->add_option("--samples,-m", samples, "Number of sampled networks")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--mode", mode_text, "ncf or unrestricted (default: both)")
      ->check(CLI::IsMember({"ncf", "unrestricted"}));
  sample_cmd->add_flag("--degenerate-fallback", fallback,
                       "In ncf mode, nodes without NCFs draw from functions nested canalyzing in fewer inputs");

  auto* check_cmd = app.add_subcommand("check", "Compare enumeration-based and form-based inference per node");
  add_inputs(check_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }

  try {
    if (*infer_cmd) {
      const Inputs in = load_inputs(wiring_path, course_paths);
      InferOptions options;
      if (!node_name.empty()) options.only_node = resolve_node(in.wiring, node_name);
      const InferenceResult res = infer(in.wiring, in.courses, options);
      const std::string table = inference_table(in.wiring, res);
      emit(out_dir, {{"infer.json", inference_report(in.wiring, res, in.provenance).dump(2) + "\n"}, {"infer.txt", table}},
           table);
    } else if (*enum_cmd) {
      const NcfSet set = enumerate_ncfs(arity);
      const std::string lines = ncf_set_lines(set);
      const std::string k = std::to_string(arity);
      emit(out_dir, {{"ncfs_" + k + ".txt", lines}, {"ncfs_" + k + ".json", ncf_set_json(set).dump(2) + "\n"}}, lines);
    } else if (*dyn_cmd) {
      const Inputs in = load_inputs(wiring_path, course_paths);
      const BooleanNetwork net = [&] {
        try {
          return parse_rules(read_file(rules_path), in.wiring);
        } catch (const Error& e) {
          throw ParseError(rules_path + ": " + e.what());
        }
      }();
      const PhaseSpace ps = phase_space(net);
      Json report = phase_space_report(net, ps);
      report["inputs"] = {{"wiring_sha256", in.provenance.wiring_sha256},
                          {"rules_sha256", sha256_hex(read_file(rules_path))}};
      if (!in.courses.empty()) {
        Json sizes = Json::array();
        for (const auto& tc : in.courses) {
          std::vector<std::uint32_t> traj;
          for (const auto& row : tc.rows()) traj.push_back(state_index(row));
          sizes.push_back(trajectory_component_size(ps, traj));
        }
        report["trajectory_component_sizes"] = std::move(sizes);
      }
      const std::string text = report.dump(2) + "\n";
      emit(out_dir, {{"dynamics.json", text}}, text);
    } else if (*sample_cmd) {
      const Inputs in = load_inputs(wiring_path, course_paths);
      const InferenceResult res = infer(in.wiring, in.courses);
      SampleOptions options;
      options.samples = samples;
      options.seed = seed;
      options.degenerate_fallback = fallback;
      for (const auto& row : in.courses.front().rows()) options.trajectory.push_back(state_index(row));
      std::vector<SampleMode> modes;
      if (mode_text.empty()) {
        modes = {SampleMode::ncf, SampleMode::unrestricted};
      } else {
        modes = {parse_sample_mode(mode_text)};
      }
      std::vector<Output> outputs;
      std::string summary;
      for (auto mode : modes) {
        options.mode = mode;
        const EnsembleStats stats = sample_ensemble(in.wiring, res, options);
        const std::string name = "sample_" + to_string(mode);
        const std::string json = stats_report(stats, in.provenance).dump(2) + "\n";
        outputs.push_back({name + ".json", json});
        outputs.push_back({name + ".csv", stats_csv(stats)});
        summary += json;
      }
      emit(out_dir, outputs, summary);
    } else if (*check_cmd) {
      const Inputs in = load_inputs(wiring_path, course_paths);
      bool all = true;
      std::ostringstream text;
      for (std::size_t i = 0; i < in.wiring.size(); ++i) {
        const bool ok = cross_check(in.wiring, in.courses, i);
        all = all && ok;
        text << (ok ? "ok    " : "FAIL  ") << in.wiring.name(i) << "\n";
      }
      std::cout << text.str();
      if (!all) {
        print_error("cross_check", "enumeration-based and form-based inference disagree");
        return 1;
      }
    }
  } catch (const Error& e) {
    print_error(e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
  return 0;
}
