// Copyright 2026 The lbubfl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line entry point: gen, solve, bench and oracle.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lbubfl/core.h"
#include "lbubfl/generator.h"
#include "lbubfl/io.h"
#include "lbubfl/lp.h"
#include "lbubfl/oracle.h"
#include "lbubfl/pipeline.h"

namespace fs = std::filesystem;

namespace lbubfl {
namespace {

struct SolveFlags {
  double ell = 2.01;
  std::string dense_threshold = "0.5";
  std::optional<double> delta;
  bool post_flow = false;
  bool check_invariants = false;
};

void AddSolveFlags(CLI::App* cmd, SolveFlags* flags) {
  cmd->add_option("--ell", flags->ell, "Ball radius multiplier, in (2, 3]")
      ->capture_default_str();
  cmd->add_option("--dense-threshold", flags->dense_threshold,
                  "Dense rounding threshold t in (0, 1), or 'ell' for 1 - 1/ell")
      ->capture_default_str();
  cmd->add_option("--delta", flags->delta,
                  "Opening-cost scale of the capacitated instance");
  cmd->add_flag("--post-flow", flags->post_flow,
                "Re-assign clients on the final open set by min-cost flow");
  cmd->add_flag("--check-invariants", flags->check_invariants,
                "Fail with exit code 5 on any structural violation");
}

PipelineOptions ToOptions(const SolveFlags& flags) {
  PipelineOptions opt;
  opt.tri.ell = flags.ell;
  if (flags.dense_threshold == "ell") {
    opt.tri.dense_threshold = 1.0 - 1.0 / flags.ell;
  } else {
    try {
      size_t used = 0;
      opt.tri.dense_threshold = std::stod(flags.dense_threshold, &used);
      if (used != flags.dense_threshold.size()) throw std::invalid_argument("");
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::kParameter,
                  "--dense-threshold must be a number or 'ell'");
    }
  }
  opt.delta = flags.delta;
  opt.post_flow = flags.post_flow;
  opt.check_invariants = flags.check_invariants;
  opt.tri.check_invariants = true;
  return opt;
}

Json ParamsJson(const SolveFlags& flags, const PipelineOptions& opt) {
  Json p;
  p["ell"] = flags.ell;
  p["dense_threshold"] = opt.tri.dense_threshold;
  p["delta"] = flags.delta ? Json(*flags.delta) : Json("default");
  p["post_flow"] = flags.post_flow;
  p["check_invariants"] = flags.check_invariants;
  return p;
}

Json ReportJson(const Instance& inst, const PipelineResult& r,
                const std::optional<double>& oracle_opt) {
  Json rep;
  rep["cost"] = r.cost;
  rep["cost_before_post_flow"] = r.cost_before_post_flow;
  rep["lp_opt"] = r.lp_opt;
  rep["oracle_opt"] = oracle_opt ? Json(*oracle_opt) : Json();
  rep["cfl_solver"] = r.ascap ? Json(r.ascap->solver) : Json();
  rep["tricriteria"] = {{"cost", r.tri.cost},
                        {"measured_alpha", r.tri.measured_alpha},
                        {"measured_beta", r.tri.measured_beta},
                        {"integral_lower", r.tri.integral_lower},
                        {"integral_upper", r.tri.integral_upper},
                        {"tightened_lower", r.tri.tightened_lower},
                        {"facilities", r.tri.open.size()}};
  if (r.icap) {
    rep["capacitated"] = {{"sites", r.icap->size()},
                          {"delta", r.delta},
                          {"cost", CflCost(*r.icap, *r.ascap)},
                          {"normalized_cost", CflCost(*r.icap, *r.normalized)}};
  }
  rep["final"] = {{"open", r.solution.open.size()},
                  {"min_load", r.bounds.min_load},
                  {"max_load", r.bounds.max_load},
                  {"measured_alpha", r.bounds.measured_alpha},
                  {"measured_beta", r.bounds.measured_beta},
                  {"upper_limit", r.upper_limit},
                  {"lower_violations", r.bounds.lower_violations},
                  {"upper_excess", r.upper_excess}};
  const TriCriteriaChecks& t = r.tri.checks;
  Json inv = {{"separation", t.separation},
              {"distance_bound_1", t.distance_bound_1},
              {"distance_bound_2", t.distance_bound_2},
              {"distance_bound_3", t.distance_bound_3},
              {"ball_mass", t.ball_mass},
              {"sparse_lower", t.sparse_lower},
              {"dense_cover", t.dense_cover},
              {"dense_load", t.dense_load},
              {"client_mass", t.client_mass}};
  if (r.fix) {
    const TreeFixChecks& c = r.fix->checks;
    inv["claim_out"] = c.claim_out;
    inv["claim_in"] = c.claim_in;
    inv["observation"] = c.observation;
    inv["forest_shape"] = c.forest_shape;
    inv["non_root_2l"] = c.non_root_2l;
    inv["sibling"] = c.sibling;
    inv["edge_l"] = c.edge_l;
    inv["p_root"] = c.p_root;
  }
  inv["total"] = r.Violations();
  rep["invariants"] = inv;
  Json timings = Json::object();
  for (const StageTiming& s : r.timings) timings[s.stage] = s.ms;
  rep["timings_ms"] = timings;
  rep["instance"] = {{"facilities", inst.num_facilities()},
                     {"clients", inst.num_clients()},
                     {"L", inst.lower()},
                     {"U", inst.upper()}};
  return rep;
}

std::optional<double> OracleCost(const Instance& inst) {
  std::optional<Solution> opt = ExactLbubfl(inst);
  if (!opt) return std::nullopt;
  return Cost(inst, *opt);
}

void DumpTrace(const fs::path& dir, const Instance& inst, const PipelineResult& r) {
  fs::create_directories(dir);
  WriteJsonFile((dir / "tricriteria.json").string(), TriCriteriaToJson(inst, r.tri));
  if (r.i1) WriteJsonFile((dir / "I1.json").string(), I1ToJson(*r.i1));
  if (r.i2) WriteJsonFile((dir / "I2.json").string(), I2ToJson(*r.i2));
  if (r.icap) {
    WriteJsonFile((dir / "Icap.json").string(), CflInstanceToJson(*r.icap));
    Json as = CflSolutionToJson(*r.icap, *r.ascap);
    Json norm = CflSolutionToJson(*r.icap, *r.normalized);
    norm["stage"] = "AScap-normalized";
    WriteJsonFile((dir / "AScap.json").string(), as);
    WriteJsonFile((dir / "AScap_normalized.json").string(), norm);
  }
  if (r.fix) WriteJsonFile((dir / "treefix.json").string(), TreeFixToJson(*r.i2, *r.fix));
}

int RunGen(const GeneratorParams& params, int count, const std::string& out_dir,
           const std::string& prefix, const std::string& geometry) {
  GeneratorParams p = params;
  p.geometry = ParseGeometry(geometry);
  std::vector<Instance> instances = GenerateInstances(p, count);
  fs::create_directories(out_dir);
  for (size_t k = 0; k < instances.size(); ++k) {
    Json doc = InstanceToJson(instances[k]);
    doc["generator"] = {{"seed", p.seed},
                        {"index", k},
                        {"facilities", p.num_facilities},
                        {"clients", p.num_clients},
                        {"L", p.lower},
                        {"U", p.upper},
                        {"geometry", GeometryName(p.geometry)},
                        {"max_open_cost", p.max_open_cost}};
    std::ostringstream name;
    name << prefix << "_" << std::setw(4) << std::setfill('0') << k + 1 << ".json";
    WriteJsonFile((fs::path(out_dir) / name.str()).string(), doc);
  }
  return 0;
}

int RunSolve(const std::string& path, const SolveFlags& flags,
             const std::string& output, const std::string& report_path,
             const std::string& trace_dir, const std::string& export_lp,
             bool with_oracle) {
  Json doc = ReadJsonFile(path);
  Instance inst = InstanceFromJson(doc);
  if (!export_lp.empty()) {
    std::ofstream lp(export_lp);
    if (!lp) throw Error(ErrorKind::kInput, "cannot write " + export_lp);
    lp << ExportLpFormat(BuildRelaxation(inst).problem);
  }
  PipelineOptions opt = ToOptions(flags);
  PipelineResult r = SolveLbubfl(inst, opt);
  std::optional<double> oracle;
  if (with_oracle) oracle = OracleCost(inst);
  if (!trace_dir.empty()) DumpTrace(trace_dir, inst, r);

  Json sol = SolutionToJson(inst, r.solution);
  if (output.empty() || output == "-") {
    std::cout << sol.dump(2) << "\n";
  } else {
    WriteJsonFile(output, sol);
  }
  Json rep = ReportJson(inst, r, oracle);
  rep["params"] = ParamsJson(flags, opt);
  rep["input"] = path;
  // Generated instances carry their seed and parameters for replay.
  if (doc.contains("generator")) rep["generator"] = doc["generator"];
  if (!report_path.empty()) WriteJsonFile(report_path, rep);
  std::cerr << "cost " << r.cost << "  lp " << r.lp_opt << "  loads ["
            << r.bounds.min_load << ", " << r.bounds.max_load << "]  L "
            << inst.lower() << "  U " << inst.upper() << "  violations "
            << r.Violations() << "\n";
  return 0;
}

std::string Num(double v) {
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

int RunBench(const std::string& dir, const SolveFlags& flags,
             const std::string& output, int oracle_max_facilities,
             int oracle_max_clients, bool omit_runtime) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) throw Error(ErrorKind::kInput, dir + " is not a directory");
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::ofstream file;
  if (!output.empty() && output != "-") {
    file.open(output);
    if (!file) throw Error(ErrorKind::kInput, "cannot write " + output);
  }
  std::ostream& out = file.is_open() ? file : std::cout;
  out << "id,|F|,|C|,L,U,lp_opt,opt,cost,ratio,alpha,beta_final,runtime_ms,status\n";
  PipelineOptions opt = ToOptions(flags);
  for (const fs::path& f : files) {
    const std::string id = f.stem().string();
    std::ostringstream row;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Instance inst = InstanceFromJson(ReadJsonFile(f.string()));
      row << id << "," << inst.num_facilities() << "," << inst.num_clients()
          << "," << inst.lower() << "," << inst.upper() << ",";
      try {
        PipelineResult r = SolveLbubfl(inst, opt);
        std::optional<double> oracle;
        if (inst.num_facilities() <= oracle_max_facilities &&
            inst.num_clients() <= oracle_max_clients) {
          oracle = OracleCost(inst);
        }
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        row << Num(r.lp_opt) << "," << (oracle ? Num(*oracle) : "") << ","
            << Num(r.cost) << ","
            << (oracle && *oracle > 0 ? Num(r.cost / *oracle) : "") << ","
            << Num(r.tri.measured_alpha) << "," << Num(r.bounds.measured_beta)
            << "," << (omit_runtime ? "" : Num(std::round(ms * 1000) / 1000))
            << ",ok";
      } catch (const Error& e) {
        row << ",,,,,,," << ErrorKindName(e.kind());
      }
    } catch (const Error& e) {
      row.str("");
      row << id << ",,,,,,,,,,,," << ErrorKindName(e.kind());
    }
    out << row.str() << "\n";
  }
  return 0;
}

int RunOracle(const std::string& path, const std::string& output) {
  Instance inst = InstanceFromJson(ReadJsonFile(path));
  RequireCountingFeasible(inst);
  std::optional<Solution> opt = ExactLbubfl(inst);
  if (!opt) throw Error(ErrorKind::kInfeasible, "no open set admits loads in [L, U]");
  Json sol = SolutionToJson(inst, *opt);
  if (output.empty() || output == "-") {
    std::cout << sol.dump(2) << "\n";
  } else {
    WriteJsonFile(output, sol);
  }
  return 0;
}

}  // namespace
}  // namespace lbubfl

int main(int argc, char** argv) {
  using namespace lbubfl;
  CLI::App app{"Lower- and upper-bounded facility location toolkit"};
  app.require_subcommand(1);

  GeneratorParams gen;
  int count = 1;
  std::string out_dir = ".";
  std::string prefix = "inst";
  std::string geometry = "uniform";
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate random instances");
  gen_cmd->add_option("--count", count, "Number of instances")->capture_default_str();
  gen_cmd->add_option("--facilities", gen.num_facilities, "|F|")->capture_default_str();
  gen_cmd->add_option("--clients", gen.num_clients, "|C|")->capture_default_str();
  gen_cmd->add_option("--lower,-L", gen.lower, "L")->capture_default_str();
  gen_cmd->add_option("--upper,-U", gen.upper, "U")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed")->capture_default_str();
  gen_cmd->add_option("--geometry", geometry, "uniform, clustered or line")
      ->capture_default_str();
  gen_cmd->add_option("--max-cost", gen.max_open_cost, "Opening costs in [0, max]")
      ->capture_default_str();
  gen_cmd->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  gen_cmd->add_option("--prefix", prefix, "File name prefix")->capture_default_str();

  SolveFlags solve_flags;
  std::string instance_path;
  std::string output;
  std::string report_path;
  std::string trace_dir;
  std::string export_lp;
  bool with_oracle = false;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run the full pipeline");
  solve_cmd->add_option("instance", instance_path, "Instance JSON")->required();
  solve_cmd->add_option("-o,--output", output, "Solution JSON (default stdout)");
  solve_cmd->add_option("--report", report_path, "Report JSON");
  solve_cmd->add_option("--trace", trace_dir, "Directory for stage JSON dumps");
  solve_cmd->add_option("--export-lp", export_lp, "Write the relaxation in LP format");
  solve_cmd->add_flag("--oracle", with_oracle, "Also compute the exact optimum");
  AddSolveFlags(solve_cmd, &solve_flags);

  SolveFlags bench_flags;
  std::string bench_dir;
  std::string csv;
  int oracle_max_facilities = 8;
  int oracle_max_clients = 16;
  bool omit_runtime = false;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Solve every instance in a directory");
  bench_cmd->add_option("directory", bench_dir, "Directory of instance JSON files")
      ->required();
  bench_cmd->add_option("-o,--output", csv, "CSV file (default stdout)");
  bench_cmd->add_option("--oracle-max-facilities", oracle_max_facilities,
                        "Run the exact oracle up to this |F|")
      ->capture_default_str();
  bench_cmd->add_option("--oracle-max-clients", oracle_max_clients,
                        "Run the exact oracle up to this |C|")
      ->capture_default_str();
  bench_cmd->add_flag("--omit-runtime", omit_runtime,
                      "Leave runtime_ms empty for byte-stable output");
  AddSolveFlags(bench_cmd, &bench_flags);

  std::string oracle_path;
  std::string oracle_output;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Exact optimum of a tiny instance");
  oracle_cmd->add_option("instance", oracle_path, "Instance JSON")->required();
  oracle_cmd->add_option("-o,--output", oracle_output, "Solution JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ExitCodeFor(ErrorKind::kParameter);
  }

  try {
    if (*gen_cmd) return RunGen(gen, count, out_dir, prefix, geometry);
    if (*solve_cmd) {
      return RunSolve(instance_path, solve_flags, output, report_path, trace_dir,
                      export_lp, with_oracle);
    }
    if (*bench_cmd) {
      return RunBench(bench_dir, bench_flags, csv, oracle_max_facilities,
                      oracle_max_clients, omit_runtime);
    }
    if (*oracle_cmd) return RunOracle(oracle_path, oracle_output);
  } catch (const Error& e) {
    std::cerr << "error (" << ErrorKindName(e.kind()) << "): " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(ErrorKind::kInternal);
  }
  return 0;
}
