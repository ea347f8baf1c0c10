// Command line front end: solve instances, emit CNF, evaluate the count
// formulas, run matrix programs, benchmark step scaling, and run the
// verification suite. Exit codes: 0 success, 1 property failure, 2 usage
// or parse error, 3 infeasible instance or failed run.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tripound/bap.hpp"
#include "tripound/counting.hpp"
#include "tripound/harness.hpp"
#include "tripound/model.hpp"
#include "tripound/sat.hpp"
#include "tripound/tripound.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

struct UsageFailure {
  std::string msg;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageFailure{"cannot open " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

tripound::Instance load_instance(const std::string& path) {
  try {
    return tripound::parse_instance(read_file(path));
  } catch (const tripound::ParseError& e) {
    throw UsageFailure{path + ": " + e.what()};
  }
}

int cmd_solve(const std::string& file, const std::string& mode,
              const std::string& scan, bool trace) {
  tripound::SolveMode m;
  tripound::ScanMode s;
  try {
    m = tripound::solve_mode_from(mode);
    s = tripound::scan_mode_from(scan);
  } catch (const std::invalid_argument& e) {
    throw UsageFailure{e.what()};
  }
  const tripound::Instance inst = load_instance(file);
  try {
    const tripound::SolveResult res = tripound::tripound_solve(inst, m, s);
    std::cout << tripound::serialize_pairing(inst, res.pairing);
    if (trace) std::cout << tripound::serialize_trace(res.trace);
  } catch (const tripound::SolveError& e) {
    std::cerr << "solve failed: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

int cmd_encode(const std::string& file, const std::string& out_path) {
  const tripound::Instance inst = load_instance(file);
  const auto [cnf, vm] = tripound::encode(inst);
  const std::string dimacs = tripound::write_dimacs(cnf);
  if (out_path.empty()) {
    std::cout << dimacs;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageFailure{"cannot write " + out_path};
  out << dimacs;
  return kExitOk;
}

int cmd_count(const std::string& file, const std::string& variant_name) {
  tripound::PhiVariant variant;
  try {
    variant = tripound::phi_variant_from(variant_name);
  } catch (const std::invalid_argument& e) {
    throw UsageFailure{e.what()};
  }
  const tripound::Instance inst = load_instance(file);
  try {
    const tripound::CountReport rep = tripound::compare_counts(inst, variant);
    std::cout << tripound::serialize_count_report(inst, variant, rep);
  } catch (const tripound::SizeLimitError& e) {
    throw UsageFailure{e.what()};
  }
  return kExitOk;
}

int cmd_run_bap(const std::string& prog_path, const std::string& file,
                long long step_cap) {
  if (step_cap <= 0) throw UsageFailure{"step cap must be positive"};
  const std::string text = read_file(prog_path);
  tripound::BapProgram prog;
  try {
    prog = tripound::parse_bap(text);
  } catch (const tripound::BapError& e) {
    throw UsageFailure{prog_path + ": " + e.what()};
  }
  const tripound::Instance inst = load_instance(file);
  try {
    const tripound::BapState fin =
        tripound::run_bap(prog, tripound::make_tripound_state(inst, step_cap));
    std::cout << tripound::render_matrix(fin, "D", &inst.table);
    std::cout << "steps = " << fin.steps << "\n";
  } catch (const tripound::BapError& e) {
    std::cerr << "run failed (" << tripound::to_string(e.kind) << "): " << e.what()
              << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

int cmd_bench(const std::vector<int>& sizes, uint64_t seed, const std::string& scan) {
  tripound::ScanMode s;
  try {
    s = tripound::scan_mode_from(scan);
  } catch (const std::invalid_argument& e) {
    throw UsageFailure{e.what()};
  }
  try {
    const tripound::ScalingReport rep = tripound::measure_scaling(sizes, s, seed);
    std::cout << tripound::serialize_scaling_report(rep);
  } catch (const tripound::SpecInvalid& e) {
    throw UsageFailure{e.what()};
  }
  return kExitOk;
}

int cmd_verify(int max_n, uint64_t seed) {
  if (max_n < 2 || max_n > 10)
    throw UsageFailure{"--max-n must lie in [2, 10] (exhaustive sweeps)"};
  const tripound::VerifyReport rep = tripound::verify_all({max_n, seed});
  std::cout << tripound::serialize_verify_report(rep);
  return rep.ok() ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conflict-constrained pairing laboratory"};
  app.require_subcommand(1);

  std::string file, prog_path, out_path;
  std::string mode = "faithful", scan = "linear", variant = "even-step";
  bool trace = false;
  long long step_cap = tripound::kDefaultStepCap;
  std::vector<int> sizes = {64, 128, 256, 512, 1024, 2048, 4096};
  uint64_t seed = 1;
  int max_n = 8;

  auto* solve = app.add_subcommand("solve", "pair the elements of an instance file");
  solve->add_option("file", file, "instance file")->required();
  solve->add_option("--mode", mode, "faithful|extended");
  solve->add_option("--scan", scan, "linear|indexed|prefix");
  solve->add_flag("--trace", trace, "print the step accounting");

  auto* encode = app.add_subcommand("encode", "emit the instance as DIMACS CNF");
  encode->add_option("file", file, "instance file")->required();
  encode->add_option("-o,--output", out_path, "output path (default stdout)");

  auto* count = app.add_subcommand("count", "closed-form count vs brute force");
  count->add_option("file", file, "instance file")->required();
  count->add_option("--variant", variant, "even-step|unit-step");

  auto* runbap = app.add_subcommand("run-bap", "run a matrix program on an instance");
  runbap->add_option("program", prog_path, "program file")->required();
  runbap->add_option("file", file, "instance file")->required();
  runbap->add_option("--step-cap", step_cap, "step budget (default 10^7)");

  auto* bench = app.add_subcommand("bench", "step scaling with a log-log fit");
  bench->add_option("--sizes", sizes, "element counts (even, >= 8)")->delimiter(',');
  bench->add_option("--seed", seed, "base seed");
  bench->add_option("--scan", scan, "linear|indexed|prefix");

  auto* verify = app.add_subcommand("verify", "cross-check all solver routes");
  verify->add_option("--max-n", max_n, "exhaustive sweep bound (even, <= 10)");
  verify->add_option("--seed", seed, "seed for the sampled properties");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(file, mode, scan, trace);
    if (encode->parsed()) return cmd_encode(file, out_path);
    if (count->parsed()) return cmd_count(file, variant);
    if (runbap->parsed()) return cmd_run_bap(prog_path, file, step_cap);
    if (bench->parsed()) return cmd_bench(sizes, seed, scan);
    if (verify->parsed()) return cmd_verify(max_n, seed);
  } catch (const UsageFailure& e) {
    std::cerr << "error: " << e.msg << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPropertyFailure;
  }
  return kExitUsage;
}
