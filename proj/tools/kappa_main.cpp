// Batch front end: reads a problem description, dispatches to the library,
// and emits a machine-readable certificate/solution report. One file per
// problem; batch runs are shell-level iteration over files.
//
// Exit codes: 0 Solved/Certified, 2 Infeasible, 3 SearchFailed or an unstable
// certification, 1 malformed input or I/O failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <kappa/generate.hpp>
#include <kappa/problem_io.hpp>
#include <kappa/version.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw kappa::Error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw kappa::Error("cannot open output file: " + path);
  out << bytes;
  if (!out) throw kappa::Error("write failed: " + path);
}

/// Certificate spectrum (or the Hankel singular values) as CSV rows for
/// external plotting.
std::string report_csv(const json& report) {
  std::ostringstream out;
  if (report.contains("certificate")) {
    out << "index,eigenvalue\n";
    int k = 0;
    for (const auto& lam : report["certificate"]["spectrum"])
      out << k++ << "," << lam.dump() << "\n";
  } else if (report.contains("diagnostics") &&
             report["diagnostics"].contains("singular_values")) {
    out << "index,singular_value\n";
    int k = 0;
    for (const auto& s : report["diagnostics"]["singular_values"])
      out << k++ << "," << s.dump() << "\n";
  } else {
    out << "index,value\n";
  }
  return out.str();
}

void emit(const std::string& bytes, const std::string& out_path) {
  if (out_path.empty())
    std::cout << bytes;
  else
    write_file(out_path, bytes);
}

int run_command(const std::string& path, const kappa::RunOptions& opt,
                const std::string& out_path, const std::string& format) {
  const std::string bytes = read_file(path);
  const json parsed = json::parse(bytes);
  const kappa::Problem problem = kappa::parse_problem(parsed);
  const kappa::RunOutcome outcome =
      kappa::run_problem(problem, opt, kappa::fnv1a_digest(bytes));
  const std::string payload = format == "csv"
                                  ? report_csv(outcome.report)
                                  : outcome.report.dump(2) + "\n";
  emit(payload, out_path);
  return outcome.exit_code;
}

int gen_command(const std::string& path, const std::string& kind, int kappa_target,
                int size, std::uint64_t seed, int grid) {
  std::mt19937_64 rng(seed);
  json problem;
  json truth;
  if (kind == "pick") {
    const auto inst = kappa::random_pick_instance(rng, kappa_target, size);
    problem = kappa::problem_to_json(inst);
    truth = kappa::truth_to_json(inst.truth);
  } else if (kind == "cf") {
    const auto inst = kappa::random_cf_instance(rng, kappa_target, size);
    problem = kappa::problem_to_json(inst);
    truth = kappa::truth_to_json(inst.truth);
  } else if (kind == "sarason") {
    const auto inst = kappa::random_sarason_instance(rng, kappa_target, size);
    problem = kappa::problem_to_json(inst);
    truth = kappa::truth_to_json(inst.truth);
  } else if (kind == "nudelman") {
    const auto inst = kappa::random_nudelman_instance(rng, kappa_target, size);
    problem = kappa::problem_to_json(inst);
    truth = kappa::truth_to_json(inst.truth);
  } else if (kind == "boundary-disk") {
    const kappa::CircleGrid circle(grid);
    const auto inst = kappa::random_disk_instance(rng, kappa_target, circle);
    problem = kappa::problem_to_json(inst);
    truth = kappa::truth_to_json(inst.truth);
  } else if (kind == "loewner" || kind == "loewner-real") {
    const auto inst = kappa::random_line_instance(rng, kappa_target, size);
    problem = kappa::problem_to_json(inst, kind.c_str());
    truth = kappa::truth_to_json(inst);
  } else if (kind == "dual-loewner") {
    const auto inst = kappa::random_dual_instance(rng, size);
    problem = kappa::problem_to_json(inst, kind.c_str());
    truth = kappa::truth_to_json(inst);
  } else if (kind == "hankel") {
    const auto inst = kappa::random_hankel_instance(rng, kappa_target, size);
    problem = kappa::problem_to_json(inst);
    truth = kappa::truth_to_json(inst.truth);
  } else {
    throw kappa::Error("gen: unknown kind: " + kind);
  }
  write_file(path, problem.dump(2) + "\n");
  write_file(path + ".truth.json", truth.dump(2) + "\n");
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indefinite interpolation certificates and solvers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kappa::kToolVersion));

  std::string path;
  double tol = 1e-9;
  int grid = 4096;
  int trunc = 256;
  std::optional<std::uint64_t> seed;
  bool solve = false;
  std::string out_path;
  std::string format = "json";

  auto* run = app.add_subcommand("run", "Evaluate a problem file and emit a report");
  run->add_option("path", path, "problem file (JSON)")->required();
  run->add_option("--tol", tol, "eigenvalue classification tolerance")
      ->check(CLI::PositiveNumber);
  run->add_option("--grid", grid, "circle grid size for sampled kinds")
      ->check(CLI::PositiveNumber);
  run->add_option("--trunc", trunc, "truncation order for boundary forms")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "override the search seed");
  run->add_flag("--solve", solve, "construct a solution pair when certifiable");
  run->add_option("--out", out_path, "report destination (default stdout)");
  run->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string kind = "pick";
  int kappa_target = 1;
  int size = 5;
  std::uint64_t gen_seed = 1;

  auto* gen = app.add_subcommand(
      "gen", "Write a seeded problem instance plus a ground-truth sidecar");
  gen->add_option("path", path, "output problem file (JSON)")->required();
  gen->add_option("--kind", kind, "problem kind")
      ->check(CLI::IsMember({"pick", "cf", "sarason", "nudelman", "boundary-disk",
                             "loewner", "loewner-real", "dual-loewner", "hankel"}));
  gen->add_option("--kappa", kappa_target, "target negative index")
      ->check(CLI::Range(0, 3));
  gen->add_option("--size", size,
                  "instance size (points, jet length, dimension, panels, or window)")
      ->check(CLI::Range(1, 64));
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--grid", grid, "circle grid size for boundary-disk instances")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      kappa::RunOptions opt;
      opt.tol = tol;
      opt.grid = grid;
      opt.trunc = trunc;
      opt.solve = solve;
      opt.seed = seed;
      return run_command(path, opt, out_path, format);
    }
    return gen_command(path, kind, kappa_target, size, gen_seed, grid);
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const kappa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
