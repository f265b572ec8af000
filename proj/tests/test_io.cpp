#include <catch2/catch_amalgamated.hpp>

#include <kappa/problem_io.hpp>

#include <random>
#include <string>

using namespace kappa;

namespace {

// Message of the SchemaViolation raised while parsing, or "" if none was.
std::string schema_message(const json& j) {
  try {
    (void)parse_problem(j);
  } catch (const SchemaViolation& e) {
    return e.what();
  }
  return {};
}

bool rejected_at(const json& j, const std::string& path) {
  const std::string msg = schema_message(j);
  return !msg.empty() && msg.find(path) != std::string::npos;
}

}  // namespace

TEST_CASE("input digests are stable fnv1a values") {
  CHECK(fnv1a_digest("") == "fnv1a:cbf29ce484222325");
  CHECK(fnv1a_digest("a") == "fnv1a:af63dc4c8601ec8c");
}

TEST_CASE("solve statuses map onto the documented exit codes") {
  CHECK(exit_code_for(SolveStatus::Solved) == 0);
  CHECK(exit_code_for(SolveStatus::Infeasible) == 2);
  CHECK(exit_code_for(SolveStatus::SearchFailed) == 3);
}

TEST_CASE("a one-node interpolation file solves to a degree-one denominator") {
  const json j = json::parse(
      R"({"schema_version":1,"kind":"pick","z":[[0,0]],"w":[[2,0]],"solve":true})");
  const auto out = run_problem(parse_problem(j), RunOptions{}, fnv1a_digest(j.dump()));
  CHECK(out.exit_code == 0);
  CHECK(out.report["status"] == "Solved");
  CHECK(out.report["kappa"] == 1);
  CHECK(out.report["solution"]["degree"] == 1);
  REQUIRE(out.report["solution"]["blaschke_zeros"].size() == 1);
  CHECK(std::abs(out.report["solution"]["blaschke_zeros"][0][0].get<double>()) <= 1e-6);
}

TEST_CASE("a coefficient file certifies without solving") {
  const json j = json::parse(R"({"schema_version":1,"kind":"cf","w":[[0,0],[2,0]]})");
  const auto out = run_problem(parse_problem(j), RunOptions{}, fnv1a_digest(j.dump()));
  CHECK(out.exit_code == 0);
  CHECK(out.report["status"] == "Certified");
  CHECK(out.report["kappa"] == 1);
  const auto spec = out.report["certificate"]["spectrum"];
  REQUIRE(spec.size() == 2);
  CHECK(spec[0].get<double>() == Catch::Approx(-3.0).margin(1e-12));
  CHECK(spec[1].get<double>() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("schema violations name the offending field") {
  CHECK(rejected_at(
      json::parse(R"({"schema_version":1,"kind":"pick","z":[[0,0]],"w":[[2,0]],"bogus":1})"),
      "bogus"));
  CHECK(rejected_at(json::parse(R"({"schema_version":99,"kind":"cf","w":[[0,0]]})"),
                    "schema_version"));
  CHECK(rejected_at(json::parse(R"({"kind":"cf","w":[[0,0]]})"), "schema_version"));
  CHECK(rejected_at(json::parse(R"({"schema_version":1,"kind":"frobnicate"})"), "kind"));
  CHECK(rejected_at(json::parse(R"({"schema_version":1,"kind":"pick","z":[[0,0]],"w":[]})"),
                    "w"));
  CHECK(rejected_at(
      json::parse(R"({"schema_version":1,"kind":"pick","z":[[0,0]],"w":[[1,0],[0,0]]})"), "w"));
  CHECK(rejected_at(json::parse(R"({"schema_version":1,"kind":"cf","w":[[0,0]],"tol":2.0})"),
                    "tol"));
  CHECK(rejected_at(json::parse(R"({"schema_version":1,"kind":"cf","w":[[0,0]],"grid":100})"),
                    "grid"));
  CHECK(rejected_at(json::parse(R"({"schema_version":1,"kind":"cf","w":[[1,0]],"z":[[0,0]]})"),
                    "z"));

  // six samples is not a power of two
  CHECK(rejected_at(json::parse(R"({"schema_version":1,"kind":"boundary-disk",
      "b":[[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]],
      "c":[[1,0],[1,0],[1,0],[1,0],[1,0],[1,0]]})"),
                    "b"));

  // node count must be panels + 1 per interval
  CHECK(rejected_at(json::parse(R"({"schema_version":1,"kind":"loewner-real",
      "intervals":[[-1,1]],"panels_per_interval":4,"values":[[0,0],[1,0]]})"),
                    "values"));

  // real-kernel data must be real
  CHECK(rejected_at(json::parse(R"({"schema_version":1,"kind":"loewner-real",
      "intervals":[[-1,1]],"panels_per_interval":1,"values":[[0,0],[1,0.5]]})"),
                    "values[1]"));

  // dual densities must be nonnegative
  CHECK(rejected_at(json::parse(R"({"schema_version":1,"kind":"dual-loewner",
      "intervals":[[0,1]],"panels_per_interval":1,"values":[[1,0],[-1,0]]})"),
                    "values[1]"));

  // solve and search are reserved for the solvable kinds
  CHECK(rejected_at(json::parse(R"({"schema_version":1,"kind":"nudelman",
      "a":[[[0,0]]],"b":[[1,0]],"c":[[1,0]],"solve":true})"),
                    "solve"));
  CHECK(rejected_at(json::parse(R"({"schema_version":1,"kind":"hankel",
      "numerator":[[0,0],[1,0]],"denominator":[[1,0]],"window":4,"search":{"seed":1}})"),
                    "search"));
  CHECK(rejected_at(json::parse(R"({"schema_version":1,"kind":"pick","z":[[0,0]],"w":[[1,0]],
      "search":{"banana":1}})"),
                    "search.banana"));

  CHECK(rejected_at(json::parse(R"({"schema_version":1,"kind":"loewner",
      "intervals":[[1,-1]],"panels_per_interval":4,
      "values":[[0,0],[0,0],[0,0],[0,0],[0,0]]})"),
                    "intervals[0]"));
}

TEST_CASE("per-file settings override flags and forced flags override the file") {
  json j = json::parse(
      R"({"schema_version":1,"kind":"pick","z":[[0,0]],"w":[[0.5,0]],
          "tol":1e-06,"solve":true,"search":{"seed":5}})");
  RunOptions opt;
  opt.tol = 1e-9;
  SECTION("file tol wins over the flag default") {
    const auto out = run_problem(parse_problem(j), opt, fnv1a_digest(j.dump()));
    CHECK(out.report["settings"]["tol"].get<double>() == Catch::Approx(1e-6));
    CHECK(out.report["settings"]["search"]["seed"] == 5);
  }
  SECTION("an explicit seed flag overrides the file seed") {
    opt.seed = 9;
    const auto out = run_problem(parse_problem(j), opt, fnv1a_digest(j.dump()));
    CHECK(out.report["settings"]["search"]["seed"] == 9);
  }
}

TEST_CASE("reports are byte-identical across repeated runs") {
  const json j = json::parse(
      R"({"schema_version":1,"kind":"pick","z":[[0,0],[0.25,0]],"w":[[-2,0],[-3.5,0]],"solve":true})");
  const Problem p = parse_problem(j);
  const auto a = run_problem(p, RunOptions{}, fnv1a_digest(j.dump()));
  const auto b = run_problem(p, RunOptions{}, fnv1a_digest(j.dump()));
  CHECK(a.exit_code == 0);
  CHECK(a.report.dump(2) == b.report.dump(2));
}

TEST_CASE("a rational symbol with one interior pole has unit window rank") {
  const json j = json::parse(
      R"({"schema_version":1,"kind":"hankel","numerator":[[0,0],[1,0]],
          "denominator":[[-0.5,0],[1,0]],"window":6,"grid":512})");
  const auto out = run_problem(parse_problem(j), RunOptions{}, fnv1a_digest(j.dump()));
  CHECK(out.exit_code == 0);
  CHECK(out.report["kappa"] == 1);
  CHECK(out.report["diagnostics"]["gap_ratio"].get<double>() >= 10.0);
}

TEST_CASE("generated instances round-trip through serialization and runs") {
  SECTION("interpolation data") {
    std::mt19937_64 rng(21);
    const auto inst = random_pick_instance(rng, 2, 6);
    CHECK(inst.truth.kappa == 2);
    json j = problem_to_json(inst);
    j["solve"] = true;
    const auto out = run_problem(parse_problem(j), RunOptions{}, fnv1a_digest(j.dump()));
    CHECK(out.exit_code == 0);
    CHECK(out.report["kappa"] == 2);
    CHECK(out.report["solution"]["degree"] == 2);
    CHECK(out.report["solution"]["residual"].get<double>() <= 1e-6);
  }
  SECTION("coefficient data") {
    std::mt19937_64 rng(22);
    const auto inst = random_cf_instance(rng, 1, 6);
    CHECK(inst.truth.kappa == 1);
    json j = problem_to_json(inst);
    j["solve"] = true;
    const auto out = run_problem(parse_problem(j), RunOptions{}, fnv1a_digest(j.dump()));
    CHECK(out.exit_code == 0);
    CHECK(out.report["kappa"] == 1);
  }
  SECTION("commutant data") {
    std::mt19937_64 rng(11);
    const auto inst = random_sarason_instance(rng, 1, 4);
    json j = problem_to_json(inst);
    j["solve"] = true;
    j["grid"] = 256;
    const auto out = run_problem(parse_problem(j), RunOptions{}, fnv1a_digest(j.dump()));
    CHECK(out.exit_code == 0);
    CHECK(out.report["status"] == "Solved");
    CHECK(out.report["kappa"] == 1);
    CHECK(out.report["solution"]["residual"].get<double>() <= 1e-6);
  }
  SECTION("general-node data") {
    std::mt19937_64 rng(12);
    const auto inst = random_nudelman_instance(rng, 2, 5);
    const json j = problem_to_json(inst);
    const auto out = run_problem(parse_problem(j), RunOptions{}, fnv1a_digest(j.dump()));
    CHECK(out.exit_code == 0);
    CHECK(out.report["kappa"] == 2);
    CHECK(out.report["diagnostics"]["admissible_defect"].get<double>() <= 1e-8);
  }
  SECTION("line data through both kernels") {
    std::mt19937_64 rng(13);
    const auto inst = random_line_instance(rng, 1, 24);
    CHECK(inst.kappa == 1);
    const auto real_route = run_problem(parse_problem(problem_to_json(inst, "loewner-real")),
                                        RunOptions{}, fnv1a_digest("l"));
    CHECK(real_route.exit_code == 0);
    CHECK(real_route.report["kappa"] == 1);
    const auto complex_route = run_problem(parse_problem(problem_to_json(inst, "loewner")),
                                           RunOptions{}, fnv1a_digest("l"));
    CHECK(complex_route.exit_code == 0);
    CHECK(complex_route.report["kappa"] == 1);
  }
  SECTION("dual line data") {
    std::mt19937_64 rng(14);
    const auto inst = random_dual_instance(rng, 24);
    const auto out = run_problem(parse_problem(problem_to_json(inst, "dual-loewner")),
                                 RunOptions{}, fnv1a_digest("d"));
    CHECK(out.exit_code == 0);
    CHECK(out.report["kappa"] == 0);
    // the transform of a positive density points into the upper half-plane at i
    CHECK(out.report["diagnostics"]["k_at_i"][1].get<double>() > 0.0);
  }
  SECTION("disk boundary data") {
    std::mt19937_64 rng(15);
    CircleGrid grid(1024);
    const auto inst = random_disk_instance(rng, 1, grid);
    json j = problem_to_json(inst);
    j["trunc"] = 128;
    j["basis_count"] = 12;
    const auto out = run_problem(parse_problem(j), RunOptions{}, fnv1a_digest(j.dump()));
    CHECK(out.exit_code == 0);
    CHECK(out.report["kappa"] == 1);
    CHECK(out.report["diagnostics"]["n_neg_refined"] == 1);
  }
  SECTION("window rank data") {
    std::mt19937_64 rng(16);
    const auto inst = random_hankel_instance(rng, 2, 8);
    CHECK(inst.truth.kappa == 2);
    json j = problem_to_json(inst);
    j["grid"] = 512;
    const auto out = run_problem(parse_problem(j), RunOptions{}, fnv1a_digest(j.dump()));
    CHECK(out.exit_code == 0);
    CHECK(out.report["kappa"] == 2);
    CHECK(out.report["diagnostics"]["gap_ratio"].get<double>() >= 10.0);
  }
}
