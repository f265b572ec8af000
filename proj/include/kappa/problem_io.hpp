#pragma once

/// Problem/report file layer behind the CLI. Problems are JSON documents,
/// schema-validated before dispatch with unknown fields rejected and every
/// diagnostic carrying the offending field path. Reports are deterministic:
/// object keys serialize in sorted order and all numeric content is either
/// input-derived or produced by the (seeded) library routines, so re-running
/// the same input on the same tool version reproduces the bytes exactly.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kappa/circle_boundary.hpp"
#include "kappa/errors.hpp"
#include "kappa/generate.hpp"
#include "kappa/hermitian.hpp"
#include "kappa/interior_forms.hpp"
#include "kappa/line_boundary.hpp"
#include "kappa/model_space.hpp"
#include "kappa/nudelman.hpp"
#include "kappa/solvers.hpp"
#include "kappa/version.hpp"

namespace kappa {

using json = nlohmann::json;

/// Effective run settings from CLI flags; per-file fields override tol, grid
/// and trunc, while --solve and --seed act as forced overrides.
struct RunOptions {
  double tol = 1e-9;
  int grid = 4096;
  int trunc = 256;
  bool solve = false;
  std::optional<std::uint64_t> seed;
};

/// Parsed, validated problem. Only the fields for `kind` are populated.
struct Problem {
  std::string kind;
  std::vector<cx> points, values;            // pick: z, w
  std::vector<cx> w;                         // cf
  std::vector<cx> symbol_zeros;              // sarason
  Eigen::MatrixXcd commutant;                // sarason
  Eigen::MatrixXcd main;                     // nudelman: a
  Eigen::VectorXcd left, right;              // nudelman: b, c
  Eigen::VectorXcd disk_b, disk_c;           // boundary-disk
  std::vector<std::pair<double, double>> arcs;       // boundary-disk (optional)
  int basis_count = 16;                      // boundary-disk
  std::vector<std::pair<double, double>> intervals;  // line kinds
  int panels_per_interval = 0;
  Eigen::VectorXcd line_values;
  std::vector<cx> numerator, denominator;    // hankel symbol
  int window = 0;
  bool solve = false;
  std::optional<double> tol;
  std::optional<int> grid, trunc;
  std::optional<SearchConfig> search;
};

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& path, const std::string& what) {
  throw SchemaViolation(path + ": " + what);
}

inline double json_number(const json& v, const std::string& path) {
  if (!v.is_number()) schema_fail(path, "expected a number");
  return v.get<double>();
}

inline int json_int(const json& v, const std::string& path, long lo, long hi) {
  if (!v.is_number_integer()) schema_fail(path, "expected an integer");
  const long n = v.get<long>();
  if (n < lo || n > hi)
    schema_fail(path, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(n);
}

inline bool json_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) schema_fail(path, "expected a boolean");
  return v.get<bool>();
}

inline cx json_complex(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    schema_fail(path, "expected a [re, im] pair");
  return cx(v[0].get<double>(), v[1].get<double>());
}

inline std::vector<cx> json_complex_list(const json& v, const std::string& path,
                                         std::size_t min_size = 1) {
  if (!v.is_array()) schema_fail(path, "expected an array");
  if (v.size() < min_size)
    schema_fail(path, "needs at least " + std::to_string(min_size) + " entries");
  std::vector<cx> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(json_complex(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline Eigen::VectorXcd json_complex_vector(const json& v, const std::string& path,
                                            std::size_t min_size = 1) {
  const std::vector<cx> list = json_complex_list(v, path, min_size);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(list.size()));
  for (std::size_t i = 0; i < list.size(); ++i) out(static_cast<Eigen::Index>(i)) = list[i];
  return out;
}

inline Eigen::MatrixXcd json_complex_matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) schema_fail(path, "expected a nonempty array of rows");
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != cols)
      schema_fail(row_path, "expected a row of " + std::to_string(cols) + " entries");
    for (std::size_t j = 0; j < cols; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          json_complex(v[i][j], row_path + "[" + std::to_string(j) + "]");
  }
  return out;
}

inline std::vector<std::pair<double, double>> json_pair_list(const json& v,
                                                             const std::string& path) {
  if (!v.is_array() || v.empty()) schema_fail(path, "expected a nonempty array of [a, b] pairs");
  std::vector<std::pair<double, double>> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != 2) schema_fail(p, "expected an [a, b] pair");
    out.emplace_back(json_number(v[i][0], p + "[0]"), json_number(v[i][1], p + "[1]"));
  }
  return out;
}

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key())) schema_fail(item.key(), "unknown field");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Problem parsing
// ---------------------------------------------------------------------------

inline Problem parse_problem(const json& j) {
  using namespace detail;
  if (!j.is_object()) schema_fail("$", "problem file must be a JSON object");
  if (!j.contains("schema_version")) schema_fail("schema_version", "missing required field");
  if (json_int(j["schema_version"], "schema_version", 1, 1 << 20) != kSchemaVersion)
    schema_fail("schema_version", "unsupported version (tool speaks " +
                                      std::to_string(kSchemaVersion) + ")");
  if (!j.contains("kind") || !j["kind"].is_string())
    schema_fail("kind", "missing or non-string");
  Problem p;
  p.kind = j["kind"].get<std::string>();

  static const std::set<std::string> kinds = {"pick",     "cf",          "sarason",
                                              "nudelman", "boundary-disk", "loewner",
                                              "loewner-real", "dual-loewner", "hankel"};
  if (!kinds.count(p.kind)) schema_fail("kind", "unknown problem kind '" + p.kind + "'");

  std::set<std::string> allowed = {"schema_version", "kind", "tol", "grid", "trunc",
                                   "solve", "search"};
  const bool solvable = p.kind == "pick" || p.kind == "cf" || p.kind == "sarason";
  if (p.kind == "pick") {
    allowed.insert({"z", "w"});
  } else if (p.kind == "cf") {
    allowed.insert({"w"});
  } else if (p.kind == "sarason") {
    allowed.insert({"symbol_zeros", "commutant"});
  } else if (p.kind == "nudelman") {
    allowed.insert({"a", "b", "c"});
  } else if (p.kind == "boundary-disk") {
    allowed.insert({"b", "c", "arcs", "basis_count"});
  } else if (p.kind == "hankel") {
    allowed.insert({"numerator", "denominator", "window"});
  } else {  // the three half-line kinds
    allowed.insert({"intervals", "panels_per_interval", "values"});
  }
  reject_unknown(j, allowed);

  auto need = [&](const char* key) -> const json& {
    if (!j.contains(key)) schema_fail(key, "missing required field");
    return j[key];
  };

  if (j.contains("tol")) {
    const double t = json_number(j["tol"], "tol");
    if (!(t > 0.0) || t > 1.0) schema_fail("tol", "must be in (0, 1]");
    p.tol = t;
  }
  if (j.contains("grid")) {
    const int g = json_int(j["grid"], "grid", 8, 1 << 20);
    if ((g & (g - 1)) != 0) schema_fail("grid", "must be a power of two");
    p.grid = g;
  }
  if (j.contains("trunc")) p.trunc = json_int(j["trunc"], "trunc", 4, 1 << 16);
  if (j.contains("solve")) {
    p.solve = json_bool(j["solve"], "solve");
    if (p.solve && !solvable) schema_fail("solve", "not supported for kind '" + p.kind + "'");
  }
  if (j.contains("search")) {
    if (!solvable) schema_fail("search", "not supported for kind '" + p.kind + "'");
    const json& s = j["search"];
    if (!s.is_object()) schema_fail("search", "expected an object");
    for (const auto& item : s.items())
      if (item.key() != "multistart" && item.key() != "max_iterations" && item.key() != "seed")
        schema_fail("search." + item.key(), "unknown field");
    SearchConfig cfg;
    if (s.contains("multistart"))
      cfg.multistart = json_int(s["multistart"], "search.multistart", 1, 1024);
    if (s.contains("max_iterations"))
      cfg.max_iterations = json_int(s["max_iterations"], "search.max_iterations", 1, 1 << 20);
    if (s.contains("seed")) {
      if (!s["seed"].is_number_integer() || s["seed"].get<long long>() < 0)
        schema_fail("search.seed", "expected a nonnegative integer");
      cfg.seed = s["seed"].get<std::uint64_t>();
    }
    p.search = cfg;
  }

  if (p.kind == "pick") {
    p.points = json_complex_list(need("z"), "z");
    p.values = json_complex_list(need("w"), "w");
    if (p.points.size() != p.values.size()) schema_fail("w", "length differs from z");
  } else if (p.kind == "cf") {
    p.w = json_complex_list(need("w"), "w");
  } else if (p.kind == "sarason") {
    p.symbol_zeros = json_complex_list(need("symbol_zeros"), "symbol_zeros");
    p.commutant = json_complex_matrix(need("commutant"), "commutant");
    const auto n = static_cast<Eigen::Index>(p.symbol_zeros.size());
    if (p.commutant.rows() != n || p.commutant.cols() != n)
      schema_fail("commutant", "must be square with dimension = number of symbol zeros");
  } else if (p.kind == "nudelman") {
    p.main = json_complex_matrix(need("a"), "a");
    if (p.main.rows() != p.main.cols()) schema_fail("a", "must be square");
    p.left = json_complex_vector(need("b"), "b");
    p.right = json_complex_vector(need("c"), "c");
    if (p.left.size() != p.main.rows() || p.right.size() != p.main.rows())
      schema_fail("b", "b and c must match the dimension of a");
  } else if (p.kind == "boundary-disk") {
    p.disk_b = json_complex_vector(need("b"), "b", 4);
    p.disk_c = json_complex_vector(need("c"), "c", 4);
    if (p.disk_b.size() != p.disk_c.size()) schema_fail("c", "length differs from b");
    const auto n = p.disk_b.size();
    if ((n & (n - 1)) != 0) schema_fail("b", "sample count must be a power of two");
    if (j.contains("arcs")) p.arcs = json_pair_list(j["arcs"], "arcs");
    if (j.contains("basis_count"))
      p.basis_count = json_int(j["basis_count"], "basis_count", 1, static_cast<long>(n));
  } else if (p.kind == "hankel") {
    p.numerator = json_complex_list(need("numerator"), "numerator");
    p.denominator = json_complex_list(need("denominator"), "denominator");
    p.window = json_int(need("window"), "window", 1, 1 << 14);
  } else {
    p.intervals = json_pair_list(need("intervals"), "intervals");
    for (std::size_t i = 0; i < p.intervals.size(); ++i)
      if (!(p.intervals[i].first < p.intervals[i].second))
        schema_fail("intervals[" + std::to_string(i) + "]", "needs a < b");
    p.panels_per_interval =
        json_int(need("panels_per_interval"), "panels_per_interval", 1, 1 << 14);
    const std::size_t nodes =
        p.intervals.size() * (static_cast<std::size_t>(p.panels_per_interval) + 1);
    p.line_values = json_complex_vector(need("values"), "values", 2);
    if (static_cast<std::size_t>(p.line_values.size()) != nodes)
      schema_fail("values", "expected " + std::to_string(nodes) + " nodal samples");
    // The real-kernel and dual assemblies are only defined for real data;
    // plain loewner accepts complex samples.
    if (p.kind != "loewner")
      for (Eigen::Index k = 0; k < p.line_values.size(); ++k)
        if (std::abs(p.line_values(k).imag()) >
            1e-12 * std::max(1.0, std::abs(p.line_values(k))))
          schema_fail("values[" + std::to_string(k) + "]", "must be real for kind '" + p.kind +
                                                               "'");
    if (p.kind == "dual-loewner")
      for (Eigen::Index k = 0; k < p.line_values.size(); ++k)
        if (p.line_values(k).real() < -1e-12)
          schema_fail("values[" + std::to_string(k) + "]",
                      "dual data must be nonnegative");
  }
  return p;
}

// ---------------------------------------------------------------------------
// Report serialization helpers
// ---------------------------------------------------------------------------

inline json complex_to_json(cx z) { return json::array({z.real(), z.imag()}); }

inline json complex_list_to_json(const std::vector<cx>& v) {
  json out = json::array();
  for (cx z : v) out.push_back(complex_to_json(z));
  return out;
}

inline json vector_to_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

inline json matrix_to_json(const Eigen::MatrixXcd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

inline json inertia_to_json(const Inertia& in) {
  json out;
  out["n_neg"] = in.n_neg;
  out["n_pos"] = in.n_pos;
  out["n_zero"] = in.n_zero;
  out["spectrum"] = in.spectrum;
  return out;
}

inline json rational_to_json(const RationalFunction& f) {
  json out;
  out["num"] = complex_list_to_json(f.num().coeffs());
  out["den"] = complex_list_to_json(f.den().coeffs());
  return out;
}

inline json solution_to_json(const SolveReport& r) {
  json out;
  out["f"] = rational_to_json(r.pair.f);
  out["blaschke_zeros"] = complex_list_to_json(r.pair.B.zeros());
  out["blaschke_constant"] = complex_to_json(r.pair.B.constant());
  out["degree"] = r.pair.kappa;
  out["attempt_degree"] = r.attempt_degree;
  out["residual"] = r.interpolation_residual;
  out["class_margin"] = r.class_margin;
  out["objective"] = r.objective;
  if (r.matching_order >= 0) out["matching_order"] = r.matching_order;
  out["detail"] = r.detail;
  return out;
}

/// FNV-1a (64-bit) over the raw input bytes; prefixed so the hash family is
/// recorded alongside the value.
inline std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a:") + buf;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

struct RunOutcome {
  int exit_code = 0;
  json report;
};

inline int exit_code_for(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved: return 0;
    case SolveStatus::Infeasible: return 2;
    case SolveStatus::SearchFailed: return 3;
  }
  return 3;
}

/// Run a parsed problem and build its report. Schema-level and precondition
/// errors propagate as exceptions (the CLI maps them to exit 1); analytic
/// outcomes (Infeasible, SearchFailed, TruncationUnstable, NoCleanGap) are
/// encoded in the report and the exit code.
inline RunOutcome run_problem(const Problem& p, const RunOptions& opt,
                              const std::string& digest) {
  const double tol = p.tol.value_or(opt.tol);
  const int grid_n = p.grid.value_or(opt.grid);
  const int trunc = p.trunc.value_or(opt.trunc);
  const bool solve = p.solve || opt.solve;
  SearchConfig cfg = p.search.value_or(SearchConfig{});
  if (opt.seed) cfg.seed = *opt.seed;
  cfg.objective_tol = tol;  // one eigenvalue tolerance governs the whole report

  RunOutcome out;
  json& rep = out.report;
  rep["schema_version"] = kSchemaVersion;
  rep["tool_version"] = kToolVersion;
  rep["input_digest"] = digest;
  rep["kind"] = p.kind;
  {
    json settings;
    settings["tol"] = tol;
    settings["grid"] = grid_n;
    settings["trunc"] = trunc;
    settings["solve"] = solve;
    if (solve && (p.kind == "pick" || p.kind == "cf" || p.kind == "sarason")) {
      json sj;
      sj["multistart"] = cfg.multistart;
      sj["max_iterations"] = cfg.max_iterations;
      sj["seed"] = cfg.seed;
      settings["search"] = sj;
    }
    rep["settings"] = settings;
  }

  auto finish_certified = [&]() {
    rep["status"] = "Certified";
    out.exit_code = 0;
  };
  auto finish_solve = [&](const SolveReport& r) {
    rep["status"] = to_string(r.status);
    rep["certificate"] = inertia_to_json(r.certificate);
    rep["kappa"] = r.certificate.n_neg;
    rep["solution"] = solution_to_json(r);
    out.exit_code = exit_code_for(r.status);
  };

  if (p.kind == "pick") {
    const Inertia cert = inertia(pick_matrix(p.points, p.values), tol);
    rep["certificate"] = inertia_to_json(cert);
    rep["kappa"] = cert.n_neg;
    if (solve)
      finish_solve(solve_pick_kappa(p.points, p.values, cfg));
    else
      finish_certified();
  } else if (p.kind == "cf") {
    const Inertia cert = inertia(HermitianMatrix(cf_matrices(p.w).defect), tol);
    rep["certificate"] = inertia_to_json(cert);
    rep["kappa"] = cert.n_neg;
    if (solve)
      finish_solve(solve_cf_kappa(p.w, cfg));
    else
      finish_certified();
  } else if (p.kind == "sarason") {
    const ModelSpace M{BlaschkeProduct(p.symbol_zeros), grid_n};
    const CommutantCandidate cand(p.commutant, M);
    if (cand.commutation_residual > 1e-8)
      throw NotInCommutant("commutation residual " +
                           std::to_string(cand.commutation_residual));
    rep["diagnostics"] = {{"commutation_residual", cand.commutation_residual}};
    const Inertia cert = sarason_defect(cand, M, 1e-8, tol);
    rep["certificate"] = inertia_to_json(cert);
    rep["kappa"] = cert.n_neg;
    if (solve)
      finish_solve(solve_sarason(M, cand, cfg));
    else
      finish_certified();
  } else if (p.kind == "nudelman") {
    const NudelmanData data(p.main, p.left, p.right);
    json diag;
    diag["admissible_defect"] = data.admissible_defect();
    diag["spectral_radius"] = data.spectral_radius();
    rep["diagnostics"] = diag;
    const Inertia cert = inertia(nudelman_form(data), tol);
    rep["certificate"] = inertia_to_json(cert);
    rep["kappa"] = cert.n_neg;
    finish_certified();
  } else if (p.kind == "boundary-disk") {
    const CircleGrid grid(static_cast<int>(p.disk_b.size()), p.arcs);
    const BoundaryDataDisk data(p.disk_b, p.disk_c, grid);
    const int J = std::min(trunc, grid.size() / 4);
    try {
      const DiskFormResult res =
          boundary_form_disk(grid, data, monomial_basis(grid, p.basis_count), J, tol);
      rep["certificate"] = inertia_to_json(res.inertia);
      rep["kappa"] = res.inertia.n_neg;
      json diag;
      diag["n_neg_refined"] = res.n_neg_refined;
      diag["tail_estimate"] = res.tail_estimate;
      diag["zero_band"] = res.zero_band;
      diag["ratio_sup"] = res.ratio_sup;
      diag["snap_error"] = grid.snap_error();
      diag["basis_count"] = p.basis_count;
      diag["truncation"] = J;
      rep["diagnostics"] = diag;
      finish_certified();
    } catch (const TruncationUnstable& e) {
      rep["status"] = "TruncationUnstable";
      rep["error"] = e.what();
      out.exit_code = 3;
    }
  } else if (p.kind == "hankel") {
    const RationalFunction S(Polynomial(p.numerator), Polynomial(p.denominator));
    const CircleGrid grid(grid_n);
    if (p.window > grid.size() / 4) detail::schema_fail("window", "exceeds grid/4");
    Eigen::VectorXcd samples(grid.size());
    for (int m = 0; m < grid.size(); ++m) samples(m) = S.eval(grid.node(m));
    try {
      const HankelRankResult res = hankel_rank(grid, samples, p.window, p.tol.value_or(1e-6));
      rep["kappa"] = res.rank;
      json diag;
      diag["rank"] = res.rank;
      diag["gap_ratio"] = res.gap_ratio;
      diag["singular_values"] = res.singular_values;
      rep["diagnostics"] = diag;
      finish_certified();
    } catch (const NoCleanGap& e) {
      rep["status"] = "NoCleanGap";
      rep["error"] = e.what();
      out.exit_code = 3;
    }
  } else {  // the three half-line kinds
    const IntervalSet set(p.intervals, p.panels_per_interval);
    const BoundaryDataLine data(set, p.line_values);
    const auto basis = hat_basis(set);
    try {
      LineFormResult res;
      json diag;
      if (p.kind == "loewner") {
        res = loewner_form(set, data, basis, tol);
      } else if (p.kind == "loewner-real") {
        res = loewner_real_form(set, data, basis, tol);
      } else {
        res = dual_loewner_form(set, data, basis, tol);
        diag["k_at_i"] = complex_to_json(cauchy_transform(set, data, cx(0.0, 1.0)));
      }
      rep["certificate"] = inertia_to_json(res.inertia);
      rep["kappa"] = res.inertia.n_neg;
      diag["n_neg_refined"] = res.n_neg_refined;
      diag["model_defect"] = res.model_defect;
      diag["zero_band"] = res.zero_band;
      diag["node_count"] = set.node_count();
      rep["diagnostics"] = diag;
      finish_certified();
    } catch (const TruncationUnstable& e) {
      rep["status"] = "TruncationUnstable";
      rep["error"] = e.what();
      out.exit_code = 3;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Instance serialization (the `gen` command)
// ---------------------------------------------------------------------------

namespace detail {

inline json problem_header(const char* kind) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["kind"] = kind;
  return out;
}

}  // namespace detail

inline json problem_to_json(const PickInstance& inst) {
  json out = detail::problem_header("pick");
  out["z"] = complex_list_to_json(inst.points);
  out["w"] = complex_list_to_json(inst.values);
  return out;
}

inline json problem_to_json(const CfInstance& inst) {
  json out = detail::problem_header("cf");
  out["w"] = complex_list_to_json(inst.w);
  return out;
}

inline json problem_to_json(const SarasonInstance& inst) {
  json out = detail::problem_header("sarason");
  out["symbol_zeros"] = complex_list_to_json(inst.symbol_zeros);
  out["commutant"] = matrix_to_json(inst.commutant);
  return out;
}

inline json problem_to_json(const NudelmanInstance& inst) {
  json out = detail::problem_header("nudelman");
  out["a"] = matrix_to_json(inst.A);
  out["b"] = vector_to_json(inst.b);
  out["c"] = vector_to_json(inst.c);
  return out;
}

inline json problem_to_json(const DiskBoundaryInstance& inst) {
  json out = detail::problem_header("boundary-disk");
  out["b"] = vector_to_json(inst.b);
  out["c"] = vector_to_json(inst.c);
  return out;
}

inline json problem_to_json(const LineInstance& inst, const char* kind) {
  json out = detail::problem_header(kind);
  json iv = json::array();
  for (auto [a, b] : inst.intervals) iv.push_back(json::array({a, b}));
  out["intervals"] = iv;
  out["panels_per_interval"] = inst.panels_per_interval;
  out["values"] = vector_to_json(inst.values);
  return out;
}

inline json problem_to_json(const HankelInstance& inst) {
  json out = detail::problem_header("hankel");
  out["numerator"] = complex_list_to_json(inst.S.num().coeffs());
  out["denominator"] = complex_list_to_json(inst.S.den().coeffs());
  out["window"] = inst.window;
  return out;
}

/// Ground-truth sidecar for generated instances: the pair the data was
/// sampled from, so tests can compare solver output against a known witness.
inline json truth_to_json(const GeneratedPair& pair) {
  json out;
  out["kappa"] = pair.kappa;
  out["f"] = rational_to_json(pair.f);
  out["blaschke_zeros"] = complex_list_to_json(pair.B.zeros());
  return out;
}

inline json truth_to_json(const LineInstance& inst) {
  json out;
  out["kappa"] = inst.kappa;
  out["f0"] = rational_to_json(inst.f0);
  return out;
}

}  // namespace kappa
