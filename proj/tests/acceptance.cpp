// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "lwlab/lwlab.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace lwlab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

using Rows = std::vector<InequalityReport>;

const InequalityReport* find(const Rows& rows, const std::string& check, const std::string& body) {
  for (const auto& r : rows)
    if (r.check_id == check && r.body_id == body) return &r;
  return nullptr;
}

int count_failed(const Rows& rows, const std::string& prefix = "") {
  int n = 0;
  for (const auto& r : rows)
    if (r.check_id.rfind(prefix, 0) == 0 && r.failed()) ++n;
  return n;
}

int count_rows(const Rows& rows, const std::string& prefix) {
  int n = 0;
  for (const auto& r : rows) n += r.check_id.rfind(prefix, 0) == 0;
  return n;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

SuiteConfig config(std::vector<int> dims, int trials) {
  SuiteConfig c;
  c.dims = std::move(dims);
  c.trials = trials;
  return c;
}

// Full-suite reports from the CLI, shared by criteria 9 to 11.
struct CliRuns {
  std::string single, multi;
  int rc_single = -1, rc_multi = -1;
  Rows rows;
};

CliRuns& cli_runs() {
  static CliRuns runs = [] {
    CliRuns r;
    const auto dir = std::filesystem::temp_directory_path();
    const std::string a = (dir / "lwlab_accept_t1.csv").string(), b = (dir / "lwlab_accept_t8.csv").string();
    const std::string base = std::string(LWLAB_CLI) + " verify --suite all --seed 42 --out ";
    r.rc_single = std::system(("LWLAB_THREADS=1 " + base + a + " 2> /dev/null").c_str());
    r.rc_multi = std::system(("LWLAB_THREADS=8 " + base + b + " 2> /dev/null").c_str());
    r.single = read_text(a);
    r.multi = read_text(b);
    r.rows = from_csv(r.single);
    return r;
  }();
  return runs;
}

Outcome planar_golden() {
  Outcome o;
  for (double l : {1.0, std::sqrt(2.0), 2.0}) {
    const LambdaResult r = lambda_tilde_planar(box2d(l));
    const double expected = std::pow(l, 4) / (std::pow(l, 4) + 1.0);
    o.require(std::abs(r.value - expected) <= 1e-6, "box2d(" + fmt(l) + ") = " + fmt(r.value));
    // Angle between w1 and the nearer diagonal direction (+-1/l, l).
    double off = INFINITY;
    for (double sx : {-1.0, 1.0}) {
      const Vec d = unit((Vec(2) << sx / l, l).finished());
      off = std::min(off, std::acos(std::min(1.0, std::abs(r.witness.col(0).dot(d)))));
    }
    o.require(off <= 1e-4, "box2d(" + fmt(l) + ") minimizer off diagonal by " + fmt(off));
  }
  const std::vector<RationalPoint> fhl{{Rational(0), Rational(1, 2)}, {Rational(1), Rational(1, 2)},
                                       {Rational(0), Rational(-1, 2)}, {Rational(-1), Rational(-1, 2)}};
  const auto root = exact_sqrt(exact_planar_ratio_squared(fhl, 2, 1));
  o.require(root && *root == Rational(3, 5), "exact parallelogram ratio is not 3/5");
  const Vec w = unit((Vec(2) << 2.0, 1.0).finished());
  Mat q(2, 2);
  q << w(0), -w(1), w(1), w(0);
  const double f = lambda_ratio(parallelogram_fhl(), q);
  o.require(std::abs(f - 0.6) <= 1e-12, "float parallelogram ratio " + fmt(f));
  if (o.ok) o.detail = "box values and ratio 3/5 exact";
  return o;
}

Outcome isotropic_constants() {
  Outcome o;
  const double sq = isotropic_constant(cube(2)), tri = isotropic_constant(simplex(2)), disk = isotropic_constant(ngon(64));
  o.require(std::abs(sq - 1.0 / std::sqrt(12.0)) <= 1e-9, "square " + fmt(sq));
  o.require(std::abs(tri - 1.0 / (std::sqrt(6.0) * std::pow(3.0, 0.25))) <= 1e-9, "triangle " + fmt(tri));
  o.require(std::abs(disk - 0.5 / std::sqrt(std::numbers::pi)) <= 1e-3, "64-gon " + fmt(disk));
  if (o.ok) o.detail = "square, triangle, 64-gon";
  return o;
}

Outcome hensley() {
  Outcome o;
  SuiteConfig c = config({2, 3, 4}, 200);
  c.directions = 20;
  const Rows rows = run_suite("hensley", c);
  o.require(count_rows(rows, "hensley-lower") == 600, "expected 600 bodies");
  o.require(count_failed(rows) == 0, std::to_string(count_failed(rows)) + " violations");
  for (int n : {2, 3, 4}) {
    const auto* r = find(rows, "hensley-cube-equality", "cube(" + std::to_string(n) + ")");
    o.require(r && std::abs(r->margin) <= 1e-12, "cube equality n=" + std::to_string(n));
  }
  const auto* l1 = find(rows, "hensley-l1-equality", "cross-polytope(2)");
  o.require(l1 && std::abs(l1->margin) <= 1e-9, "l1 equality");
  if (o.ok) o.detail = "600 bodies x 20 directions, equality cases";
  return o;
}

Outcome sandwich() {
  Outcome o;
  const Rows rows = run_suite("thm1", config({2, 3, 4}, 34));
  o.require(count_rows(rows, "thm1-upper") == 102, "expected 102 bodies");
  o.require(count_failed(rows) == 0, std::to_string(count_failed(rows)) + " failed rows");
  if (o.ok) o.detail = "102 bodies, upper, certificate and isotropic lower rows";
  return o;
}

Outcome lw_meyer() {
  Outcome o;
  const SuiteConfig c = config({2, 3, 4}, 100);
  const Rows lw = run_suite("lw", c), meyer = run_suite("meyer", c);
  o.require(lw.size() == 300 && meyer.size() == 300, "expected 300 rows each");
  o.require(count_failed(lw) + count_failed(meyer) == 0, "violations");
  o.require(meyer_constant(2) == 0.5, "Meyer constant at n=2 is " + fmt(meyer_constant(2)));
  o.require(std::abs(meyer_constant(3) - std::sqrt(6.0) / std::pow(3.0, 1.5)) <= 1e-15, "Meyer constant at n=3");
  if (o.ok) o.detail = "300 + 300 rows, constant 1/2 at n=2";
  return o;
}

Outcome petty_zhang() {
  Outcome o;
  const double tri = petty_zhang_check(simplex(2)).lower.rhs;
  const double disk = petty_zhang_check(ngon(64)).upper.lhs;
  const double sq = petty_zhang_check(cube(2)).lower.rhs;
  o.require(std::abs(tri / 1.5 - 1.0) <= 0.01, "triangle " + fmt(tri));
  o.require(std::abs(disk / (std::numbers::pi * std::numbers::pi / 4.0) - 1.0) <= 0.01, "64-gon " + fmt(disk));
  o.require(std::abs(sq / 2.0 - 1.0) <= 0.01, "square " + fmt(sq));
  o.detail = "triangle " + fmt(tri) + ", 64-gon " + fmt(disk) + ", square " + fmt(sq);
  return o;
}

Outcome cross_polytope_frames() {
  Outcome o;
  const Rows rows = run_suite("thm3", config({3, 4}, 50));
  o.require(count_rows(rows, "thm3-cross") == 150, "expected 150 (body, d) cases");
  o.require(count_failed(rows) == 0, std::to_string(count_failed(rows)) + " failed rows");
  const auto* r = find(rows, "thm3", "rand-n3-t0-d2");
  o.require(r && std::abs(r->constant - 10.0 / 36.0) <= 1e-15, "constant at n=3, d=2");
  if (o.ok) o.detail = "n=3 d=2 and n=4 d=2,3, 50 bodies each";
  return o;
}

Outcome agj_restricted() {
  Outcome o;
  const SuiteConfig c = config({3}, 50);
  const Rows agj = run_suite("agj", c), rlw = run_suite("restricted-lw", c);
  o.require(count_rows(agj, "agj") == 51 && count_rows(rlw, "restricted-lw") == 100, "row counts");
  o.require(count_failed(agj) + count_failed(rlw) == 0, "violations");
  for (const auto& r : agj)
    if (r.body_id != "cube(2)") o.require(std::abs(r.constant - 10.0 / 9.0) <= 1e-15, "AGJ constant");
  for (const auto& r : rlw) o.require(std::abs(r.constant - 4.0 / 3.0) <= 1e-15, "restricted LW constant");
  if (o.ok) o.detail = "50 bodies, constants 10/9 and 4/3";
  return o;
}

Outcome uniform_covers() {
  Outcome o;
  for (std::uint64_t s : {1u, 2u, 3u}) {
    const Polytope k = gen_random_body(3, 12, false, s);
    const double a = lambda_cover_search(k, singleton_cover(3), 8).value, b = lambda_tilde(k, 8).value;
    o.require(std::abs(a - b) <= 1e-8, "singleton cover differs by " + fmt(a - b));
    o.require(lambda_cover_search(k, trivial_cover(3), 2).value == 1.0, "trivial cover is not 1");
  }
  const UniformCover pairs{{{1, 2}, {3, 4}, {1, 3}, {2, 4}}, {0.5, 0.5, 0.5, 0.5}};
  const LambdaResult cp = lambda_cover_search(cube(4), pairs, 4);
  o.require(cp.value <= 1.0 + 1e-9, "cube pairs value " + fmt(cp.value));
  const Rows& rows = cli_runs().rows;
  o.require(count_rows(rows, "thm2-certificate") > 0, "no cover rows in the full report");
  for (const auto& r : rows)
    if (r.check_id.rfind("thm2", 0) == 0) {
      o.require(!r.failed(), r.check_id + " " + r.body_id + " " + to_string(r.status));
      if (r.check_id == "thm2-certificate") o.require(std::isfinite(r.rhs), "certificate not finite");
    }
  const Rows snap = from_csv(read_text(LWLAB_SNAPSHOT));
  Rows mine;
  for (const auto& r : rows)
    if (r.check_id == "thm2-constant") mine.push_back(r);
  const auto diffs = apply_snapshot(mine, snap);
  o.require(diffs.empty(), std::to_string(diffs.size()) + " snapshot differences");
  o.require(count_failed(mine) == 0, "constant rows drifted");
  if (o.ok) o.detail = "singleton, trivial, cube pairs; search <= certificate; constants match snapshot";
  return o;
}

Outcome section_pipeline() {
  Outcome o;
  Rows rows;
  for (const auto& r : cli_runs().rows)
    if (r.check_id == "thm4") rows.push_back(r);
  o.require(rows.size() == 20, "expected 20 rows, got " + std::to_string(rows.size()));
  for (const auto& r : rows) o.require(r.status == Status::report && std::isfinite(r.constant) && r.constant > 0, r.body_id);
  const auto diffs = apply_snapshot(rows, from_csv(read_text(LWLAB_SNAPSHOT)));
  o.require(diffs.empty(), std::to_string(diffs.size()) + " snapshot differences");
  o.require(count_failed(rows) == 0, "drift beyond 5%");
  // Drift detection itself: a 10% change must be flagged.
  Rows moved = rows;
  if (!moved.empty()) moved[0].rhs *= 1.1;
  apply_snapshot(moved, from_csv(read_text(LWLAB_SNAPSHOT)));
  o.require(!moved.empty() && moved[0].status == Status::drift, "drift not flagged");
  if (o.ok) o.detail = "20 bodies, C_emp finite and within 5% of snapshot";
  return o;
}

Outcome determinism() {
  Outcome o;
  const CliRuns& r = cli_runs();
  o.require(r.rc_single == 0 && r.rc_multi == 0, "verify exited nonzero");
  o.require(!r.single.empty() && r.single == r.multi, "reports differ between 1 and 8 threads");
  const auto diffs = [&] {
    Rows rows = r.rows;
    return apply_snapshot(rows, from_csv(read_text(LWLAB_SNAPSHOT)));
  }();
  o.require(diffs.empty(), std::to_string(diffs.size()) + " differences from the committed snapshot");
  if (o.ok) o.detail = std::to_string(r.rows.size()) + " rows, byte-identical";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no runtime limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "planar golden values", 10, planar_golden},
      {2, "isotropic constants", 0, isotropic_constants},
      {3, "Hensley suite", 120, hensley},
      {4, "lambda sandwich", 600, sandwich},
      {5, "classical LW and Meyer", 0, lw_meyer},
      {6, "Petty-Zhang extremals", 60, petty_zhang},
      {7, "cross-polytope frames", 600, cross_polytope_frames},
      {8, "AGJ and restricted LW", 0, agj_restricted},
      {9, "uniform covers", 0, uniform_covers},
      {10, "sums of sections pipeline", 0, section_pipeline},
      {11, "determinism across thread counts", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs >= c.limit_s) o.require(false, "runtime over " + fmt(c.limit_s) + " s");
    failed += !o.ok;
    std::printf("criterion %2d %s  %s (%.1f s): %s\n", c.id, o.ok ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
