#include "lwlab/report.hpp"
#include "lwlab/suites.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

using namespace lwlab;

namespace {

const InequalityReport* find(const std::vector<InequalityReport>& rows, const std::string& check, const std::string& body) {
  for (const auto& r : rows)
    if (r.check_id == check && r.body_id == body) return &r;
  return nullptr;
}

std::string tmp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / ("lwlab_" + name)).string(); }

int run(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Report, EmptyIsHeaderOnly) { EXPECT_EQ(to_csv({}), std::string(kCsvHeader) + "\n"); }

TEST(Report, PassRule) {
  EXPECT_EQ(make_check("c", "b", 2, 1.0, 1.0, 1.0).status, Status::pass);
  EXPECT_EQ(make_check("c", "b", 2, 1.0 + 1e-10, 1.0, 1.0).status, Status::pass);
  EXPECT_EQ(make_check("c", "b", 2, 1.0 + 1e-6, 1.0, 1.0).status, Status::fail);
  EXPECT_EQ(make_check("c", "b", 2, 1.0 + 1e-6, 1.0, 1.0, 2e-6).status, Status::pass);
  EXPECT_EQ(make_record("c", "b", 2, 1.0, -1.0, 1.0).status, Status::fail);
  EXPECT_EQ(make_record("c", "b", 2, 1.0, 3.0, 1.0).status, Status::report);
  EXPECT_TRUE(make_error("c", "b", 2, "boom").failed());
}

TEST(Report, JsonCsvRoundTrip) {
  std::vector<InequalityReport> rows{make_check("a", "body,with \"quotes\"", 3, 0.1, 1.0 / 3.0, std::sqrt(2.0), 1e-7, "w=[1,2]"),
                                     make_record("b", "x", 2, 2.5e-300, 7.0, 1.0), make_error("c", "y", 4, "bad, input")};
  const auto back_json = from_json(nlohmann::json::parse(to_json(rows).dump()));
  const auto back_csv = from_csv(to_csv(back_json));
  ASSERT_EQ(back_csv.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back_csv[i].check_id, rows[i].check_id);
    EXPECT_EQ(back_csv[i].body_id, rows[i].body_id);
    EXPECT_EQ(back_csv[i].status, rows[i].status);
    EXPECT_EQ(back_csv[i].witness, rows[i].witness);
    EXPECT_EQ(format_number(back_csv[i].lhs), format_number(rows[i].lhs));
    EXPECT_EQ(format_number(back_csv[i].rhs), format_number(rows[i].rhs));
    EXPECT_EQ(format_number(back_csv[i].margin), format_number(rows[i].margin));
  }
  EXPECT_EQ(to_csv(back_csv), to_csv(rows));
}

TEST(Report, SnapshotFlagsFlipsAndDrift) {
  std::vector<InequalityReport> snap{make_check("a", "1", 2, 1.0, 2.0, 1.0), make_record("r", "1", 2, 1.0, 2.0, 1.0),
                                     make_record("r", "2", 2, 1.0, 2.0, 1.0)};
  std::vector<InequalityReport> now{make_check("a", "1", 2, 3.0, 2.0, 1.0), make_record("r", "1", 2, 1.0, 2.2, 1.0),
                                    make_record("r", "2", 2, 1.0, 2.04, 1.0)};
  const auto diffs = apply_snapshot(now, snap);
  EXPECT_EQ(diffs.size(), 2u);
  EXPECT_EQ(now[0].status, Status::fail);
  EXPECT_EQ(now[1].status, Status::drift);
  EXPECT_EQ(now[2].status, Status::report);
}

TEST(Suites, ConfigValidation) {
  SuiteConfig bad;
  bad.dims = {6};
  EXPECT_THROW(run_suite("lw", bad), std::invalid_argument);
  EXPECT_THROW(run_suite("nope", SuiteConfig{}), std::invalid_argument);
}

TEST(Suites, LoomisWhitneyFiftyRows) {
  SuiteConfig cfg;
  cfg.dims = {3};
  cfg.trials = 50;
  cfg.seed = 1;
  const auto rows = run_suite("lw", cfg);
  ASSERT_EQ(rows.size(), 50u);
  for (const auto& r : rows) EXPECT_EQ(r.status, Status::pass) << r.body_id;
}

TEST(Suites, PlanarGoldenRows) {
  const auto rows = run_suite("planar", SuiteConfig{});
  const auto* b1 = find(rows, "planar-box", "box2d(1)");
  const auto* b2 = find(rows, "planar-box", "box2d(sqrt2)");
  const auto* f = find(rows, "planar-fhl-exact", "parallelogram-fhl");
  ASSERT_TRUE(b1 && b2 && f);
  EXPECT_NEAR(b1->lhs, 0.5, 1e-6);
  EXPECT_NEAR(b2->lhs, 0.8, 1e-6);
  EXPECT_NEAR(f->lhs, 0.6, 1e-12);
  EXPECT_FALSE(any_failed(rows));
}

TEST(Suites, PettyZhangTriangleRow) {
  const auto rows = run_suite("petty-zhang", SuiteConfig{});
  const auto* t = find(rows, "petty-zhang-lower", "simplex(2)");
  ASSERT_TRUE(t);
  EXPECT_NEAR(t->margin / t->lhs, 0.0, 0.01);
  EXPECT_FALSE(any_failed(rows));
}

TEST(Suites, ThreadCountInvariance) {
  SuiteConfig cfg;
  cfg.trials = 3;
  cfg.restarts = 4;
  std::string first;
  for (const char* threads : {"1", "4"}) {
    setenv("LWLAB_THREADS", threads, 1);
    std::string text;
    for (const char* id : {"hensley", "thm1", "thm3", "agj"}) text += to_csv(run_suite(id, cfg));
    if (first.empty())
      first = text;
    else
      EXPECT_EQ(text, first);
  }
  unsetenv("LWLAB_THREADS");
}

TEST(Cli, GenAndIsotropy) {
  const std::string body = tmp_path("square.json");
  ASSERT_EQ(run(std::string(LWLAB_CLI) + " gen --shape named --name 'cube(2)' --out " + body), 0);
  const std::string out = tmp_path("iso.json");
  ASSERT_EQ(run(std::string(LWLAB_CLI) + " isotropy " + body + " > " + out), 0);
  const auto j = nlohmann::json::parse(read_text(out));
  EXPECT_NEAR(j.at("L").get<double>(), 1.0 / std::sqrt(12.0), 1e-12);
}

TEST(Cli, SubcommandsRun) {
  const std::string cli = LWLAB_CLI;
  const std::string body = tmp_path("rand.json");
  ASSERT_EQ(run(cli + " gen --shape random --dim 3 --points 12 --seed 7 --out " + body), 0);
  EXPECT_EQ(run(cli + " zp " + body + " --p 2 --dir 1,0,0 > /dev/null"), 0);
  EXPECT_EQ(run(cli + " paouris " + body + " --subspace e1,e2 > /dev/null"), 0);
  EXPECT_EQ(run(cli + " pistar " + body + " --volume --section e1,e2 --witness > /dev/null"), 0);
  EXPECT_EQ(run(cli + " lambda " + body + " --restarts 4 > /dev/null"), 0);
  EXPECT_EQ(run(cli + " lambda 'box2d(2)' --method scan > /dev/null"), 0);
  const std::string cover = tmp_path("cover.json");
  write_text(cover, R"({"sets": [[1, 2], [2, 3]], "weights": [0.5, 0.5]})");
  EXPECT_NE(run(cli + " lambda " + body + " --cover " + cover + " 2> /dev/null"), 0);
  EXPECT_NE(run(cli + " zp " + body + " --p 0.5 --dir 1,0,0 2> /dev/null"), 0);
}

TEST(Cli, VerifyExitCodeAndSnapshot) {
  const std::string cli = LWLAB_CLI;
  const std::string csv = tmp_path("lw.csv"), json = tmp_path("lw.json");
  ASSERT_EQ(run(cli + " verify --suite lw --dim 2,3 --trials 4 --seed 5 --out " + csv + " --json " + json + " 2> /dev/null"), 0);
  const auto rows = from_csv(read_text(csv));
  EXPECT_EQ(rows.size(), 8u);
  EXPECT_EQ(from_json(nlohmann::json::parse(read_text(json))).size(), 8u);
  // A snapshot expecting other values for report rows flags drift and fails.
  const std::string p = tmp_path("paouris.csv");
  ASSERT_EQ(run(cli + " verify --suite paouris --dim 3 --trials 1 --out " + p + " 2> /dev/null"), 0);
  auto snap = from_csv(read_text(p));
  for (auto& r : snap) r.rhs *= 1.5;
  const std::string snap_path = tmp_path("snap.csv");
  write_text(snap_path, to_csv(snap));
  EXPECT_NE(run(cli + " verify --suite paouris --dim 3 --trials 1 --snapshot " + snap_path + " > /dev/null 2>&1"), 0);
  EXPECT_EQ(run(cli + " verify --suite paouris --dim 3 --trials 1 --snapshot " + p + " > /dev/null 2>&1"), 0);
}
