#include "platoon/harness/simulator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "platoon/harness/run_log.hpp"
#include "platoon/harness/scenario.hpp"

namespace platoon {
namespace {

// Small, fast spec for loop-level tests: low-res cameras, quiet links.
ScenarioSpec smoke_spec(double duration) {
  ScenarioSpec spec;
  spec.name = "smoke";
  spec.duration = duration;
  spec.seed = 7;
  spec.camera.width = 160;
  spec.camera.height = 120;
  spec.profile = {{0.0, 0.8, 1.0}};
  return spec;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in.good()) << path;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TEST(Harness, ZeroDurationRunYieldsEmptySeriesAndNoEvents) {
  const RunLog log = run_scenario(smoke_spec(0.0));
  EXPECT_EQ(log.ticks(), 0u);
  for (const auto& s : log.series) EXPECT_TRUE(s.empty());
  EXPECT_TRUE(log.events.empty());
  EXPECT_FALSE(log.aborted);
}

TEST(Harness, TrucksSpinUpAndHoldTheCommandedGap) {
  const RunLog log = run_scenario(smoke_spec(20.0));
  ASSERT_EQ(log.ticks(), 1000u);
  EXPECT_FALSE(log.aborted);
  for (int truck = 0; truck < 3; ++truck) {
    const TickRow& last = log.series[truck].back();
    EXPECT_NEAR(last.v, 0.8, 0.05) << role_name(static_cast<Role>(truck));
    EXPECT_EQ(last.mode, 0);
  }
  // Followers settle near the 1.0 m setpoint.
  for (int truck = 1; truck < 3; ++truck) {
    const TickRow& last = log.series[truck].back();
    EXPECT_NEAR(last.d_meas, 1.0, 0.15) << role_name(static_cast<Role>(truck));
  }
  // Everyone stayed in lane the whole run.
  for (const Event& e : log.events) EXPECT_NE(e.kind, "lane_departure");
}

TEST(Harness, RepeatRunsAreByteIdenticalAndParallelMatchesSerial) {
  const ScenarioSpec spec = smoke_spec(4.0);
  const std::string base = testing::TempDir() + "/determinism";

  RunOptions serial;
  RunOptions parallel;
  parallel.parallel_sensing = true;

  export_csv(run_scenario(spec, serial), base + "/a");
  export_csv(run_scenario(spec, serial), base + "/b");
  export_csv(run_scenario(spec, parallel), base + "/c");

  for (const char* file : {"LV.csv", "FV1.csv", "FV2.csv", "events.csv"}) {
    const std::string a = slurp(base + "/a/" + file);
    EXPECT_EQ(a, slurp(base + "/b/" + file)) << file;
    EXPECT_EQ(a, slurp(base + "/c/" + file)) << file;
  }
  EXPECT_GT(slurp(base + "/a/LV.csv").size(), 1000u);
}

TEST(Harness, DifferentSeedsChangeTheNoiseButNotTheOutcome) {
  ScenarioSpec spec = smoke_spec(4.0);
  const RunLog a = run_scenario(spec);
  spec.seed = 8;
  const RunLog b = run_scenario(spec);
  ASSERT_EQ(a.ticks(), b.ticks());
  const CompareReport rep = compare_runs(a, b, "v_meas");
  EXPECT_GT(rep.per_truck[0].max_abs, 0.0);  // noise differs...
  double worst = 0.0;
  for (const auto& d : rep.per_truck) worst = std::max(worst, d.max_abs);
  EXPECT_LT(worst, 0.2) << "...but the closed loop stays on plan";
}

TEST(Harness, ClosingTheGapToZeroAbortsWithACollisionEvent) {
  ScenarioSpec spec = smoke_spec(30.0);
  // Command an impossible gap: the followers drive into the trailer ahead.
  spec.profile = {{0.0, 0.5, 1.0}, {5.0, 0.5, 1.0}, {5.0, 0.5, 0.0}};
  const RunLog log = run_scenario(spec);
  EXPECT_TRUE(log.aborted);
  EXPECT_EQ(log.abort_reason, "collision");
  EXPECT_LT(log.ticks(), 1500u);  // partial log: stopped before the horizon
  EXPECT_GT(log.ticks(), 250u);   // ...but after the gap command dropped
  bool saw = false;
  for (const Event& e : log.events) saw = saw || e.kind == "collision";
  EXPECT_TRUE(saw);
}

TEST(Harness, CsvExportImportRoundTripsExactly) {
  const RunLog log = run_scenario(smoke_spec(2.0));
  const std::string dir = testing::TempDir() + "/roundtrip";
  export_csv(log, dir);
  const RunLog back = import_csv(dir);
  ASSERT_EQ(back.ticks(), log.ticks());
  for (const char* metric :
       {"v", "v_meas", "v_ref", "v_bar_r", "d_meas", "d_ref", "lat_err_gt",
        "e_l", "theta", "delta", "u", "mode", "on_curve"}) {
    const CompareReport rep = compare_runs(log, back, metric);
    for (const auto& d : rep.per_truck) {
      EXPECT_EQ(d.max_abs, 0.0) << metric;
    }
  }
  EXPECT_TRUE(compare_runs(log, back, "v").only_in_a.empty());
  EXPECT_TRUE(compare_runs(log, back, "v").only_in_b.empty());
}

TEST(Harness, CompareFlagsInjectedDifferences) {
  const RunLog a = run_scenario(smoke_spec(2.0));
  RunLog b = a;
  b.series[1][50].v += 0.25;
  b.events.push_back({0.5, 1, "synthetic", "extra"});
  const CompareReport rep = compare_runs(a, b, "v");
  EXPECT_DOUBLE_EQ(rep.per_truck[1].max_abs, 0.25);
  EXPECT_DOUBLE_EQ(rep.per_truck[0].max_abs, 0.0);
  ASSERT_EQ(rep.only_in_b.size(), 1u);
  EXPECT_EQ(rep.only_in_b[0].kind, "synthetic");
  EXPECT_FALSE(rep.text.empty());
}

TEST(Harness, LaneDepartureEventsFireOncePerExcursion) {
  RunLog log;
  auto push = [&](double lat) {
    TickRow r;
    r.t = log.series[0].size() * 0.02;
    r.lat_err_gt = lat;
    for (auto& s : log.series) s.push_back(r);
  };
  // Threshold is (0.45 - 0.30) / 2 = 0.075 from the lane centre.
  push(0.0);
  push(0.08);   // first excursion starts
  push(0.09);   // still out: no second event
  push(0.02);   // back in lane
  push(-0.10);  // second excursion, other side
  const std::vector<Event> ev = lane_departure_events(log, 0.45, 0.30);
  ASSERT_EQ(ev.size(), 6u);  // 2 excursions x 3 trucks
  EXPECT_EQ(ev[0].kind, "lane_departure");
  EXPECT_DOUBLE_EQ(ev[0].t, 0.02);
}

TEST(Harness, PlotDataCoversAllTrucksInGnuplotBlocks) {
  const RunLog log = run_scenario(smoke_spec(1.0));
  const std::string path = testing::TempDir() + "/plot.dat";
  export_plotdata(log, "v", path);
  const std::string text = slurp(path);
  EXPECT_NE(text.find("# LV v"), std::string::npos);
  EXPECT_NE(text.find("# FV1 v"), std::string::npos);
  EXPECT_NE(text.find("# FV2 v"), std::string::npos);
  EXPECT_THROW(export_plotdata(log, "bogus", path), std::invalid_argument);
}

}  // namespace
}  // namespace platoon
