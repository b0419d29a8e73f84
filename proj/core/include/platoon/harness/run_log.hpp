#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "platoon/world/truck_geometry.hpp"

namespace platoon {

// One control tick of one truck. Ground-truth columns come from the world
// state; the rest are what the truck itself measured or commanded.
struct TickRow {
  double t = 0.0;
  double v = 0.0;           // true speed
  double v_meas = 0.0;      // wheel encoder reading
  double v_ref = 0.0;       // reference fed to the velocity loop
  double v_bar_r = 0.0;     // saturated reference (relayed downstream)
  double d_meas = 0.0;      // lidar bumper gap; NaN when nothing tracked
  double d_ref = 0.0;       // gap setpoint in force
  double lat_err_gt = 0.0;  // signed front-bumper offset from the lane centre
  double e_l = 0.0;         // perceived preview lateral error
  double theta = 0.0;       // perceived heading error
  double delta = 0.0;       // steering command, rad
  double u = 0.0;           // motor duty command
  int mode = 0;             // SafetyMode as int
  int on_curve = 0;         // ground truth: tractor on an arc segment
};

struct Event {
  double t = 0.0;
  int truck = -1;  // Role as int; -1 = platoon-wide
  std::string kind;
  std::string detail;
};

// Per-truck aggregate figures over the whole log.
struct TruckSummary {
  double v_max = 0.0;
  double lat_rms = 0.0;
  double lat_max_abs = 0.0;
  double gap_min = 0.0;  // NaN when the truck never tracked a gap
  double gap_max = 0.0;
};

struct RunLog {
  std::string scenario;
  std::uint64_t seed = 0;
  double ts = 0.02;
  std::array<std::vector<TickRow>, 3> series;  // indexed by Role
  std::vector<Event> events;
  bool aborted = false;
  std::string abort_reason;

  std::size_t ticks() const { return series[0].size(); }
  TruckSummary summarize(Role r) const;
};

// Signed threshold test on the ground-truth lateral column: one event per
// entry into |lat_err_gt| > (lane_width - truck_width) / 2.
std::vector<Event> lane_departure_events(const RunLog& log, double lane_width,
                                         double truck_width);

// ---- Files ---------------------------------------------------------------

// Writes <dir>/LV.csv, FV1.csv, FV2.csv (documented fixed header; %.17g so a
// parse round-trips exactly), <dir>/events.csv and <dir>/summary.txt.
void export_csv(const RunLog& log, const std::string& dir);

// Two-column (t value) series of one metric for one truck, gnuplot-ready.
void export_plotdata(const RunLog& log, const std::string& metric,
                     const std::string& path);

// Rebuilds a RunLog from a directory written by export_csv.
RunLog import_csv(const std::string& dir);

// Named access to TickRow columns for plotting/comparison. Returns false on
// an unknown name. Valid names: v v_meas v_ref v_bar_r d_meas d_ref
// lat_err_gt e_l theta delta u mode on_curve.
bool metric_value(const TickRow& row, const std::string& metric, double& out);

// ---- Comparison ----------------------------------------------------------

struct MetricDelta {
  double max_abs = 0.0;
  double rms = 0.0;
};

struct CompareReport {
  std::size_t ticks_compared = 0;
  std::array<MetricDelta, 3> per_truck;
  std::vector<Event> only_in_a;
  std::vector<Event> only_in_b;
  std::string text;  // rendered human-readable report
};

// Aligns the two logs tick by tick (truncating to the shorter) and reports
// per-truck deltas of `metric` plus the event diff.
CompareReport compare_runs(const RunLog& a, const RunLog& b,
                           const std::string& metric);

// Writes both logs' series of `metric` side by side (t a b) per truck.
void export_compare_plotdata(const RunLog& a, const RunLog& b,
                             const std::string& metric,
                             const std::string& path);

}  // namespace platoon
