#pragma once

#include <array>
#include <vector>

#include "platoon/perception/birds_eye.hpp"
#include "platoon/sensors/camera_model.hpp"

namespace platoon {

struct LaneDetectConfig {
  int n_windows = 9;        // stacked vertically per lane line
  int margin = 40;          // half-width of each search window, px
  int recenter_min = 30;    // pixels needed to slide the next window
  int min_count = 30;       // pixels needed for a window to feed the fit
  double max_area_frac = 0.5;  // above this fill ratio the window is noise
  double max_col_std = 8.0;    // px; wider scatter is not a lane line
  double quality_min = 0.2;    // fraction of trustworthy windows required
  double lookahead = 0.8;      // metres ahead of the bumper to read the path
  double lane_width = 0.45;    // m; offsets a single-line fit to the centre
};

struct WindowStat {
  double center = 0.0;  // column the window was searched around
  int count = 0;
  double col_std = 0.0;
  bool fit_used = false;     // enough pixels to feed the polynomial fit
  bool trustworthy = false;  // also passed the fill/scatter checks
};

struct LaneEstimate {
  bool valid = false;    // freshly measured this frame (vs held)
  double quality = 0.0;  // trustworthy windows / total windows, this frame
  double lateral_offset = 0.0;       // +: truck left of path, at the truck
  double lateral_at_lookahead = 0.0;  // same sign, at the lookahead point
  double heading_error = 0.0;         // rad, +: nose points left of path
};

// Number of bottom rows of the top-down image to keep when the vehicle
// ahead is `gap_m` away; everything above (farther) is masked out.
int dynamic_roi_rows(double gap_m, const BevSpec& spec);

// Sliding-window lane-line search over the binary top-down image, quadratic
// fit per line, and conversion of the averaged centreline to metric offsets.
// When a frame yields no usable fit the previous offsets are held.
class LaneDetector {
 public:
  explicit LaneDetector(LaneDetectConfig cfg = {}, BevSpec spec = {});

  // `keep_rows`: bottom rows to search (see dynamic_roi_rows); pass
  // spec().height to search the full image.
  LaneEstimate update(const BevImage& bev, int keep_rows);

  const LaneEstimate& last() const { return last_; }
  const std::vector<WindowStat>& left_windows() const { return left_win_; }
  const std::vector<WindowStat>& right_windows() const { return right_win_; }
  const BevSpec& spec() const { return spec_; }

 private:
  struct SideFit {
    bool ok = false;
    // col = a2*t^2 + a1*t + a0 with t = (row - H/2) / (H/2)
    double a2 = 0.0, a1 = 0.0, a0 = 0.0;
    int trustworthy = 0;
  };

  SideFit scan_side(const BevImage& bev, int top_cut, double base_col,
                    std::vector<WindowStat>& stats) const;

  LaneDetectConfig cfg_;
  BevSpec spec_;
  LaneEstimate last_;
  std::vector<WindowStat> left_win_, right_win_;
};

}  // namespace platoon
