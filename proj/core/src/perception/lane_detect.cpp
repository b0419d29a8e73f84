#include "platoon/perception/lane_detect.hpp"

#include <algorithm>
#include <cmath>

namespace platoon {

namespace {

// Solves the symmetric 3x3 system for a least-squares parabola. Returns
// false when the design matrix is (numerically) singular.
bool solve3(double m[3][4]) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) < 1e-9) return false;
    if (pivot != col) std::swap(m[pivot], m[col]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  for (int r = 0; r < 3; ++r) m[r][3] /= m[r][r];
  return true;
}

}  // namespace

int dynamic_roi_rows(double gap_m, const BevSpec& spec) {
  const long rows = std::lround(gap_m * spec.px_per_m_forward);
  return static_cast<int>(std::clamp<long>(rows, 0, spec.height));
}

LaneDetector::LaneDetector(LaneDetectConfig cfg, BevSpec spec)
    : cfg_(cfg), spec_(spec) {}

LaneDetector::SideFit LaneDetector::scan_side(
    const BevImage& bev, int top_cut, double base_col,
    std::vector<WindowStat>& stats) const {
  const int h = bev.height, w = bev.width;
  const double half_h = 0.5 * h;
  SideFit fit;
  stats.assign(cfg_.n_windows, {});

  // Accumulators for the parabola col(t), t = (row - h/2) / (h/2).
  double n = 0, st = 0, st2 = 0, st3 = 0, st4 = 0, sc = 0, sct = 0, sct2 = 0;
  int fit_windows = 0;
  double center = base_col;

  for (int i = 0; i < cfg_.n_windows; ++i) {
    const int lo_row =
        std::max(h - static_cast<int>(std::lround((i + 1.0) * h /
                                                  cfg_.n_windows)),
                 top_cut);
    const int hi_row =
        h - static_cast<int>(std::lround(static_cast<double>(i) * h /
                                         cfg_.n_windows));
    const int lo_col = std::max(0, static_cast<int>(center) - cfg_.margin);
    const int hi_col =
        std::min(w, static_cast<int>(center) + cfg_.margin + 1);

    WindowStat& ws = stats[i];
    ws.center = center;
    double sum_c = 0, sum_c2 = 0, sum_t = 0, sum_t2 = 0, sum_ct = 0;
    for (int r = lo_row; r < hi_row; ++r) {
      const std::uint8_t* row = bev.px.data() + static_cast<std::size_t>(r) * w;
      const double t = (r - half_h) / half_h;
      for (int c = lo_col; c < hi_col; ++c) {
        if (!row[c]) continue;
        ++ws.count;
        sum_c += c;
        sum_c2 += static_cast<double>(c) * c;
        sum_t += t;
        sum_t2 += t * t;
        sum_ct += c * t;
      }
    }

    // An empty window whose search box is clipped by a side of the image
    // means the line has run off frame; following the chain further would
    // latch onto the other line.
    if (ws.count == 0 && (lo_col == 0 || hi_col == w)) break;

    const long area =
        static_cast<long>(std::max(0, hi_row - lo_row)) * (hi_col - lo_col);
    if (ws.count > 0) {
      const double mean = sum_c / ws.count;
      ws.col_std = std::sqrt(std::max(0.0, sum_c2 / ws.count - mean * mean));
      if (ws.count >= cfg_.recenter_min) center = mean;
    }
    ws.fit_used = ws.count >= cfg_.min_count;
    ws.trustworthy = ws.fit_used && area > 0 &&
                     ws.count <= cfg_.max_area_frac * area &&
                     ws.col_std <= cfg_.max_col_std;
    if (ws.trustworthy) ++fit.trustworthy;
    if (ws.fit_used) {
      ++fit_windows;
      n += ws.count;
      sc += sum_c;
      st += sum_t;
      st2 += sum_t2;
      sct += sum_ct;
      // Higher moments need a second pass shape; accumulate directly.
      for (int r = lo_row; r < hi_row; ++r) {
        const std::uint8_t* row =
            bev.px.data() + static_cast<std::size_t>(r) * w;
        const double t = (r - half_h) / half_h;
        const double t2 = t * t;
        for (int c = lo_col; c < hi_col; ++c) {
          if (!row[c]) continue;
          st3 += t2 * t;
          st4 += t2 * t2;
          sct2 += c * t2;
        }
      }
    }
  }

  if (fit_windows < 2 || n < 3) return fit;
  double m[3][4] = {{st4, st3, st2, sct2},
                    {st3, st2, st, sct},
                    {st2, st, n, sc}};
  if (!solve3(m)) return fit;
  fit.ok = true;
  fit.a2 = m[0][3];
  fit.a1 = m[1][3];
  fit.a0 = m[2][3];
  return fit;
}

LaneEstimate LaneDetector::update(const BevImage& bev, int keep_rows) {
  const int h = bev.height, w = bev.width;
  const int top_cut = h - std::clamp(keep_rows, 0, h);

  // Seed each line at the strongest column in its half of the near field.
  std::vector<long> hist(w, 0);
  for (int r = std::max(top_cut, h / 2); r < h; ++r) {
    const std::uint8_t* row = bev.px.data() + static_cast<std::size_t>(r) * w;
    for (int c = 0; c < w; ++c) {
      if (row[c]) ++hist[c];
    }
  }
  const auto left_peak = std::max_element(hist.begin(), hist.begin() + w / 2);
  const auto right_peak = std::max_element(hist.begin() + w / 2, hist.end());

  LaneEstimate out = last_;
  out.valid = false;
  out.quality = 0.0;

  SideFit lf, rf;
  if (*left_peak > 0) {
    lf = scan_side(bev, top_cut, std::distance(hist.begin(), left_peak),
                   left_win_);
  } else {
    left_win_.assign(cfg_.n_windows, {});
  }
  if (*right_peak > 0) {
    rf = scan_side(bev, top_cut, std::distance(hist.begin(), right_peak),
                   right_win_);
  } else {
    right_win_.assign(cfg_.n_windows, {});
  }

  out.quality = static_cast<double>(lf.trustworthy + rf.trustworthy) /
                (2.0 * cfg_.n_windows);

  double a2 = 0.0, a1 = 0.0, a0 = 0.0;
  bool have_path = false;
  if (lf.ok && rf.ok) {
    // Centreline between the two fitted lines.
    a2 = 0.5 * (lf.a2 + rf.a2);
    a1 = 0.5 * (lf.a1 + rf.a1);
    a0 = 0.5 * (lf.a0 + rf.a0);
    have_path = true;
  } else if (lf.ok != rf.ok) {
    // One line ran off frame (common mid-arc): shift the surviving fit by
    // half a lane width toward the centre. Columns grow rightward, so the
    // left line shifts by +half, the right line by -half.
    const SideFit& f = lf.ok ? lf : rf;
    const double half_w_px = 0.5 * cfg_.lane_width * spec_.px_per_m_lateral;
    a2 = f.a2;
    a1 = f.a1;
    a0 = f.a0 + (lf.ok ? half_w_px : -half_w_px);
    have_path = true;
  }

  if (have_path) {
    // Always report the fresh fit; `valid` tells the consumer whether enough
    // windows were trustworthy. Holding stale values here would hide exactly
    // the frames where an occluded search went wrong.
    //
    // The preview point is clamped into the searched rows: a cropped frame
    // reads the path at its visibility edge instead of extrapolating the
    // polynomial beyond the data.
    const double half_h = 0.5 * h;
    const double row_l =
        std::max(spec_.row_of_depth(cfg_.lookahead), static_cast<double>(top_cut));
    const double depth_l = spec_.depth_of_row(row_l);
    const double t = (row_l - half_h) / half_h;
    const double col = a2 * t * t + a1 * t + a0;
    const double dcol_drow = (2.0 * a2 * t + a1) / half_h;
    const double path_lat = spec_.lateral_of_col(col);
    const double dlat_ddepth =
        dcol_drow * spec_.px_per_m_forward / spec_.px_per_m_lateral;
    out.valid = out.quality >= cfg_.quality_min;
    out.lateral_at_lookahead = -path_lat;
    out.heading_error = -std::atan(dlat_ddepth);
    out.lateral_offset = out.lateral_at_lookahead -
                         depth_l * std::tan(out.heading_error);
    last_ = out;
  } else {
    last_.quality = out.quality;
    last_.valid = false;
  }
  return out;
}

}  // namespace platoon
