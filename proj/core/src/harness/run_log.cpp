#include "platoon/harness/run_log.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace platoon {

namespace {

constexpr const char* kCsvHeader =
    "t,v,v_meas,v_ref,v_bar_r,d_meas,d_ref,lat_err_gt,e_l,theta,delta,u,"
    "mode,on_curve";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_row(std::ofstream& out, const TickRow& r) {
  out << fmt(r.t) << ',' << fmt(r.v) << ',' << fmt(r.v_meas) << ','
      << fmt(r.v_ref) << ',' << fmt(r.v_bar_r) << ',' << fmt(r.d_meas) << ','
      << fmt(r.d_ref) << ',' << fmt(r.lat_err_gt) << ',' << fmt(r.e_l) << ','
      << fmt(r.theta) << ',' << fmt(r.delta) << ',' << fmt(r.u) << ','
      << r.mode << ',' << r.on_curve << '\n';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double num(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(where + ": bad number '" + s + "'");
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

TruckSummary RunLog::summarize(Role r) const {
  const auto& rows = series[static_cast<int>(r)];
  TruckSummary s;
  s.gap_min = std::numeric_limits<double>::quiet_NaN();
  s.gap_max = s.gap_min;
  if (rows.empty()) return s;
  double lat_sq = 0.0;
  for (const TickRow& row : rows) {
    s.v_max = std::max(s.v_max, row.v);
    s.lat_max_abs = std::max(s.lat_max_abs, std::abs(row.lat_err_gt));
    lat_sq += row.lat_err_gt * row.lat_err_gt;
    if (!std::isnan(row.d_meas)) {
      s.gap_min = std::isnan(s.gap_min) ? row.d_meas
                                        : std::min(s.gap_min, row.d_meas);
      s.gap_max = std::isnan(s.gap_max) ? row.d_meas
                                        : std::max(s.gap_max, row.d_meas);
    }
  }
  s.lat_rms = std::sqrt(lat_sq / rows.size());
  return s;
}

std::vector<Event> lane_departure_events(const RunLog& log, double lane_width,
                                         double truck_width) {
  const double limit = 0.5 * (lane_width - truck_width);
  std::vector<Event> out;
  for (int truck = 0; truck < 3; ++truck) {
    bool outside = false;
    for (const TickRow& row : log.series[truck]) {
      const bool now_outside = std::abs(row.lat_err_gt) > limit;
      if (now_outside && !outside) {
        out.push_back({row.t, truck, "lane_departure",
                       row.lat_err_gt > 0 ? "left" : "right"});
      }
      outside = now_outside;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Event& a, const Event& b) { return a.t < b.t; });
  return out;
}

bool metric_value(const TickRow& r, const std::string& metric, double& out) {
  if (metric == "v") out = r.v;
  else if (metric == "v_meas") out = r.v_meas;
  else if (metric == "v_ref") out = r.v_ref;
  else if (metric == "v_bar_r") out = r.v_bar_r;
  else if (metric == "d_meas") out = r.d_meas;
  else if (metric == "d_ref") out = r.d_ref;
  else if (metric == "lat_err_gt") out = r.lat_err_gt;
  else if (metric == "e_l") out = r.e_l;
  else if (metric == "theta") out = r.theta;
  else if (metric == "delta") out = r.delta;
  else if (metric == "u") out = r.u;
  else if (metric == "mode") out = r.mode;
  else if (metric == "on_curve") out = r.on_curve;
  else return false;
  return true;
}

void export_csv(const RunLog& log, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (int truck = 0; truck < 3; ++truck) {
    auto out = open_out(dir + "/" + role_name(static_cast<Role>(truck)) +
                        ".csv");
    out << kCsvHeader << '\n';
    for (const TickRow& r : log.series[truck]) write_row(out, r);
  }

  auto ev = open_out(dir + "/events.csv");
  ev << "t,truck,kind,detail\n";
  for (const Event& e : log.events) {
    ev << fmt(e.t) << ',' << (e.truck < 0 ? "all" : role_name(static_cast<Role>(e.truck)))
       << ',' << e.kind << ',' << e.detail << '\n';
  }

  auto sum = open_out(dir + "/summary.txt");
  sum << "scenario " << log.scenario << "\nseed " << log.seed << "\nticks "
      << log.ticks() << "\nstatus " << (log.aborted ? "aborted" : "completed");
  if (log.aborted) sum << " (" << log.abort_reason << ")";
  sum << "\n";
  for (int truck = 0; truck < 3; ++truck) {
    const TruckSummary s = log.summarize(static_cast<Role>(truck));
    sum << role_name(static_cast<Role>(truck)) << ": v_max " << s.v_max
        << " lat_rms " << s.lat_rms << " lat_max " << s.lat_max_abs
        << " gap_min " << s.gap_min << " gap_max " << s.gap_max << "\n";
  }
}

void export_plotdata(const RunLog& log, const std::string& metric,
                     const std::string& path) {
  auto out = open_out(path);
  for (int truck = 0; truck < 3; ++truck) {
    out << "# " << role_name(static_cast<Role>(truck)) << " " << metric
        << "\n";
    for (const TickRow& r : log.series[truck]) {
      double v = 0.0;
      if (!metric_value(r, metric, v)) {
        throw std::invalid_argument("unknown metric: " + metric);
      }
      out << fmt(r.t) << ' ' << fmt(v) << '\n';
    }
    out << "\n\n";  // gnuplot dataset separator
  }
}

RunLog import_csv(const std::string& dir) {
  RunLog log;
  for (int truck = 0; truck < 3; ++truck) {
    const std::string path =
        dir + "/" + role_name(static_cast<Role>(truck)) + ".csv";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(in, line) || split_csv(line) != split_csv(kCsvHeader)) {
      throw std::runtime_error(path + ": unexpected header");
    }
    int line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const auto f = split_csv(line);
      if (f.size() != 14) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": wrong column count");
      }
      const std::string where = path + ":" + std::to_string(line_no);
      TickRow r;
      r.t = num(f[0], where);
      r.v = num(f[1], where);
      r.v_meas = num(f[2], where);
      r.v_ref = num(f[3], where);
      r.v_bar_r = num(f[4], where);
      r.d_meas = num(f[5], where);
      r.d_ref = num(f[6], where);
      r.lat_err_gt = num(f[7], where);
      r.e_l = num(f[8], where);
      r.theta = num(f[9], where);
      r.delta = num(f[10], where);
      r.u = num(f[11], where);
      r.mode = static_cast<int>(num(f[12], where));
      r.on_curve = static_cast<int>(num(f[13], where));
      log.series[truck].push_back(r);
    }
  }

  std::ifstream ev(dir + "/events.csv");
  if (ev) {
    std::string line;
    std::getline(ev, line);  // header
    while (std::getline(ev, line)) {
      if (line.empty()) continue;
      const auto f = split_csv(line);
      if (f.size() < 3) continue;
      Event e;
      e.t = num(f[0], dir + "/events.csv");
      e.truck = -1;
      for (int truck = 0; truck < 3; ++truck) {
        if (f[1] == role_name(static_cast<Role>(truck))) e.truck = truck;
      }
      e.kind = f[2];
      e.detail = f.size() > 3 ? f[3] : "";
      log.events.push_back(e);
    }
  }
  if (!log.series[0].empty() && log.series[0].size() > 1) {
    log.ts = log.series[0][1].t - log.series[0][0].t;
  }
  return log;
}

CompareReport compare_runs(const RunLog& a, const RunLog& b,
                           const std::string& metric) {
  CompareReport rep;
  std::ostringstream os;
  os << "metric: " << metric << "\n";
  for (int truck = 0; truck < 3; ++truck) {
    const auto& sa = a.series[truck];
    const auto& sb = b.series[truck];
    const std::size_t n = std::min(sa.size(), sb.size());
    rep.ticks_compared = std::max(rep.ticks_compared, n);
    MetricDelta d;
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double va = 0.0, vb = 0.0;
      if (!metric_value(sa[i], metric, va) ||
          !metric_value(sb[i], metric, vb)) {
        throw std::invalid_argument("unknown metric: " + metric);
      }
      if (std::isnan(va) || std::isnan(vb)) continue;
      const double diff = va - vb;
      d.max_abs = std::max(d.max_abs, std::abs(diff));
      sq += diff * diff;
    }
    d.rms = n ? std::sqrt(sq / n) : 0.0;
    rep.per_truck[truck] = d;
    os << role_name(static_cast<Role>(truck)) << ": max|delta| " << d.max_abs
       << "  rms " << d.rms << "  over " << n << " ticks\n";
  }

  auto same = [](const Event& x, const Event& y) {
    return x.truck == y.truck && x.kind == y.kind &&
           std::abs(x.t - y.t) < 1e-9;
  };
  for (const Event& e : a.events) {
    bool found = false;
    for (const Event& f : b.events) found = found || same(e, f);
    if (!found) rep.only_in_a.push_back(e);
  }
  for (const Event& e : b.events) {
    bool found = false;
    for (const Event& f : a.events) found = found || same(e, f);
    if (!found) rep.only_in_b.push_back(e);
  }
  os << "events only in A: " << rep.only_in_a.size()
     << ", only in B: " << rep.only_in_b.size() << "\n";
  for (const Event& e : rep.only_in_a) {
    os << "  A " << e.t << " " << (e.truck < 0 ? "all" : role_name(static_cast<Role>(e.truck)))
       << " " << e.kind << " " << e.detail << "\n";
  }
  for (const Event& e : rep.only_in_b) {
    os << "  B " << e.t << " " << (e.truck < 0 ? "all" : role_name(static_cast<Role>(e.truck)))
       << " " << e.kind << " " << e.detail << "\n";
  }
  rep.text = os.str();
  return rep;
}

void export_compare_plotdata(const RunLog& a, const RunLog& b,
                             const std::string& metric,
                             const std::string& path) {
  auto out = open_out(path);
  for (int truck = 0; truck < 3; ++truck) {
    out << "# " << role_name(static_cast<Role>(truck)) << " " << metric
        << " (t, run A, run B)\n";
    const auto& sa = a.series[truck];
    const auto& sb = b.series[truck];
    const std::size_t n = std::min(sa.size(), sb.size());
    for (std::size_t i = 0; i < n; ++i) {
      double va = 0.0, vb = 0.0;
      metric_value(sa[i], metric, va);
      metric_value(sb[i], metric, vb);
      out << fmt(sa[i].t) << ' ' << fmt(va) << ' ' << fmt(vb) << '\n';
    }
    out << "\n\n";
  }
}

}  // namespace platoon
