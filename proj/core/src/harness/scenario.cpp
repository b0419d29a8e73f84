#include "platoon/harness/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace platoon {

namespace {

constexpr const char* kFormatTag = "platoon-scenario-v1";

[[noreturn]] void fail(const std::string& origin, int line_no,
                       const std::string& what) {
  std::ostringstream os;
  os << (origin.empty() ? "scenario" : origin) << ":" << line_no << ": "
     << what;
  throw std::invalid_argument(os.str());
}

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_role(const std::string& s, Role& out) {
  if (s == "LV") out = Role::LV;
  else if (s == "FV1") out = Role::FV1;
  else if (s == "FV2") out = Role::FV2;
  else return false;
  return true;
}

bool parse_roi(const std::string& s, RoiMode& out) {
  if (s == "static") out = RoiMode::Static;
  else if (s == "dynamic") out = RoiMode::Dynamic;
  else return false;
  return true;
}

double to_double(const std::string& s, const std::string& origin, int line_no,
                 const std::string& key) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(origin, line_no, "'" + key + "' wants a number, got '" + s + "'");
  }
  if (used != s.size()) {
    fail(origin, line_no, "'" + key + "' wants a number, got '" + s + "'");
  }
  return v;
}

bool to_bool(const std::string& s, const std::string& origin, int line_no,
             const std::string& key) {
  if (s == "on" || s == "true" || s == "1") return true;
  if (s == "off" || s == "false" || s == "0") return false;
  fail(origin, line_no, "'" + key + "' wants on/off, got '" + s + "'");
}

}  // namespace

const char* roi_mode_name(RoiMode m) {
  return m == RoiMode::Static ? "static" : "dynamic";
}

ProfilePoint ScenarioSpec::command_at(double t) const {
  if (profile.empty()) return {t, 0.0, 0.0};
  if (t <= profile.front().t) {
    return {t, profile.front().velocity, profile.front().gap};
  }
  if (t >= profile.back().t) {
    return {t, profile.back().velocity, profile.back().gap};
  }
  // Last breakpoint with time <= t; the next one has time > t. Repeated
  // times therefore resolve to the later row (right-continuous step).
  std::size_t i = 0;
  while (i + 1 < profile.size() && profile[i + 1].t <= t) ++i;
  const ProfilePoint& a = profile[i];
  const ProfilePoint& b = profile[i + 1];
  const double span = b.t - a.t;
  const double w = span > 0.0 ? (t - a.t) / span : 1.0;
  return {t, a.velocity + w * (b.velocity - a.velocity),
          a.gap + w * (b.gap - a.gap)};
}

void ScenarioSpec::validate() const {
  auto bad = [](const std::string& what) {
    throw std::invalid_argument("scenario '" + what + "'");
  };
  if (duration < 0.0) bad("duration must be >= 0");
  if (ts <= 0.0) bad("control period must be > 0");
  if (camera.rate_hz <= 0.0) bad("camera rate must be > 0");
  if (camera.width <= 0 || camera.height <= 0) bad("camera size must be > 0");
  if (straight_len <= 0.0 || turn_radius <= 0.0 || lane_width <= 0.0) {
    bad("track dimensions must be > 0");
  }
  if (profile.empty()) bad("profile needs at least one row");
  for (std::size_t i = 1; i < profile.size(); ++i) {
    if (profile[i].t < profile[i - 1].t) {
      bad("profile times must be non-decreasing");
    }
  }
  for (const ProfilePoint& p : profile) {
    if (p.velocity < 0.0 || p.gap < 0.0) {
      bad("profile velocity and gap must be >= 0");
    }
  }
  for (const FaultSpec& f : faults) {
    if (f.kind != "camera_freeze") bad("unknown fault kind: " + f.kind);
    if (f.at_time < 0.0) bad("fault time must be >= 0");
  }
  if (link.latency < 0.0 || link.jitter < 0.0 || link.drop_prob < 0.0 ||
      link.drop_prob > 1.0) {
    bad("link parameters out of range");
  }
  if (graceful_decel <= 0.0) bad("graceful_decel must be > 0");
}

ScenarioSpec ScenarioSpec::parse(std::istream& in, const std::string& origin) {
  ScenarioSpec spec;
  std::string line;
  int line_no = 0;
  enum class Section { Keys, Profile, Faults, Motor } section = Section::Keys;

  bool saw_tag = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string s = strip(line);
    if (s.empty()) continue;

    if (!saw_tag) {
      if (s != kFormatTag) {
        fail(origin, line_no,
             std::string("first line must be '") + kFormatTag + "'");
      }
      saw_tag = true;
      continue;
    }

    if (s.front() == '[') {
      if (s == "[profile]") section = Section::Profile;
      else if (s == "[faults]") section = Section::Faults;
      else if (s == "[motor]") section = Section::Motor;
      else fail(origin, line_no, "unknown section " + s);
      continue;
    }

    if (section == Section::Profile) {
      std::istringstream row(s);
      ProfilePoint p;
      if (!(row >> p.t >> p.velocity >> p.gap)) {
        fail(origin, line_no, "profile row wants: t velocity gap");
      }
      spec.profile.push_back(p);
      continue;
    }
    if (section == Section::Faults) {
      std::istringstream row(s);
      std::string truck;
      FaultSpec f;
      if (!(row >> truck >> f.kind >> f.at_time) ||
          !parse_role(truck, f.truck)) {
        fail(origin, line_no, "fault row wants: truck kind time");
      }
      spec.faults.push_back(f);
      continue;
    }
    if (section == Section::Motor) {
      std::istringstream row(s);
      std::string truck;
      MotorParams mp;
      Role role;
      if (!(row >> truck >> mp.a >> mp.b >> mp.c) ||
          !parse_role(truck, role)) {
        fail(origin, line_no, "motor row wants: truck a b c");
      }
      spec.motors[static_cast<int>(role)] = mp;
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      fail(origin, line_no, "expected 'key = value', got '" + s + "'");
    }
    const std::string key = strip(s.substr(0, eq));
    const std::string val = strip(s.substr(eq + 1));
    auto num = [&] { return to_double(val, origin, line_no, key); };

    if (key == "name") spec.name = val;
    else if (key == "duration") spec.duration = num();
    else if (key == "control_ts") spec.ts = num();
    else if (key == "seed") spec.seed = static_cast<std::uint64_t>(num());
    else if (key == "straight_len") spec.straight_len = num();
    else if (key == "turn_radius") spec.turn_radius = num();
    else if (key == "lane_width") spec.lane_width = num();
    else if (key == "start_arclength") spec.start_arclength = num();
    else if (key == "camera_rate_hz") spec.camera.rate_hz = num();
    else if (key == "camera_width") spec.camera.width = static_cast<int>(num());
    else if (key == "camera_height") {
      spec.camera.height = static_cast<int>(num());
    } else if (key == "camera_noise_sigma") {
      spec.camera.noise_sigma = num();
    } else if (key == "lidar_sigma_r") {
      spec.lidar.sigma_r = num();
    } else if (key == "encoder_sigma_v") {
      spec.encoder.sigma_v = num();
    } else if (key == "link_latency") {
      spec.link.latency = num();
    } else if (key == "link_jitter") {
      spec.link.jitter = num();
    } else if (key == "link_drop_prob") {
      spec.link.drop_prob = num();
    } else if (key == "graceful_decel") {
      spec.graceful_decel = num();
    } else if (key == "mitigation") {
      spec.mitigation = to_bool(val, origin, line_no, key);
    } else if (key == "roi") {
      RoiMode m;
      if (!parse_roi(val, m)) {
        fail(origin, line_no, "'roi' wants static or dynamic");
      }
      spec.roi = {m, m, m};
    } else if (key == "roi_LV" || key == "roi_FV1" || key == "roi_FV2") {
      Role role;
      parse_role(key.substr(4), role);
      RoiMode m;
      if (!parse_roi(val, m)) {
        fail(origin, line_no, "'" + key + "' wants static or dynamic");
      }
      spec.roi[static_cast<int>(role)] = m;
    } else {
      fail(origin, line_no, "unknown key '" + key + "'");
    }
  }
  if (!saw_tag) fail(origin, line_no, "empty file");
  spec.validate();
  return spec;
}

ScenarioSpec ScenarioSpec::parse_text(const std::string& text,
                                      const std::string& origin) {
  std::istringstream in(text);
  return parse(in, origin);
}

ScenarioSpec ScenarioSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario: " + path);
  return parse(in, path);
}

}  // namespace platoon
