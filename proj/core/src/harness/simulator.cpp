#include "platoon/harness/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "platoon/comms/link.hpp"
#include "platoon/comms/relay.hpp"
#include "platoon/control/gap_control.hpp"
#include "platoon/control/lane_keeping.hpp"
#include "platoon/control/stop_control.hpp"
#include "platoon/control/velocity_control.hpp"
#include "platoon/dynamics/plant.hpp"
#include "platoon/harness/stage_pool.hpp"
#include "platoon/perception/birds_eye.hpp"
#include "platoon/perception/lane_detect.hpp"
#include "platoon/perception/obstacle.hpp"
#include "platoon/safety/failsafe.hpp"
#include "platoon/safety/fault_injection.hpp"
#include "platoon/safety/mitigation.hpp"
#include "platoon/safety/watchdog.hpp"
#include "platoon/sensors/camera.hpp"
#include "platoon/sensors/encoder.hpp"
#include "platoon/sensors/lidar.hpp"
#include "platoon/sensors/rng.hpp"
#include "platoon/world/track.hpp"

namespace platoon {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Platoon-wide standstill threshold: one encoder quantum above zero keeps
// the "stopped" event deterministic under measurement noise.
constexpr double kStoppedSpeed = 0.02;

// Everything one truck owns across the run.
struct TruckNode {
  Role role;
  PlantState plant;
  MotorModel motor;

  CameraSensor camera;
  CameraFreezeInjector inject;
  LidarSensor lidar;
  NormalStream enc_noise;

  BirdsEyeWarper warper;
  LaneDetector lanes;
  ObstacleTracker tracker;
  FrameWatchdog watchdog;
  LaneEstimate lane_est{};
  std::uint32_t frame_id = 0;
  double next_cam_t = 0.0;

  double v_meas = 0.0;
  double d_meas = kNaN;

  LatestValue<V2VMsg> from_pred;
  LatestValue<CommandMsg> from_center;
  RelayFlags flags;
  std::uint32_t seq = 1;

  FailsafeMachine machine;
  VelocityController vel;
  GapController gapc;
  LaneKeepingController lk;
  MitigationConfig mit_cfg;
  RoiMode roi;

  double v_ref = 0.0;
  double v_bar_r = 0.0;
  double d_ref = 0.0;
  double graceful_ref = 0.0;
  bool graceful_armed = false;
  double delta = 0.0;
  double u_duty = 0.0;
  bool fault_logged = false;
  bool pred_link_lost = false;

  TruckNode(Role r, const ScenarioSpec& spec, const Track* track,
            const BevSpec& bev)
      : role(r),
        motor(spec.motors[static_cast<int>(r)]),
        camera(spec.camera, spec.geometry, track,
               derive_seed(spec.seed, r, NoisePurpose::CameraPixels)),
        lidar(spec.lidar, spec.geometry,
              derive_seed(spec.seed, r, NoisePurpose::Lidar)),
        enc_noise(derive_seed(spec.seed, r, NoisePurpose::Encoder)),
        warper(camera.model(), bev),
        lanes(make_lane_cfg(spec), bev),
        machine(r),
        vel(make_vel_cfg(spec), motor),
        gapc(make_gap_cfg(spec)),
        roi(spec.roi[static_cast<int>(r)]) {}

  static LaneDetectConfig make_lane_cfg(const ScenarioSpec& spec) {
    LaneDetectConfig cfg;
    cfg.lane_width = spec.lane_width;
    return cfg;
  }
  static VelocityControlConfig make_vel_cfg(const ScenarioSpec& spec) {
    VelocityControlConfig cfg;
    cfg.ts = spec.ts;
    return cfg;
  }
  static GapControlConfig make_gap_cfg(const ScenarioSpec& spec) {
    GapControlConfig cfg;
    cfg.ts = spec.ts;
    return cfg;
  }
};

// Rear-axle arclength spacing that puts each follower's bumper `gap` behind
// the trailer rear face ahead of it.
double axle_spacing(const TruckGeometry& g, double gap) {
  return gap + g.bumper_forward() + g.hitch_setback + g.trailer_length;
}

// Along-track distance from this truck's bumper to the trailer face ahead.
double ground_truth_gap(const Track& track, const TruckNode& self,
                        const TruckNode& pred, const TruckGeometry& g) {
  const Vec2 nose = front_bumper(self.plant.pose, g);
  const Vec2 tail = trailer_rear_center(pred.plant.pose, g);
  const double s_nose =
      track.arclength_of({nose.x, nose.y, self.plant.pose.tractor.heading});
  const double s_tail =
      track.arclength_of({tail.x, tail.y, pred.plant.pose.trailer_heading()});
  double d = s_tail - s_nose;
  if (track.closed()) {
    const double len = track.length();
    while (d < -0.5 * len) d += len;
    while (d > 0.5 * len) d -= len;
  }
  return d;
}

}  // namespace

RunLog run_scenario(const ScenarioSpec& spec, const RunOptions& opts) {
  spec.validate();

  const Track track =
      Track::stadium(spec.straight_len, spec.turn_radius, spec.lane_width);
  const BevSpec bev_spec;
  const TruckGeometry& geom = spec.geometry;

  std::array<std::unique_ptr<TruckNode>, 3> nodes;
  const double gap0 = spec.command_at(0.0).gap;
  for (int i = 0; i < 3; ++i) {
    nodes[i] = std::make_unique<TruckNode>(static_cast<Role>(i), spec, &track,
                                           bev_spec);
    const double s0 = spec.start_arclength - i * axle_spacing(geom, gap0);
    nodes[i]->plant.pose.tractor = track.pose_at(s0);
    nodes[i]->plant.pose.articulation = 0.0;
    nodes[i]->d_ref = gap0;
  }
  for (const FaultSpec& f : spec.faults) {
    if (f.kind == "camera_freeze") {
      nodes[static_cast<int>(f.truck)]->inject =
          CameraFreezeInjector(f.at_time);
    }
  }

  // Operator console is wired (no loss, no delay); the V2V radios use the
  // scenario link model, one seed per directed edge.
  const LinkConfig wired{0.0, 0.0, 0.0};
  LinkModel center_link(wired, derive_seed(spec.seed, Role::LV,
                                           NoisePurpose::Link, 100));
  std::array<std::unique_ptr<LinkModel>, 2> down;  // LV->FV1, FV1->FV2
  std::array<std::unique_ptr<LinkModel>, 2> up;    // FV1->LV, FV2->FV1
  for (int i = 0; i < 2; ++i) {
    down[i] = std::make_unique<LinkModel>(
        spec.link,
        derive_seed(spec.seed, static_cast<Role>(i), NoisePurpose::Link, 0));
    up[i] = std::make_unique<LinkModel>(
        spec.link, derive_seed(spec.seed, static_cast<Role>(i + 1),
                               NoisePurpose::Link, 1));
  }
  std::uint32_t center_seq = 1;

  RunLog log;
  log.scenario = spec.name;
  log.seed = spec.seed;
  log.ts = spec.ts;
  const long n_ticks = std::lround(spec.duration / spec.ts);
  for (auto& s : log.series) s.reserve(n_ticks);

  std::array<TruckPose, 3> poses;
  bool was_moving = false;
  bool stopped_logged = false;

  std::unique_ptr<StagePool> pool;
  if (opts.parallel_sensing) pool = std::make_unique<StagePool>(3);

  // Stages (1)-(3): sample sensors from the frozen world snapshot, pass
  // them through fault injection, then run this truck's perception. Only
  // per-truck state is touched, so the pool may run trucks concurrently.
  auto sense_and_perceive = [&](int i, double now) {
    TruckNode& n = *nodes[i];
    n.v_meas = encoder_read(n.plant.v, spec.encoder, n.enc_noise);

    std::vector<Segment2> targets;
    for (int j = 0; j < 3; ++j) {
      if (j != i) append_trailer_outline(poses[j], geom, targets);
    }
    const LidarScan scan = n.lidar.scan(n.plant.pose, targets, now);
    std::vector<CircleFit> fits;
    for (const PointCluster& cl : cluster_points(scan)) {
      fits.push_back(fit_circle(cl));
    }
    n.tracker.update(fits);
    n.d_meas = gap_from_obstacle(n.tracker).value_or(kNaN);

    if (now + 1e-9 >= n.next_cam_t) {
      std::optional<CameraSensor::LeadView> lead;
      if (i > 0) lead = CameraSensor::LeadView{poses[i - 1], geom};
      const CameraFrame live =
          n.camera.render(n.plant.pose, lead, now, n.frame_id);
      const CameraFrame& frame = n.inject.apply(live, now);
      if (spec.mitigation) n.watchdog.update(frame, n.v_meas);
      const BevImage bev = n.warper.warp(frame);
      int keep = bev.height;
      if (n.roi == RoiMode::Dynamic && !std::isnan(n.d_meas)) {
        keep = dynamic_roi_rows(n.d_meas, bev_spec);
      }
      n.lane_est = n.lanes.update(bev, keep);
      ++n.frame_id;
      n.next_cam_t += spec.camera_period();
    }
  };

  for (long k = 0; k < n_ticks && !log.aborted; ++k) {
    const double now = k * spec.ts;

    // Operator command, published every tick.
    const ProfilePoint cmd = spec.command_at(now);
    center_link.send(
        make_command(center_seq++, now, cmd.velocity, cmd.gap), now);

    for (int i = 0; i < 3; ++i) poses[i] = nodes[i]->plant.pose;

    if (pool) {
      pool->run([&](int i) { sense_and_perceive(i, now); });
    } else {
      for (int i = 0; i < 3; ++i) sense_and_perceive(i, now);
    }

    // Stage (4): deliver due messages, refresh setpoints, send this tick's
    // traffic. Flags forward in both directions independent of mode logic.
    for (const Message& m : center_link.poll(now)) {
      nodes[0]->from_center.offer(m.header, std::get<CommandMsg>(m.payload),
                                  now);
      nodes[0]->flags.absorb(m.header.flags);
    }
    for (int i = 0; i < 2; ++i) {
      for (const Message& m : down[i]->poll(now)) {
        nodes[i + 1]->from_pred.offer(m.header, std::get<V2VMsg>(m.payload),
                                      now);
        nodes[i + 1]->flags.absorb(m.header.flags);
      }
      for (const Message& m : up[i]->poll(now)) {
        nodes[i]->flags.absorb(m.header.flags);
      }
    }
    for (int i = 0; i < 3; ++i) {
      TruckNode& n = *nodes[i];
      if (i == 0) {
        n.d_ref = n.from_center.has() ? n.from_center.value().target_gap
                                      : cmd.gap;
      } else if (n.from_pred.has()) {
        n.d_ref = n.from_pred.value().target_gap_relay;
      }
      if (i > 0 && n.from_pred.has()) {
        const bool lost = !n.from_pred.fresh(now);
        if (lost && !n.pred_link_lost) {
          log.events.push_back({now, i, "comms_loss", "predecessor stale"});
        }
        n.pred_link_lost = lost;
      }
      n.flags.camera_fail = n.flags.camera_fail || n.watchdog.tripped();
      n.flags.emergency =
          n.flags.emergency || n.machine.mode() == SafetyMode::EmergencyStop;
      if (i < 2) {
        down[i]->send(make_v2v(static_cast<std::uint8_t>(i), n.seq++, now,
                               n.v_bar_r, n.d_ref, n.flags.bits()),
                      now);
      }
      if (i > 0) {
        up[i - 1]->send(make_v2v(static_cast<std::uint8_t>(i), n.seq++, now,
                                 n.v_bar_r, n.d_ref, n.flags.bits()),
                        now);
      }
    }

    // Stage (5): per-truck failsafe machines.
    for (int i = 0; i < 3; ++i) {
      TruckNode& n = *nodes[i];
      if (n.watchdog.tripped() && !n.fault_logged) {
        log.events.push_back({now, i, "camera_fault_detected", ""});
        n.fault_logged = true;
      }
      FailsafeInputs fin;
      fin.camera_fault_own = n.watchdog.tripped();
      fin.camera_fault_rx = n.flags.camera_fail;
      fin.emergency_rx = n.flags.emergency;
      fin.target_lost = !n.tracker.primary().has_value();
      const SafetyMode before = n.machine.mode();
      if (n.machine.step(fin, now)) {
        log.events.push_back({now, i, "mode",
                              std::string(mode_name(before)) + "->" +
                                  mode_name(n.machine.mode())});
      }
    }

    // Stage (6): controllers.
    for (int i = 0; i < 3; ++i) {
      TruckNode& n = *nodes[i];
      const SafetyMode mode = n.machine.mode();
      if (mode == SafetyMode::EmergencyStop) {
        // Zero throttle immediately; steering holds its last value.
        n.v_ref = 0.0;
        n.v_bar_r = 0.0;
        n.u_duty = 0.0;
        continue;
      }

      double ref;
      if (i == 0) {
        ref = n.from_center.has() ? n.from_center.value().target_velocity
                                  : cmd.velocity;
      } else {
        const double ff = n.from_pred.has() ? n.from_pred.value().v_bar_r
                                            : 0.0;
        ref = std::isnan(n.d_meas) ? ff
                                   : n.gapc.step(ff, n.d_ref, n.d_meas);
      }
      if (mode == SafetyMode::GracefulStop) {
        if (!n.graceful_armed) {
          n.graceful_ref = n.v_bar_r;  // ramp down from the live reference
          n.graceful_armed = true;
        }
        n.graceful_ref =
            graceful_stop_ref(n.graceful_ref, spec.graceful_decel, spec.ts);
        ref = n.graceful_ref;
      }
      const VelocityController::Output out = n.vel.step(ref, n.v_meas);
      n.v_ref = ref;
      n.v_bar_r = out.v_ref_sat;
      n.u_duty = out.motor_cmd;

      const bool lidar_follow = mode == SafetyMode::Degraded &&
                                n.watchdog.tripped() && spec.mitigation;
      if (lidar_follow && n.tracker.primary()) {
        const TrackedObstacle target = *n.tracker.primary();
        n.delta = mitigation_steering({target.center.x, target.center.y},
                                      n.v_meas, n.mit_cfg);
      } else {
        n.delta = n.lk.step(n.lane_est, n.v_meas);
      }
    }

    // Stage (7): physics, then ground-truth safety checks.
    for (int i = 0; i < 3; ++i) {
      TruckNode& n = *nodes[i];
      const PlantStepResult res = step_plant(n.plant, geom, n.motor, {},
                                             n.u_duty, n.delta, spec.ts);
      if (res.jackknifed) {
        log.events.push_back({now, i, "jackknife", "articulation limit"});
        log.aborted = true;
        log.abort_reason = "jackknife";
      }
    }
    for (int i = 1; i < 3 && !log.aborted; ++i) {
      const double gap_gt =
          ground_truth_gap(track, *nodes[i], *nodes[i - 1], geom);
      if (gap_gt <= 0.0) {
        log.events.push_back({now, i, "collision", "gap closed"});
        log.aborted = true;
        log.abort_reason = "collision";
      }
    }

    // Stage (8): log.
    bool all_stopped = true;
    for (int i = 0; i < 3; ++i) {
      TruckNode& n = *nodes[i];
      const Vec2 nose = front_bumper(n.plant.pose, geom);
      const Pose2D nose_pose{nose.x, nose.y, n.plant.pose.tractor.heading};
      const double s_here = track.arclength_of(nose_pose);
      TickRow row;
      row.t = now;
      row.v = n.plant.v;
      row.v_meas = n.v_meas;
      row.v_ref = n.v_ref;
      row.v_bar_r = n.v_bar_r;
      row.d_meas = n.d_meas;
      row.d_ref = n.d_ref;
      row.lat_err_gt = track.lateral_error(nose_pose);
      row.e_l = n.lane_est.lateral_at_lookahead;
      row.theta = n.lane_est.heading_error;
      row.delta = n.delta;
      row.u = n.u_duty;
      row.mode = static_cast<int>(n.machine.mode());
      row.on_curve = track.curvature_at(s_here) != 0.0 ? 1 : 0;
      log.series[i].push_back(row);
      if (n.plant.v > 0.05) was_moving = true;
      all_stopped = all_stopped && n.plant.v < kStoppedSpeed;
    }
    if (was_moving && all_stopped && !stopped_logged) {
      log.events.push_back({now, -1, "stopped", "platoon at standstill"});
      stopped_logged = true;
    }
  }

  const std::vector<Event> departures =
      lane_departure_events(log, spec.lane_width, geom.trailer_width);
  log.events.insert(log.events.end(), departures.begin(), departures.end());
  std::stable_sort(
      log.events.begin(), log.events.end(),
      [](const Event& a, const Event& b) { return a.t < b.t; });
  return log;
}

}  // namespace platoon
