#include "exo/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "exo/errors.hpp"

namespace exo {

namespace {

/// Locates the interpolation interval and weight for one target time, and
/// enforces the bounded hold-extrapolation rule shared by all modes.
struct Interval {
  std::size_t i0;
  std::size_t i1;
  double u;  // weight of i1
  bool extrapolated;
};

void check_stream(std::span<const double> times, std::size_t value_count) {
  if (times.empty()) throw ValidationError("resample: empty stream");
  if (times.size() != value_count) {
    std::ostringstream os;
    os << "resample: " << times.size() << " timestamps but " << value_count << " values";
    throw DimensionError(os.str());
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw ValidationError("resample: stream timestamps must be strictly increasing");
    }
  }
}

void check_targets(std::span<const double> target_times) {
  for (std::size_t i = 1; i < target_times.size(); ++i) {
    if (target_times[i] < target_times[i - 1]) {
      throw ValidationError("resample: target times must be sorted ascending");
    }
  }
}

Interval locate(std::span<const double> times, double t) {
  const std::size_t n = times.size();
  if (n == 1) {
    return Interval{0, 0, 0.0, t != times[0]};
  }
  if (t < times.front()) {
    const double period = times[1] - times[0];
    if (times.front() - t > period + 1e-12) {
      throw ValidationError("resample: target before stream start by more than one sample period");
    }
    return Interval{0, 0, 0.0, true};
  }
  if (t > times.back()) {
    const double period = times[n - 1] - times[n - 2];
    if (t - times.back() > period + 1e-12) {
      throw ValidationError("resample: target after stream end by more than one sample period");
    }
    return Interval{n - 1, n - 1, 0.0, true};
  }
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - times.begin()), n - 1);
  const std::size_t lo = hi == 0 ? 0 : hi - 1;
  if (t == times[lo]) return Interval{lo, lo, 0.0, false};
  if (t == times[hi]) return Interval{hi, hi, 0.0, false};
  const double u = (t - times[lo]) / (times[hi] - times[lo]);
  return Interval{lo, hi, u, false};
}

template <typename T, typename Mix>
std::vector<T> resample_impl(std::span<const double> times, std::span<const T> values,
                             std::span<const double> target_times, ExtrapolationFlags* flags,
                             Mix mix) {
  check_stream(times, values.size());
  check_targets(target_times);
  std::vector<T> out;
  out.reserve(target_times.size());
  if (flags) flags->assign(target_times.size(), false);
  for (std::size_t k = 0; k < target_times.size(); ++k) {
    const Interval iv = locate(times, target_times[k]);
    if (flags && iv.extrapolated) (*flags)[k] = true;
    if (iv.i0 == iv.i1) {
      out.push_back(values[iv.i0]);
    } else {
      out.push_back(mix(values[iv.i0], values[iv.i1], iv.u));
    }
  }
  return out;
}

}  // namespace

std::vector<double> resample(std::span<const double> times, std::span<const double> values,
                             std::span<const double> target_times, ExtrapolationFlags* flags) {
  return resample_impl<double>(times, values, target_times, flags,
                               [](double a, double b, double u) { return a + u * (b - a); });
}

std::vector<Eigen::VectorXd> resample(std::span<const double> times,
                                      std::span<const Eigen::VectorXd> values,
                                      std::span<const double> target_times,
                                      ExtrapolationFlags* flags) {
  return resample_impl<Eigen::VectorXd>(
      times, values, target_times, flags,
      [](const Eigen::VectorXd& a, const Eigen::VectorXd& b, double u) {
        if (a.size() != b.size()) {
          throw DimensionError("resample: inconsistent vector sizes within stream");
        }
        return Eigen::VectorXd(a + u * (b - a));
      });
}

std::vector<UnitQuaternion> resample(std::span<const double> times,
                                     std::span<const UnitQuaternion> values,
                                     std::span<const double> target_times,
                                     ExtrapolationFlags* flags) {
  return resample_impl<UnitQuaternion>(
      times, values, target_times, flags,
      [](const UnitQuaternion& a, const UnitQuaternion& b, double u) { return slerp(a, b, u); });
}

std::vector<std::vector<std::string>> resample_hold(std::span<const double> times,
                                                    std::span<const std::vector<std::string>> values,
                                                    std::span<const double> target_times,
                                                    ExtrapolationFlags* flags) {
  return resample_impl<std::vector<std::string>>(
      times, values, target_times, flags,
      [](const std::vector<std::string>& a, const std::vector<std::string>&, double) {
        return a;  // hold the earlier sample
      });
}

std::vector<WholeBodyFrame> synchronize(std::span<const TimedVector> arm,
                                        std::span<const TimedVector> hands,
                                        std::span<const OdomSample> odom,
                                        std::span<const TimedCommand> commands, double rate_hz,
                                        std::span<const TimedCameraRefs> camera) {
  if (!(rate_hz > 0.0)) throw ValidationError("synchronize: rate must be > 0");
  if (arm.empty() || hands.empty() || odom.empty() || commands.empty()) {
    throw ValidationError("synchronize: empty input stream");
  }

  const double start = std::max({arm.front().timestamp, hands.front().timestamp,
                                 odom.front().timestamp, commands.front().timestamp});
  const double end = std::min({arm.back().timestamp, hands.back().timestamp,
                               odom.back().timestamp, commands.back().timestamp});
  if (!(end >= start)) throw ValidationError("synchronize: streams do not overlap in time");

  const std::size_t count =
      static_cast<std::size_t>(std::floor((end - start) * rate_hz + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = start + static_cast<double>(k) / rate_hz;

  std::vector<double> arm_t, hand_t, odom_t, cmd_t;
  std::vector<Eigen::VectorXd> arm_v, hand_v;
  for (const TimedVector& s : arm) { arm_t.push_back(s.timestamp); arm_v.push_back(s.values); }
  for (const TimedVector& s : hands) { hand_t.push_back(s.timestamp); hand_v.push_back(s.values); }
  std::vector<UnitQuaternion> odom_q;
  std::vector<Eigen::VectorXd> odom_p;
  for (const OdomSample& s : odom) {
    odom_t.push_back(s.timestamp);
    odom_q.push_back(s.pose.rotation);
    odom_p.push_back(s.pose.translation);
  }
  std::vector<Eigen::VectorXd> cmd_v;
  for (const TimedCommand& s : commands) {
    cmd_t.push_back(s.timestamp);
    cmd_v.push_back(Eigen::Vector3d(s.command.v_x, s.command.omega_z, s.command.h));
  }

  const auto arm_g = resample(arm_t, arm_v, grid);
  const auto hand_g = resample(hand_t, hand_v, grid);
  const auto rot_g = resample(odom_t, odom_q, grid);
  const auto pos_g = resample(odom_t, odom_p, grid);
  const auto cmd_g = resample(cmd_t, cmd_v, grid);

  std::vector<std::vector<std::string>> cam_g(count);
  if (!camera.empty()) {
    std::vector<double> cam_t;
    std::vector<std::vector<std::string>> cam_v;
    for (const TimedCameraRefs& s : camera) { cam_t.push_back(s.timestamp); cam_v.push_back(s.refs); }
    cam_g = resample_hold(cam_t, cam_v, grid);
  }

  std::vector<WholeBodyFrame> frames(count);
  for (std::size_t k = 0; k < count; ++k) {
    WholeBodyFrame& f = frames[k];
    f.timestamp = grid[k];
    f.arm_joints = arm_g[k];
    f.hand_joints = hand_g[k];
    f.base_command = BaseCommand{cmd_g[k][0], cmd_g[k][1], cmd_g[k][2]};
    f.base_pose.rotation = rot_g[k];
    f.base_pose.translation = pos_g[k];
    f.camera_refs = cam_g[k];
  }
  return frames;
}

ValidationReport validate(std::span<const WholeBodyFrame> frames, const RobotModel& model,
                          const ValidationThresholds& thresholds) {
  ValidationReport report;
  const std::size_t n_arm = RobotModel::kArmJointCount;
  const std::size_t n_hand = 2 * model.hand.active_per_hand;

  for (std::size_t i = 0; i < frames.size(); ++i) {
    const WholeBodyFrame& f = frames[i];
    for (std::size_t j = 0; j < n_arm && j < static_cast<std::size_t>(f.arm_joints.size()); ++j) {
      const double v = f.arm_joints[static_cast<Eigen::Index>(j)];
      const JointLimit lim = model.arm_limit(j);
      if (v < lim.lo || v > lim.hi || !std::isfinite(v)) {
        report.limit_violations.push_back(LimitViolation{i, j, v, lim.lo, lim.hi});
      }
    }
    for (std::size_t j = 0; j < n_hand && j < static_cast<std::size_t>(f.hand_joints.size()); ++j) {
      const double v = f.hand_joints[static_cast<Eigen::Index>(j)];
      if (v < model.hand.limits.lo || v > model.hand.limits.hi || !std::isfinite(v)) {
        report.limit_violations.push_back(
            LimitViolation{i, n_arm + j, v, model.hand.limits.lo, model.hand.limits.hi});
      }
    }
    if (i == 0) continue;
    const WholeBodyFrame& prev = frames[i - 1];
    const double dt = f.timestamp - prev.timestamp;
    if (!(dt > 0.0) || dt > thresholds.max_dt) {
      report.timestamp_gaps.push_back(TimestampGap{i, dt});
    }
    if (dt > 0.0) {
      for (Eigen::Index j = 0; j < f.arm_joints.size() && j < prev.arm_joints.size(); ++j) {
        const double vel = (f.arm_joints[j] - prev.arm_joints[j]) / dt;
        if (std::abs(vel) > thresholds.max_joint_vel) {
          report.velocity_spikes.push_back(VelocitySpike{i, static_cast<std::size_t>(j), vel});
        }
      }
      for (Eigen::Index j = 0; j < f.hand_joints.size() && j < prev.hand_joints.size(); ++j) {
        const double vel = (f.hand_joints[j] - prev.hand_joints[j]) / dt;
        if (std::abs(vel) > thresholds.max_joint_vel) {
          report.velocity_spikes.push_back(
              VelocitySpike{i, n_arm + static_cast<std::size_t>(j), vel});
        }
      }
    }
  }
  return report;
}

std::string to_json(const ValidationReport& report, int indent) {
  nlohmann::ordered_json j;
  j["limit_violations"] = nlohmann::ordered_json::array();
  for (const LimitViolation& v : report.limit_violations) {
    j["limit_violations"].push_back({{"frame", v.frame},
                                     {"joint", v.joint},
                                     {"value", v.value},
                                     {"lo", v.lo},
                                     {"hi", v.hi}});
  }
  j["velocity_spikes"] = nlohmann::ordered_json::array();
  for (const VelocitySpike& v : report.velocity_spikes) {
    j["velocity_spikes"].push_back(
        {{"frame", v.frame}, {"joint", v.joint}, {"velocity", v.velocity}});
  }
  j["timestamp_gaps"] = nlohmann::ordered_json::array();
  for (const TimestampGap& g : report.timestamp_gaps) {
    j["timestamp_gaps"].push_back({{"frame", g.frame}, {"dt", g.dt}});
  }
  j["summary"] = {{"limit_violations", report.limit_violations.size()},
                  {"velocity_spikes", report.velocity_spikes.size()},
                  {"timestamp_gaps", report.timestamp_gaps.size()},
                  {"passed", report.empty()}};
  return j.dump(indent);
}

WholeBodyFrame mirror_frame(const WholeBodyFrame& frame, const RobotModel& model) {
  WholeBodyFrame out = frame;
  out.arm_joints = model.arm_mirror.apply(frame.arm_joints);
  out.hand_joints = model.hand_mirror.apply(frame.hand_joints);
  out.base_command.omega_z = -frame.base_command.omega_z;
  // Reflection across the x-z plane: y flips; the rotation is conjugated by
  // diag(1,-1,1), which negates the x and z quaternion components.
  out.base_pose.translation.y() = -frame.base_pose.translation.y();
  const UnitQuaternion& q = frame.base_pose.rotation;
  out.base_pose.rotation = UnitQuaternion(q.w(), -q.x(), q.y(), -q.z()).canonicalized();
  return out;
}

}  // namespace exo
