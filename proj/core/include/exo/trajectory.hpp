#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "exo/base_motion.hpp"
#include "exo/quaternion.hpp"
#include "exo/robot_model.hpp"

namespace exo {

/// Timestamped joint-vector sample (used for arm and hand channels).
struct TimedVector {
  double timestamp = 0.0;
  Eigen::VectorXd values;
};

/// Timestamped discrete channel of camera frame identifiers.
struct TimedCameraRefs {
  double timestamp = 0.0;
  std::vector<std::string> refs;
};

/// Per-target flags set when a target time fell outside the source span and
/// was hold-extrapolated (allowed by at most one sample period).
using ExtrapolationFlags = std::vector<bool>;

/// Piecewise-linear resampling of a scalar channel.
std::vector<double> resample(std::span<const double> times, std::span<const double> values,
                             std::span<const double> target_times,
                             ExtrapolationFlags* flags = nullptr);

/// Piecewise-linear resampling of a joint-vector channel.
std::vector<Eigen::VectorXd> resample(std::span<const double> times,
                                      std::span<const Eigen::VectorXd> values,
                                      std::span<const double> target_times,
                                      ExtrapolationFlags* flags = nullptr);

/// Spherical (slerp) resampling of an orientation channel; output is unit
/// norm at every target.
std::vector<UnitQuaternion> resample(std::span<const double> times,
                                     std::span<const UnitQuaternion> values,
                                     std::span<const double> target_times,
                                     ExtrapolationFlags* flags = nullptr);

/// Zero-order hold for discrete channels: each target takes the latest
/// sample at or before it (the first sample before the stream starts).
std::vector<std::vector<std::string>> resample_hold(std::span<const double> times,
                                                    std::span<const std::vector<std::string>> values,
                                                    std::span<const double> target_times,
                                                    ExtrapolationFlags* flags = nullptr);

/// One synchronized whole-body record: 14 arm joints (left then right), 12
/// active hand joints (left then right), the base command and the raw
/// odometry pose. Legs are controller-owned, so frames carry commands
/// rather than leg joint targets.
struct WholeBodyFrame {
  double timestamp = 0.0;
  Eigen::VectorXd arm_joints;   // 14
  Eigen::VectorXd hand_joints;  // 12
  BaseCommand base_command;
  Pose6D base_pose;
  std::vector<std::string> camera_refs;
};

/// Resamples every channel onto a uniform grid at rate_hz covering the
/// intersection of all stream spans: grid size floor(overlap * rate) + 1.
/// Joint channels interpolate linearly, the pose rotation slerps, camera
/// refs hold. Deterministic.
std::vector<WholeBodyFrame> synchronize(std::span<const TimedVector> arm,
                                        std::span<const TimedVector> hands,
                                        std::span<const OdomSample> odom,
                                        std::span<const TimedCommand> commands, double rate_hz,
                                        std::span<const TimedCameraRefs> camera = {});

struct LimitViolation {
  std::size_t frame = 0;
  std::size_t joint = 0;  // 0-13 arm, 14-25 hand
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

struct VelocitySpike {
  std::size_t frame = 0;  // index of the later frame of the offending pair
  std::size_t joint = 0;
  double velocity = 0.0;  // rad/s
};

struct TimestampGap {
  std::size_t frame = 0;
  double dt = 0.0;
};

struct ValidationThresholds {
  double max_joint_vel = 10.0;  // rad/s
  double max_dt = 0.1;          // seconds
};

struct ValidationReport {
  std::vector<LimitViolation> limit_violations;
  std::vector<VelocitySpike> velocity_spikes;
  std::vector<TimestampGap> timestamp_gaps;

  bool empty() const {
    return limit_violations.empty() && velocity_spikes.empty() && timestamp_gaps.empty();
  }
};

/// Feasibility gate before dataset export: joint limits, finite-difference
/// joint velocities and timestamp gaps. Never throws; everything found is
/// reported.
ValidationReport validate(std::span<const WholeBodyFrame> frames, const RobotModel& model,
                          const ValidationThresholds& thresholds = {});

std::string to_json(const ValidationReport& report, int indent = 2);

/// Reflects a frame across the robot's x-z plane: arm and hand vectors go
/// through the model's mirror tables, omega_z flips, the pose's y
/// translation and roll/yaw components are negated.
WholeBodyFrame mirror_frame(const WholeBodyFrame& frame, const RobotModel& model);

}  // namespace exo
