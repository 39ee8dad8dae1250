#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "exo/quaternion.hpp"

namespace exo {

/// One externally estimated torso pose (LiDAR-inertial odometry output).
struct OdomSample {
  double timestamp = 0.0;  // seconds
  Pose6D pose;             // world-frame torso pose, meters
};

/// Command triple consumed by the balance controller:
/// body-frame forward velocity, yaw rate, torso height.
struct BaseCommand {
  double v_x = 0.0;      // m/s
  double omega_z = 0.0;  // rad/s
  double h = 0.0;        // meters, > 0
};

/// Torso-frame quantities fed to the controller observation.
struct BaseState {
  Eigen::Vector3d omega_body{0.0, 0.0, 0.0};    // rad/s
  Eigen::Vector3d gravity_body{0.0, 0.0, -1.0}; // unit vector
};

struct BaseCommandParams {
  double smoothing_alpha = 0.3;      // EMA weight of the newest sample; 1 = raw
  double standing_height_ref = 0.75; // meters, kept for downstream normalization
};

struct TimedCommand {
  double timestamp = 0.0;
  BaseCommand command;
};

/// Converts an odometry stream into commands by backward finite differences
/// plus per-channel EMA (seeded with the first raw value). v_x is the
/// body-frame x component of the world velocity rotated into the torso
/// frame of the newer sample; omega_z is the wrapped ZYX-yaw difference
/// over dt; h is the world z of the pose. Output has length N-1, stamped at
/// the newer sample of each pair.
std::vector<TimedCommand> estimate_base_commands(std::span<const OdomSample> stream,
                                                 const BaseCommandParams& params);

/// World down-vector (0,0,-1) expressed in the torso frame, i.e. rotated by
/// the inverse torso orientation. With the active-rotation convention here,
/// a +90 degree pitch about body y yields (+1, 0, 0).
Eigen::Vector3d gravity_in_torso(const UnitQuaternion& orientation);

/// Body-frame angular velocity between two samples:
/// rotation vector of conjugate(prev) * next, divided by dt.
Eigen::Vector3d angular_velocity_body(const OdomSample& prev, const OdomSample& next);

/// Torso-frame observation quantities at the newer of the two samples.
BaseState base_state(const OdomSample& prev, const OdomSample& next);

/// ZYX Euler yaw of an orientation, in (-pi, pi].
double yaw_of(const UnitQuaternion& q);

}  // namespace exo
