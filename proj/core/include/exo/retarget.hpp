#pragma once

#include <array>
#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "exo/kinematics.hpp"
#include "exo/quaternion.hpp"

namespace exo {

/// One arm's exoskeleton sensor sample: encoder angles along the upper-arm
/// chain, the elbow motor angle, and the two IMU orientations (wrist-glove
/// and forearm) in a shared world frame.
struct ExoArmFrame {
  double timestamp = 0.0;           // seconds
  Eigen::VectorXd encoder_angles;   // radians, exo chain active joints
  double elbow_angle = 0.0;         // radians
  UnitQuaternion imu_wrist;         // q^w
  UnitQuaternion imu_forearm;       // q^f
};

/// IMU readings captured while the operator holds the wrist home position.
struct WristCalibration {
  UnitQuaternion q_w0;
  UnitQuaternion q_f0;
};

/// Affine elbow map from human bend angle to robot forearm joint.
struct ElbowMap {
  double gain = 1.0;
  double offset = 0.0;
  JointLimit limits{-M_PI, M_PI};
};

/// Kinematic description of one recorded arm: the exoskeleton upper-arm
/// chain and the robot-side shoulder / wrist subchains it maps onto.
struct ArmModel {
  KinematicChain exo_chain;
  KinematicChain shoulder_chain;  // robot joints 0-2
  ElbowMap elbow;                 // robot joint 3
  KinematicChain wrist_chain;     // robot joints 4-6
};

/// 7-DoF robot arm solution. clamped_mask is true exactly where a joint
/// limit cut the solution.
struct RobotArmJoints {
  Eigen::Vector3d shoulder{0.0, 0.0, 0.0};
  double elbow = 0.0;
  Eigen::Vector3d wrist{0.0, 0.0, 0.0};
  std::array<bool, 7> clamped_mask{};

  Eigen::Matrix<double, 7, 1> flat() const;
};

/// Wrist orientation relative to the forearm:
/// conjugate(q^f) * q^w * conjugate(q^w0) * q^f0, canonicalized.
/// Invariant under any common world rotation applied to both IMUs.
UnitQuaternion wrist_relative_rotation(const ExoArmFrame& frame, const WristCalibration& calib);

struct AlignResult {
  Eigen::Vector3d joints;
  double residual = 0.0;
  std::array<bool, 3> clamped{};
};

/// Upper-arm stage: FK through the exoskeleton chain gives the upper-arm
/// orientation; orientation IK maps it onto the robot shoulder joints.
AlignResult align_upper_arm(const ExoArmFrame& frame, const KinematicChain& exo_chain,
                            const KinematicChain& shoulder_chain, const Eigen::Vector3d& seed,
                            const IkOptions& opts);

struct ElbowResult {
  double angle = 0.0;
  bool clamped = false;
};

/// Forearm stage: direct affine map of the elbow bend, clamped to limits.
ElbowResult align_elbow(double elbow_angle, const ElbowMap& map);

/// Wrist stage: IK on the robot wrist subchain toward the IMU-derived
/// relative rotation.
AlignResult align_wrist(const ExoArmFrame& frame, const WristCalibration& calib,
                        const KinematicChain& wrist_chain, const Eigen::Vector3d& seed,
                        const IkOptions& opts);

/// Full three-stage retarget of one sensor frame. IK is seeded from
/// `previous` when given (temporal continuity), zeros otherwise.
/// Deterministic for identical inputs.
RobotArmJoints retarget_frame(const ExoArmFrame& frame, const WristCalibration& calib,
                              const ArmModel& model, const IkOptions& opts,
                              const RobotArmJoints* previous = nullptr);

/// Averages the first `window` samples' IMU readings into a home
/// calibration (sign-aligned component mean, normalized). Throws
/// CalibrationError if either IMU spans more than 10 degrees.
WristCalibration calibrate_home(std::span<const ExoArmFrame> samples, std::size_t window);

}  // namespace exo
