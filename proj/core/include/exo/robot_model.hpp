#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "exo/control.hpp"
#include "exo/kinematics.hpp"
#include "exo/retarget.hpp"

namespace exo {

struct HandModel {
  std::size_t active_per_hand = 6;
  JointLimit limits{-M_PI, M_PI};  // applied to every active hand joint
};

/// Controller-owned lower body: nominal pose, full limits, PD gains and the
/// left/right mirror table.
struct LowerBodyModel {
  Eigen::VectorXd q0;
  std::vector<JointLimit> limits;
  PdGains gains;
  MirrorSpec mirror;
};

/// Everything the pipeline needs to know about one robot + exoskeleton
/// pairing. The shipped default values are plausible placeholders; the real
/// exoskeleton DH table lives in its hardware documentation.
struct RobotModel {
  std::string name;
  ArmModel left_arm;
  ArmModel right_arm;
  HandModel hand;
  LowerBodyModel lower;
  MirrorSpec arm_mirror;   // over 14 arm joints [L0..L6, R0..R6]
  MirrorSpec hand_mirror;  // over 12 active hand joints [L0..L5, R0..R5]
  IkOptions ik;

  static constexpr std::size_t kArmJointCount = 14;
  static constexpr std::size_t kHandJointCount = 12;

  /// Limit of arm joint j in [0, 14): left arm 0-6, right arm 7-13.
  JointLimit arm_limit(std::size_t j) const;
  std::string arm_joint_name(std::size_t j) const;
};

/// Built-in placeholder model (G1-like 7-DoF arms, 12-joint lower body).
RobotModel default_robot_model();

RobotModel load_robot_model(const std::filesystem::path& path);
void save_robot_model(const RobotModel& model, const std::filesystem::path& path);

/// Standalone chain config files ({name, dh_rows, limits, passive_couplings}).
KinematicChain load_chain(const std::filesystem::path& path);
void save_chain(const KinematicChain& chain, const std::filesystem::path& path);

}  // namespace exo
