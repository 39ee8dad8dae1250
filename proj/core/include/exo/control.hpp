#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "exo/base_motion.hpp"
#include "exo/kinematics.hpp"

namespace exo {

/// Balance-policy input, flattened as [command, omega_body, gravity_body,
/// q, qdot, a_prev] with q, qdot and a_prev all of length n
/// (total 9 + 3n).
struct Observation {
  BaseCommand command;
  Eigen::Vector3d omega_body{0.0, 0.0, 0.0};
  Eigen::Vector3d gravity_body{0.0, 0.0, -1.0};
  Eigen::VectorXd q;
  Eigen::VectorXd qdot;
  Eigen::VectorXd a_prev;
};

/// Concatenates the observation fields in the documented order.
Eigen::VectorXd build_observation(const BaseCommand& command, const Eigen::Vector3d& omega_body,
                                  const Eigen::Vector3d& gravity_body, const Eigen::VectorXd& q,
                                  const Eigen::VectorXd& qdot, const Eigen::VectorXd& a_prev);

/// Inverse of build_observation for a known joint count.
Observation unflatten_observation(const Eigen::VectorXd& flat, std::size_t joint_count);

/// Desired joint targets: q0 + a.
Eigen::VectorXd apply_action(const Eigen::VectorXd& q0, const Eigen::VectorXd& a);

struct PdGains {
  Eigen::VectorXd kp;  // N*m/rad, >= 0
  Eigen::VectorXd kd;  // N*m*s/rad, >= 0
};

/// tau_i = kp_i * (q_des_i - q_i) - kd_i * qdot_i
Eigen::VectorXd pd_torque(const Eigen::VectorXd& q_des, const Eigen::VectorXd& q,
                          const Eigen::VectorXd& qdot, const PdGains& gains);

/// Signed permutation describing the x-z-plane mirror of a joint vector.
/// Applying it twice must be the identity; validate() enforces that.
struct MirrorSpec {
  std::vector<std::size_t> joint_permutation;
  std::vector<double> joint_sign;  // each +1 or -1

  void validate() const;
  std::size_t size() const { return joint_permutation.size(); }

  /// out[i] = joint_sign[i] * v[joint_permutation[i]]
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
};

struct MirroredTransition {
  Eigen::VectorXd q;
  Eigen::VectorXd qdot;
  Eigen::VectorXd a;
  BaseCommand command;
};

/// Mirrors joint state and action vectors per the spec and flips the yaw
/// command; v_x and h are unchanged. The input is not modified.
MirroredTransition mirror(const Eigen::VectorXd& q, const Eigen::VectorXd& qdot,
                          const Eigen::VectorXd& a, const BaseCommand& command,
                          const MirrorSpec& spec);

/// Training curriculum that widens the admissible joint range around the
/// nominal pose q0 as the ratio r grows from 0 (frozen at q0) to 1 (full
/// limits).
struct JointRangeCurriculum {
  Eigen::VectorXd q0;
  std::vector<JointLimit> full_limits;
  double r = 1.0;
};

/// lo_i(r) = q0_i + r * (lo_i - q0_i), hi_i(r) = q0_i + r * (hi_i - q0_i).
std::vector<JointLimit> scaled_limits(const JointRangeCurriculum& curriculum);

/// Shipped left/right table for a 12-joint lower body ordered
/// [hip_pitch, hip_roll, hip_yaw, knee, ankle_pitch, ankle_roll] x {L, R}.
/// Sign conventions are robot-specific; treat as a placeholder default.
MirrorSpec default_lower_body_mirror();

}  // namespace exo
