#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "exo/quaternion.hpp"

namespace exo {

enum class JointKind { revolute_active, revolute_passive, fixed };

/// One Denavit-Hartenberg link row. The link transform is
/// RotZ(theta) * TransZ(d) * TransX(a) * RotX(alpha), with theta the joint
/// angle plus theta_offset. alpha and theta_offset are wrapped to (-pi, pi]
/// at construction.
struct DHRow {
  double a = 0.0;             // meters
  double alpha = 0.0;         // radians
  double d = 0.0;             // meters
  double theta_offset = 0.0;  // radians
  JointKind kind = JointKind::revolute_active;
};

/// Passive joints in linkages / timing belts move as a linear function of
/// one active joint: theta_passive = gain * q_active + offset.
struct PassiveCoupling {
  std::size_t passive_row = 0;   // index into rows
  std::size_t active_joint = 0;  // index among active joints
  double gain = 0.0;
  double offset = 0.0;
};

struct JointLimit {
  double lo = 0.0;
  double hi = 0.0;
};

/// Serial chain of DH rows plus per-active-joint limits. Immutable after
/// construction and safe to share across threads.
class KinematicChain {
 public:
  KinematicChain() = default;
  KinematicChain(std::string name, std::vector<DHRow> rows, std::vector<JointLimit> limits,
                 std::vector<PassiveCoupling> couplings = {});

  const std::string& name() const { return name_; }
  const std::vector<DHRow>& rows() const { return rows_; }
  const std::vector<JointLimit>& limits() const { return limits_; }
  const std::vector<PassiveCoupling>& couplings() const { return couplings_; }
  std::size_t active_count() const { return limits_.size(); }

  /// Joint angle of row `row_index` given the active joint vector.
  double row_angle(std::size_t row_index, const Eigen::VectorXd& q) const;

  Eigen::VectorXd clamp(const Eigen::VectorXd& q) const;
  Eigen::VectorXd clamp(const Eigen::VectorXd& q, std::vector<bool>& clamped_mask) const;
  bool within_limits(const Eigen::VectorXd& q, double tol = 0.0) const;

 private:
  std::string name_;
  std::vector<DHRow> rows_;
  std::vector<JointLimit> limits_;
  std::vector<PassiveCoupling> couplings_;
  std::vector<int> coupling_of_row_;  // -1 when uncoupled
  std::vector<int> active_index_of_row_;
};

/// Pose of the distal frame relative to the chain base. q holds one angle
/// per active joint; passive rows follow their couplings.
Pose6D fk_chain(const KinematicChain& chain, const Eigen::VectorXd& q);

/// Geometric orientation Jacobian (world frame): 3 x active_count, column j
/// is the angular velocity of the distal frame per unit rate of joint j.
Eigen::Matrix3Xd jacobian_orientation(const KinematicChain& chain, const Eigen::VectorXd& q);

struct IkOptions {
  double damping = 1e-2;     // initial Levenberg damping
  int max_iterations = 100;
  double tolerance = 1e-6;   // radians
  double step_scale = 1.0;   // in (0, 1]
};

struct IkResult {
  Eigen::VectorXd joints;
  double residual = 0.0;  // orientation error magnitude at `joints`, radians
  int iterations = 0;
  bool converged = false;
  std::vector<bool> clamped;  // joints pinned by a limit in the accepted step
};

/// Damped-least-squares orientation IK. Non-convergence is not an error:
/// the best iterate found and its residual are returned. Joints are always
/// within limits on return. NaN in target or seed throws.
IkResult ik_orientation(const KinematicChain& chain, const UnitQuaternion& target,
                        const Eigen::VectorXd& seed, const IkOptions& opts = {});

}  // namespace exo
