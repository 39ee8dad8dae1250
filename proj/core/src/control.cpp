#include "exo/control.hpp"

#include <cmath>
#include <sstream>

#include "exo/errors.hpp"

namespace exo {

namespace {

void check_same_size(const char* where, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) {
    std::ostringstream os;
    os << where << ": vector length mismatch (" << a.size() << " vs " << b.size() << ")";
    throw DimensionError(os.str());
  }
}

}  // namespace

Eigen::VectorXd build_observation(const BaseCommand& command, const Eigen::Vector3d& omega_body,
                                  const Eigen::Vector3d& gravity_body, const Eigen::VectorXd& q,
                                  const Eigen::VectorXd& qdot, const Eigen::VectorXd& a_prev) {
  check_same_size("build_observation: q/qdot", q, qdot);
  check_same_size("build_observation: q/a_prev", q, a_prev);
  const Eigen::Index n = q.size();
  Eigen::VectorXd flat(9 + 3 * n);
  flat[0] = command.v_x;
  flat[1] = command.omega_z;
  flat[2] = command.h;
  flat.segment<3>(3) = omega_body;
  flat.segment<3>(6) = gravity_body;
  flat.segment(9, n) = q;
  flat.segment(9 + n, n) = qdot;
  flat.segment(9 + 2 * n, n) = a_prev;
  return flat;
}

Observation unflatten_observation(const Eigen::VectorXd& flat, std::size_t joint_count) {
  const Eigen::Index n = static_cast<Eigen::Index>(joint_count);
  if (flat.size() != 9 + 3 * n) {
    std::ostringstream os;
    os << "unflatten_observation: expected length " << 9 + 3 * n << " for " << joint_count
       << " joints, got " << flat.size();
    throw DimensionError(os.str());
  }
  Observation obs;
  obs.command = BaseCommand{flat[0], flat[1], flat[2]};
  obs.omega_body = flat.segment<3>(3);
  obs.gravity_body = flat.segment<3>(6);
  obs.q = flat.segment(9, n);
  obs.qdot = flat.segment(9 + n, n);
  obs.a_prev = flat.segment(9 + 2 * n, n);
  return obs;
}

Eigen::VectorXd apply_action(const Eigen::VectorXd& q0, const Eigen::VectorXd& a) {
  check_same_size("apply_action", q0, a);
  return q0 + a;
}

Eigen::VectorXd pd_torque(const Eigen::VectorXd& q_des, const Eigen::VectorXd& q,
                          const Eigen::VectorXd& qdot, const PdGains& gains) {
  check_same_size("pd_torque: q_des/q", q_des, q);
  check_same_size("pd_torque: q/qdot", q, qdot);
  check_same_size("pd_torque: q/kp", q, gains.kp);
  check_same_size("pd_torque: q/kd", q, gains.kd);
  if (!q_des.allFinite() || !q.allFinite() || !qdot.allFinite()) {
    throw ValidationError("pd_torque: non-finite input");
  }
  for (Eigen::Index i = 0; i < gains.kp.size(); ++i) {
    if (!(gains.kp[i] >= 0.0) || !(gains.kd[i] >= 0.0)) {
      throw ValidationError("pd_torque: gains must be >= 0");
    }
  }
  Eigen::VectorXd tau(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    tau[i] = gains.kp[i] * (q_des[i] - q[i]) - gains.kd[i] * qdot[i];
  }
  return tau;
}

void MirrorSpec::validate() const {
  const std::size_t n = joint_permutation.size();
  if (joint_sign.size() != n) {
    throw DimensionError("MirrorSpec: permutation and sign lengths differ");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t p = joint_permutation[i];
    if (p >= n) throw ValidationError("MirrorSpec: permutation index out of range");
    if (joint_sign[i] != 1.0 && joint_sign[i] != -1.0) {
      throw ValidationError("MirrorSpec: signs must be +1 or -1");
    }
    if (joint_permutation[p] != i || joint_sign[i] * joint_sign[p] != 1.0) {
      throw ValidationError("MirrorSpec: applying the spec twice is not the identity");
    }
  }
}

Eigen::VectorXd MirrorSpec::apply(const Eigen::VectorXd& v) const {
  if (v.size() != static_cast<Eigen::Index>(joint_permutation.size())) {
    std::ostringstream os;
    os << "MirrorSpec: vector length " << v.size() << " does not match spec size "
       << joint_permutation.size();
    throw DimensionError(os.str());
  }
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < joint_permutation.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] =
        joint_sign[i] * v[static_cast<Eigen::Index>(joint_permutation[i])];
  }
  return out;
}

MirroredTransition mirror(const Eigen::VectorXd& q, const Eigen::VectorXd& qdot,
                          const Eigen::VectorXd& a, const BaseCommand& command,
                          const MirrorSpec& spec) {
  spec.validate();
  MirroredTransition out;
  out.q = spec.apply(q);
  out.qdot = spec.apply(qdot);
  out.a = spec.apply(a);
  out.command = BaseCommand{command.v_x, -command.omega_z, command.h};
  return out;
}

std::vector<JointLimit> scaled_limits(const JointRangeCurriculum& curriculum) {
  if (!(curriculum.r >= 0.0 && curriculum.r <= 1.0)) {
    throw ValidationError("scaled_limits: r must be in [0, 1]");
  }
  if (curriculum.q0.size() != static_cast<Eigen::Index>(curriculum.full_limits.size())) {
    throw DimensionError("scaled_limits: q0 and full_limits lengths differ");
  }
  std::vector<JointLimit> out(curriculum.full_limits.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double q0 = curriculum.q0[static_cast<Eigen::Index>(i)];
    const JointLimit& full = curriculum.full_limits[i];
    if (q0 < full.lo || q0 > full.hi) {
      throw ValidationError("scaled_limits: q0 outside full limits");
    }
    out[i].lo = q0 + curriculum.r * (full.lo - q0);
    out[i].hi = q0 + curriculum.r * (full.hi - q0);
  }
  return out;
}

MirrorSpec default_lower_body_mirror() {
  MirrorSpec spec;
  spec.joint_permutation = {6, 7, 8, 9, 10, 11, 0, 1, 2, 3, 4, 5};
  // pitch-like joints keep sign, roll/yaw-like joints flip.
  const double side[6] = {1.0, -1.0, -1.0, 1.0, 1.0, -1.0};
  spec.joint_sign.assign(12, 1.0);
  for (std::size_t i = 0; i < 12; ++i) spec.joint_sign[i] = side[i % 6];
  spec.validate();
  return spec;
}

}  // namespace exo
