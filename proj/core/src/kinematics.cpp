#include "exo/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "exo/errors.hpp"

namespace exo {

namespace {

void check_dimension(const char* where, std::size_t expected, Eigen::Index actual) {
  if (static_cast<Eigen::Index>(expected) != actual) {
    std::ostringstream os;
    os << where << ": expected " << expected << " joint angles, got " << actual;
    throw DimensionError(os.str());
  }
}

/// Link transform for one DH row at joint angle theta (offset included).
Pose6D dh_transform(const DHRow& row, double theta) {
  Pose6D t;
  t.rotation = UnitQuaternion::from_axis_angle(Eigen::Vector3d::UnitZ(), theta) *
               UnitQuaternion::from_axis_angle(Eigen::Vector3d::UnitX(), row.alpha);
  t.translation = Eigen::Vector3d(row.a * std::cos(theta), row.a * std::sin(theta), row.d);
  return t;
}

}  // namespace

KinematicChain::KinematicChain(std::string name, std::vector<DHRow> rows,
                               std::vector<JointLimit> limits,
                               std::vector<PassiveCoupling> couplings)
    : name_(std::move(name)),
      rows_(std::move(rows)),
      limits_(std::move(limits)),
      couplings_(std::move(couplings)) {
  std::size_t active = 0;
  active_index_of_row_.assign(rows_.size(), -1);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    DHRow& row = rows_[i];
    if (!std::isfinite(row.a) || !std::isfinite(row.alpha) || !std::isfinite(row.d) ||
        !std::isfinite(row.theta_offset)) {
      throw ValidationError("KinematicChain '" + name_ + "': non-finite DH row");
    }
    row.alpha = wrap_angle(row.alpha);
    row.theta_offset = wrap_angle(row.theta_offset);
    if (row.kind == JointKind::revolute_active) {
      active_index_of_row_[i] = static_cast<int>(active);
      ++active;
    }
  }
  if (limits_.size() != active) {
    std::ostringstream os;
    os << "KinematicChain '" << name_ << "': " << active << " active joints but "
       << limits_.size() << " limits";
    throw DimensionError(os.str());
  }
  for (const JointLimit& lim : limits_) {
    if (!(lim.lo < lim.hi)) {
      throw ValidationError("KinematicChain '" + name_ + "': joint limit lo >= hi");
    }
  }
  coupling_of_row_.assign(rows_.size(), -1);
  for (std::size_t c = 0; c < couplings_.size(); ++c) {
    const PassiveCoupling& pc = couplings_[c];
    if (pc.passive_row >= rows_.size() ||
        rows_[pc.passive_row].kind != JointKind::revolute_passive) {
      throw ValidationError("KinematicChain '" + name_ +
                            "': coupling does not reference a passive row");
    }
    if (pc.active_joint >= active) {
      throw ValidationError("KinematicChain '" + name_ +
                            "': coupling references active joint out of range");
    }
    if (coupling_of_row_[pc.passive_row] != -1) {
      throw ValidationError("KinematicChain '" + name_ + "': duplicate coupling on one row");
    }
    if (!std::isfinite(pc.gain) || !std::isfinite(pc.offset)) {
      throw ValidationError("KinematicChain '" + name_ + "': non-finite coupling");
    }
    coupling_of_row_[pc.passive_row] = static_cast<int>(c);
  }
}

double KinematicChain::row_angle(std::size_t row_index, const Eigen::VectorXd& q) const {
  const DHRow& row = rows_[row_index];
  double theta = row.theta_offset;
  switch (row.kind) {
    case JointKind::revolute_active:
      theta += q[active_index_of_row_[row_index]];
      break;
    case JointKind::revolute_passive: {
      const int c = coupling_of_row_[row_index];
      if (c >= 0) {
        const PassiveCoupling& pc = couplings_[c];
        theta += pc.gain * q[static_cast<Eigen::Index>(pc.active_joint)] + pc.offset;
      }
      break;
    }
    case JointKind::fixed:
      break;
  }
  return theta;
}

Eigen::VectorXd KinematicChain::clamp(const Eigen::VectorXd& q) const {
  std::vector<bool> mask;
  return clamp(q, mask);
}

Eigen::VectorXd KinematicChain::clamp(const Eigen::VectorXd& q,
                                      std::vector<bool>& clamped_mask) const {
  check_dimension("clamp", active_count(), q.size());
  Eigen::VectorXd out = q;
  clamped_mask.assign(active_count(), false);
  for (std::size_t j = 0; j < active_count(); ++j) {
    const double v = std::clamp(q[static_cast<Eigen::Index>(j)], limits_[j].lo, limits_[j].hi);
    if (v != q[static_cast<Eigen::Index>(j)]) clamped_mask[j] = true;
    out[static_cast<Eigen::Index>(j)] = v;
  }
  return out;
}

bool KinematicChain::within_limits(const Eigen::VectorXd& q, double tol) const {
  check_dimension("within_limits", active_count(), q.size());
  for (std::size_t j = 0; j < active_count(); ++j) {
    const double v = q[static_cast<Eigen::Index>(j)];
    if (v < limits_[j].lo - tol || v > limits_[j].hi + tol) return false;
  }
  return true;
}

Pose6D fk_chain(const KinematicChain& chain, const Eigen::VectorXd& q) {
  check_dimension("fk_chain", chain.active_count(), q.size());
  if (!q.allFinite()) throw ValidationError("fk_chain: non-finite joint angle");
  Pose6D pose = Pose6D::identity();
  for (std::size_t i = 0; i < chain.rows().size(); ++i) {
    pose = pose.compose(dh_transform(chain.rows()[i], chain.row_angle(i, q)));
  }
  return pose;
}

Eigen::Matrix3Xd jacobian_orientation(const KinematicChain& chain, const Eigen::VectorXd& q) {
  check_dimension("jacobian_orientation", chain.active_count(), q.size());
  if (!q.allFinite()) throw ValidationError("jacobian_orientation: non-finite joint angle");
  Eigen::Matrix3Xd jac = Eigen::Matrix3Xd::Zero(3, static_cast<Eigen::Index>(chain.active_count()));
  UnitQuaternion rot;  // base -> frame preceding the current row
  std::size_t active = 0;
  for (std::size_t i = 0; i < chain.rows().size(); ++i) {
    const DHRow& row = chain.rows()[i];
    // Each revolute row turns about the z axis of the frame it acts in.
    const Eigen::Vector3d axis = rot.rotate(Eigen::Vector3d::UnitZ());
    if (row.kind == JointKind::revolute_active) {
      jac.col(static_cast<Eigen::Index>(active)) += axis;
      ++active;
    } else if (row.kind == JointKind::revolute_passive) {
      for (const PassiveCoupling& pc : chain.couplings()) {
        if (pc.passive_row == i) {
          jac.col(static_cast<Eigen::Index>(pc.active_joint)) += pc.gain * axis;
          break;
        }
      }
    }
    rot = rot * dh_transform(row, chain.row_angle(i, q)).rotation;
  }
  return jac;
}

IkResult ik_orientation(const KinematicChain& chain, const UnitQuaternion& target,
                        const Eigen::VectorXd& seed, const IkOptions& opts) {
  check_dimension("ik_orientation", chain.active_count(), seed.size());
  if (!seed.allFinite()) throw ValidationError("ik_orientation: non-finite seed");
  if (!(opts.tolerance > 0.0)) throw ValidationError("ik_orientation: tolerance must be > 0");
  if (opts.max_iterations < 1) throw ValidationError("ik_orientation: max_iterations must be >= 1");
  if (!(opts.damping >= 0.0)) throw ValidationError("ik_orientation: damping must be >= 0");
  if (!(opts.step_scale > 0.0) || opts.step_scale > 1.0) {
    throw ValidationError("ik_orientation: step_scale must be in (0, 1]");
  }

  IkResult result;
  Eigen::VectorXd q = chain.clamp(seed, result.clamped);
  Eigen::Vector3d err = orientation_error(fk_chain(chain, q).rotation, target);

  result.joints = q;
  result.residual = err.norm();
  if (result.residual <= opts.tolerance) {
    result.converged = true;
    return result;
  }

  // Levenberg-style: grow damping after a rejected step, relax it back
  // toward the configured value after progress.
  double lambda = std::max(opts.damping, 1e-9);
  double best_residual = result.residual;
  std::vector<bool> step_mask;
  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    result.iterations = iter;
    const Eigen::Matrix3Xd jac = jacobian_orientation(chain, q);
    Eigen::Matrix3d jjt = jac * jac.transpose();
    jjt.diagonal().array() += lambda * lambda;
    const Eigen::VectorXd dq = jac.transpose() * jjt.ldlt().solve(err) * opts.step_scale;

    const Eigen::VectorXd q_new = chain.clamp(q + dq, step_mask);
    const Eigen::Vector3d err_new = orientation_error(fk_chain(chain, q_new).rotation, target);
    const double r_new = err_new.norm();

    if (r_new < best_residual) {
      q = q_new;
      err = err_new;
      best_residual = r_new;
      result.joints = q;
      result.residual = r_new;
      result.clamped = step_mask;
      lambda = std::max(lambda * 0.5, std::max(opts.damping, 1e-9));
      if (r_new <= opts.tolerance) {
        result.converged = true;
        break;
      }
    } else {
      lambda = std::min(lambda * 4.0, 1e8);
      if ((q_new - q).lpNorm<Eigen::Infinity>() < 1e-15 && lambda >= 1e8) {
        break;  // pinned against limits; no progress possible
      }
    }
  }
  return result;
}

}  // namespace exo
