#include "exo/quaternion.hpp"

#include <cmath>

#include <Eigen/Geometry>

#include "exo/errors.hpp"

namespace exo {

namespace {

bool all_finite(double w, double x, double y, double z) {
  return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

}  // namespace

UnitQuaternion::UnitQuaternion(double w, double x, double y, double z)
    : w_(w), x_(x), y_(y), z_(z) {
  if (!all_finite(w, x, y, z)) {
    throw ValidationError("UnitQuaternion: non-finite component");
  }
  const double n2 = w * w + x * x + y * y + z * z;
  if (n2 < 1e-24) {
    throw ValidationError("UnitQuaternion: near-zero norm");
  }
  // Inputs already unit within 1e-9 are kept bit-exact.
  if (std::abs(n2 - 1.0) > 2e-9) {
    const double inv = 1.0 / std::sqrt(n2);
    w_ *= inv;
    x_ *= inv;
    y_ *= inv;
    z_ *= inv;
  }
}

UnitQuaternion UnitQuaternion::from_axis_angle(const Eigen::Vector3d& axis, double angle_rad) {
  if (!std::isfinite(angle_rad)) {
    throw ValidationError("from_axis_angle: non-finite angle");
  }
  const double n = axis.norm();
  if (n < 1e-15) {
    if (std::abs(angle_rad) < 1e-15) return UnitQuaternion();
    throw ValidationError("from_axis_angle: zero axis with nonzero angle");
  }
  const double half = 0.5 * angle_rad;
  const double s = std::sin(half) / n;
  return UnitQuaternion(std::cos(half), s * axis.x(), s * axis.y(), s * axis.z());
}

UnitQuaternion UnitQuaternion::from_rotation_vector(const Eigen::Vector3d& rv) {
  const double angle = rv.norm();
  if (angle < 1e-15) {
    // First-order expansion keeps exp/log inverses near the identity.
    return UnitQuaternion(1.0, 0.5 * rv.x(), 0.5 * rv.y(), 0.5 * rv.z());
  }
  return from_axis_angle(rv, angle);
}

UnitQuaternion UnitQuaternion::conjugate() const {
  return UnitQuaternion(unchecked_t{}, w_, -x_, -y_, -z_).canonicalized();
}

UnitQuaternion UnitQuaternion::canonicalized() const {
  bool flip = false;
  if (w_ < 0.0) {
    flip = true;
  } else if (w_ == 0.0) {
    // Axis of a half-turn is sign-ambiguous; pin it deterministically.
    const double ax = std::abs(x_), ay = std::abs(y_), az = std::abs(z_);
    double lead = x_;
    if (ay > ax && ay >= az) lead = y_;
    else if (az > ax && az > ay) lead = z_;
    flip = lead < 0.0;
  }
  if (!flip) return *this;
  return UnitQuaternion(unchecked_t{}, -w_, -x_, -y_, -z_);
}

Eigen::Vector3d UnitQuaternion::rotate(const Eigen::Vector3d& v) const {
  // v' = v + 2 w (u x v) + 2 u x (u x v), u = vector part.
  const Eigen::Vector3d u(x_, y_, z_);
  const Eigen::Vector3d t = 2.0 * u.cross(v);
  return v + w_ * t + u.cross(t);
}

Eigen::Matrix3d UnitQuaternion::to_rotation_matrix() const {
  const double ww = w_ * w_, xx = x_ * x_, yy = y_ * y_, zz = z_ * z_;
  const double wx = w_ * x_, wy = w_ * y_, wz = w_ * z_;
  const double xy = x_ * y_, xz = x_ * z_, yz = y_ * z_;
  Eigen::Matrix3d m;
  m << ww + xx - yy - zz, 2.0 * (xy - wz), 2.0 * (xz + wy),
       2.0 * (xy + wz), ww - xx + yy - zz, 2.0 * (yz - wx),
       2.0 * (xz - wy), 2.0 * (yz + wx), ww - xx - yy + zz;
  return m;
}

Eigen::Vector3d UnitQuaternion::to_rotation_vector() const {
  const UnitQuaternion q = canonicalized();
  const Eigen::Vector3d u(q.x_, q.y_, q.z_);
  const double n = u.norm();
  if (n < 1e-12) {
    return 2.0 * u;  // angle ~ 2n, axis ~ u/n
  }
  const double angle = 2.0 * std::atan2(n, q.w_);
  return (angle / n) * u;
}

double UnitQuaternion::angle_to(const UnitQuaternion& other) const {
  const double d = std::min(1.0, std::abs(dot(other)));
  return 2.0 * std::acos(d);
}

bool UnitQuaternion::approx_equal(const UnitQuaternion& other, double tol) const {
  const double sign = dot(other) < 0.0 ? -1.0 : 1.0;
  return std::abs(w_ - sign * other.w_) <= tol && std::abs(x_ - sign * other.x_) <= tol &&
         std::abs(y_ - sign * other.y_) <= tol && std::abs(z_ - sign * other.z_) <= tol;
}

UnitQuaternion operator*(const UnitQuaternion& a, const UnitQuaternion& b) {
  const double w = a.w_ * b.w_ - a.x_ * b.x_ - a.y_ * b.y_ - a.z_ * b.z_;
  const double x = a.w_ * b.x_ + a.x_ * b.w_ + a.y_ * b.z_ - a.z_ * b.y_;
  const double y = a.w_ * b.y_ - a.x_ * b.z_ + a.y_ * b.w_ + a.z_ * b.x_;
  const double z = a.w_ * b.z_ + a.x_ * b.y_ - a.y_ * b.x_ + a.z_ * b.w_;
  return UnitQuaternion(w, x, y, z).canonicalized();
}

UnitQuaternion slerp(const UnitQuaternion& a, const UnitQuaternion& b, double t) {
  if (!std::isfinite(t)) throw ValidationError("slerp: non-finite t");
  double cos_theta = a.dot(b);
  double sign = 1.0;
  if (cos_theta < 0.0) {  // shortest path
    cos_theta = -cos_theta;
    sign = -1.0;
  }
  double wa, wb;
  if (cos_theta > 1.0 - 1e-12) {
    wa = 1.0 - t;  // nearly parallel: lerp, then normalize in the ctor
    wb = t;
  } else {
    const double theta = std::acos(std::min(1.0, cos_theta));
    const double s = std::sin(theta);
    wa = std::sin((1.0 - t) * theta) / s;
    wb = std::sin(t * theta) / s;
  }
  wb *= sign;
  return UnitQuaternion(wa * a.w() + wb * b.w(), wa * a.x() + wb * b.x(),
                        wa * a.y() + wb * b.y(), wa * a.z() + wb * b.z());
}

Eigen::Vector3d orientation_error(const UnitQuaternion& current, const UnitQuaternion& target) {
  return (target * current.conjugate()).to_rotation_vector();
}

double wrap_angle(double angle_rad) {
  if (!std::isfinite(angle_rad)) {
    throw ValidationError("wrap_angle: non-finite angle");
  }
  double a = std::fmod(angle_rad, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  else if (a > M_PI) a -= 2.0 * M_PI;
  return a;
}

Pose6D Pose6D::compose(const Pose6D& other) const {
  Pose6D out;
  out.rotation = rotation * other.rotation;
  out.translation = translation + rotation.rotate(other.translation);
  return out;
}

Pose6D Pose6D::inverse() const {
  Pose6D out;
  out.rotation = rotation.conjugate();
  out.translation = -out.rotation.rotate(translation);
  return out;
}

Eigen::Vector3d Pose6D::apply(const Eigen::Vector3d& p) const {
  return translation + rotation.rotate(p);
}

}  // namespace exo
