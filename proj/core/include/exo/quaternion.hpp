#pragma once

#include <Eigen/Core>

namespace exo {

/// Unit quaternion representing a 3D rotation.
///
/// Convention (inherited by every module in this library):
///   - Hamilton product, scalar-first component order (w, x, y, z).
///   - Right-handed frames, active rotations: q maps body-frame vectors
///     into the parent frame, rotate(v) = q v q*.
///   - Angles are radians everywhere; degrees appear only in CLI output.
///   - Serialized as the array [w, x, y, z].
///
/// Constructors accept components within 1e-9 of unit norm as-is (so a
/// serialize/parse round trip does not perturb values) and renormalize
/// anything farther out. Non-finite or near-zero inputs throw.
class UnitQuaternion {
 public:
  /// Identity rotation.
  UnitQuaternion() : w_(1.0), x_(0.0), y_(0.0), z_(0.0) {}

  UnitQuaternion(double w, double x, double y, double z);

  /// Axis need not be normalized; zero axis throws unless angle is 0.
  static UnitQuaternion from_axis_angle(const Eigen::Vector3d& axis, double angle_rad);

  /// Exponential map: rotation vector (axis * angle) to quaternion.
  static UnitQuaternion from_rotation_vector(const Eigen::Vector3d& rv);

  double w() const { return w_; }
  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }

  /// (w, -x, -y, -z), canonicalized.
  UnitQuaternion conjugate() const;

  /// Resolves the double cover: flips sign so that w > 0. At w == 0 the
  /// sign is fixed by making the largest-magnitude vector component
  /// positive (lowest index wins ties).
  UnitQuaternion canonicalized() const;

  Eigen::Vector3d rotate(const Eigen::Vector3d& v) const;

  Eigen::Matrix3d to_rotation_matrix() const;

  /// Logarithm map: axis * angle with angle in [0, pi]. The sign
  /// ambiguity at pi follows canonicalized().
  Eigen::Vector3d to_rotation_vector() const;

  double dot(const UnitQuaternion& other) const {
    return w_ * other.w_ + x_ * other.x_ + y_ * other.y_ + z_ * other.z_;
  }

  /// Rotation angle between the two orientations, in [0, pi].
  double angle_to(const UnitQuaternion& other) const;

  /// Component-wise proximity after resolving the double cover.
  bool approx_equal(const UnitQuaternion& other, double tol) const;

  /// Hamilton product, renormalized and canonicalized.
  friend UnitQuaternion operator*(const UnitQuaternion& a, const UnitQuaternion& b);

 private:
  struct unchecked_t {};
  UnitQuaternion(unchecked_t, double w, double x, double y, double z)
      : w_(w), x_(x), y_(y), z_(z) {}

  double w_, x_, y_, z_;
};

/// Shortest-path spherical interpolation, t in [0, 1]. Output is unit norm.
UnitQuaternion slerp(const UnitQuaternion& a, const UnitQuaternion& b, double t);

/// Rotation vector of target * conjugate(current): the world-frame rotation
/// that carries `current` onto `target`. Magnitude in [0, pi].
Eigen::Vector3d orientation_error(const UnitQuaternion& current, const UnitQuaternion& target);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double angle_rad);

/// Rigid transform: rotation followed by translation (meters).
struct Pose6D {
  UnitQuaternion rotation;
  Eigen::Vector3d translation{0.0, 0.0, 0.0};

  static Pose6D identity() { return Pose6D{}; }

  /// this * other: `other` expressed in this pose's frame.
  Pose6D compose(const Pose6D& other) const;

  Pose6D inverse() const;

  /// Transforms a point.
  Eigen::Vector3d apply(const Eigen::Vector3d& p) const;
};

}  // namespace exo
