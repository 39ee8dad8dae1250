#include "exo/retarget.hpp"

#include <cmath>
#include <sstream>

#include "exo/errors.hpp"

namespace exo {

namespace {

constexpr double kMaxCalibSpreadRad = 10.0 * M_PI / 180.0;

void check_frame(const ExoArmFrame& frame, const KinematicChain& exo_chain) {
  if (!std::isfinite(frame.timestamp)) {
    throw ValidationError("ExoArmFrame: non-finite timestamp");
  }
  if (!frame.encoder_angles.allFinite()) {
    throw ValidationError("ExoArmFrame: non-finite encoder angle");
  }
  if (frame.encoder_angles.size() != static_cast<Eigen::Index>(exo_chain.active_count())) {
    std::ostringstream os;
    os << "ExoArmFrame: expected " << exo_chain.active_count() << " encoder angles, got "
       << frame.encoder_angles.size();
    throw DimensionError(os.str());
  }
}

UnitQuaternion mean_quaternion(std::span<const ExoArmFrame> samples, std::size_t window,
                               bool wrist) {
  const UnitQuaternion& ref = wrist ? samples[0].imu_wrist : samples[0].imu_forearm;
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;
  for (std::size_t i = 0; i < window; ++i) {
    const UnitQuaternion& q = wrist ? samples[i].imu_wrist : samples[i].imu_forearm;
    const double sign = q.dot(ref) < 0.0 ? -1.0 : 1.0;
    w += sign * q.w();
    x += sign * q.x();
    y += sign * q.y();
    z += sign * q.z();
  }
  const UnitQuaternion mean = UnitQuaternion(w, x, y, z).canonicalized();
  for (std::size_t i = 0; i < window; ++i) {
    const UnitQuaternion& q = wrist ? samples[i].imu_wrist : samples[i].imu_forearm;
    if (q.angle_to(mean) > kMaxCalibSpreadRad) {
      throw CalibrationError(wrist ? "calibrate_home: wrist IMU spans more than 10 degrees"
                                   : "calibrate_home: forearm IMU spans more than 10 degrees");
    }
  }
  return mean;
}

}  // namespace

Eigen::Matrix<double, 7, 1> RobotArmJoints::flat() const {
  Eigen::Matrix<double, 7, 1> out;
  out << shoulder.x(), shoulder.y(), shoulder.z(), elbow, wrist.x(), wrist.y(), wrist.z();
  return out;
}

UnitQuaternion wrist_relative_rotation(const ExoArmFrame& frame, const WristCalibration& calib) {
  return (frame.imu_forearm.conjugate() * frame.imu_wrist * calib.q_w0.conjugate() * calib.q_f0)
      .canonicalized();
}

AlignResult align_upper_arm(const ExoArmFrame& frame, const KinematicChain& exo_chain,
                            const KinematicChain& shoulder_chain, const Eigen::Vector3d& seed,
                            const IkOptions& opts) {
  check_frame(frame, exo_chain);
  Eigen::VectorXd enc = frame.encoder_angles;
  for (Eigen::Index i = 0; i < enc.size(); ++i) enc[i] = wrap_angle(enc[i]);
  if (!exo_chain.within_limits(enc, 1e-9)) {
    throw ValidationError("align_upper_arm: encoder angles outside exoskeleton limits");
  }
  const UnitQuaternion upper_arm = fk_chain(exo_chain, enc).rotation;
  const IkResult ik = ik_orientation(shoulder_chain, upper_arm, seed, opts);
  AlignResult out;
  out.joints = ik.joints.head<3>();
  out.residual = ik.residual;
  for (int j = 0; j < 3; ++j) out.clamped[static_cast<std::size_t>(j)] = ik.clamped[static_cast<std::size_t>(j)];
  return out;
}

ElbowResult align_elbow(double elbow_angle, const ElbowMap& map) {
  if (!std::isfinite(elbow_angle)) {
    throw ValidationError("align_elbow: non-finite elbow angle");
  }
  const double raw = map.gain * elbow_angle + map.offset;
  ElbowResult out;
  out.angle = std::clamp(raw, map.limits.lo, map.limits.hi);
  out.clamped = out.angle != raw;
  return out;
}

AlignResult align_wrist(const ExoArmFrame& frame, const WristCalibration& calib,
                        const KinematicChain& wrist_chain, const Eigen::Vector3d& seed,
                        const IkOptions& opts) {
  const UnitQuaternion target = wrist_relative_rotation(frame, calib);
  const IkResult ik = ik_orientation(wrist_chain, target, seed, opts);
  AlignResult out;
  out.joints = ik.joints.head<3>();
  out.residual = ik.residual;
  for (int j = 0; j < 3; ++j) out.clamped[static_cast<std::size_t>(j)] = ik.clamped[static_cast<std::size_t>(j)];
  return out;
}

RobotArmJoints retarget_frame(const ExoArmFrame& frame, const WristCalibration& calib,
                              const ArmModel& model, const IkOptions& opts,
                              const RobotArmJoints* previous) {
  const Eigen::Vector3d shoulder_seed = previous ? previous->shoulder : Eigen::Vector3d::Zero();
  const Eigen::Vector3d wrist_seed = previous ? previous->wrist : Eigen::Vector3d::Zero();

  const AlignResult shoulder =
      align_upper_arm(frame, model.exo_chain, model.shoulder_chain, shoulder_seed, opts);
  const ElbowResult elbow = align_elbow(frame.elbow_angle, model.elbow);
  const AlignResult wrist = align_wrist(frame, calib, model.wrist_chain, wrist_seed, opts);

  RobotArmJoints out;
  out.shoulder = shoulder.joints;
  out.elbow = elbow.angle;
  out.wrist = wrist.joints;
  for (std::size_t j = 0; j < 3; ++j) out.clamped_mask[j] = shoulder.clamped[j];
  out.clamped_mask[3] = elbow.clamped;
  for (std::size_t j = 0; j < 3; ++j) out.clamped_mask[4 + j] = wrist.clamped[j];
  return out;
}

WristCalibration calibrate_home(std::span<const ExoArmFrame> samples, std::size_t window) {
  if (samples.empty()) throw ValidationError("calibrate_home: no samples");
  if (window < 1) throw ValidationError("calibrate_home: window must be >= 1");
  if (samples.size() < window) {
    std::ostringstream os;
    os << "calibrate_home: window " << window << " but only " << samples.size() << " samples";
    throw ValidationError(os.str());
  }
  WristCalibration calib;
  calib.q_w0 = mean_quaternion(samples, window, /*wrist=*/true);
  calib.q_f0 = mean_quaternion(samples, window, /*wrist=*/false);
  return calib;
}

}  // namespace exo
