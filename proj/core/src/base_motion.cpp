#include "exo/base_motion.hpp"

#include <cmath>
#include <sstream>

#include "exo/errors.hpp"
#include "exo/log.hpp"

namespace exo {

std::vector<TimedCommand> estimate_base_commands(std::span<const OdomSample> stream,
                                                 const BaseCommandParams& params) {
  if (stream.size() < 2) {
    throw ValidationError("estimate_base_commands: need at least 2 odometry samples");
  }
  if (!(params.smoothing_alpha > 0.0) || params.smoothing_alpha > 1.0) {
    throw ValidationError("estimate_base_commands: smoothing_alpha must be in (0, 1]");
  }

  std::vector<TimedCommand> out;
  out.reserve(stream.size() - 1);
  const double alpha = params.smoothing_alpha;
  double ema_vx = 0.0, ema_wz = 0.0, ema_h = 0.0;

  for (std::size_t i = 1; i < stream.size(); ++i) {
    const OdomSample& prev = stream[i - 1];
    const OdomSample& next = stream[i];
    const double dt = next.timestamp - prev.timestamp;
    if (!(dt > 0.0)) {
      std::ostringstream os;
      os << "estimate_base_commands: non-increasing timestamps at sample " << i << " (dt=" << dt
         << ")";
      throw ValidationError(os.str());
    }

    const Eigen::Vector3d v_world = (next.pose.translation - prev.pose.translation) / dt;
    const Eigen::Vector3d v_body = next.pose.rotation.conjugate().rotate(v_world);
    const double raw_vx = v_body.x();  // v_body.y() is tracked but not commanded
    const double raw_wz =
        wrap_angle(yaw_of(next.pose.rotation) - yaw_of(prev.pose.rotation)) / dt;
    const double raw_h = next.pose.translation.z();
    if (!(raw_h > 0.0)) {
      throw ValidationError("estimate_base_commands: torso height must be > 0");
    }

    if (i == 1) {
      ema_vx = raw_vx;
      ema_wz = raw_wz;
      ema_h = raw_h;
    } else {
      ema_vx = alpha * raw_vx + (1.0 - alpha) * ema_vx;
      ema_wz = alpha * raw_wz + (1.0 - alpha) * ema_wz;
      ema_h = alpha * raw_h + (1.0 - alpha) * ema_h;
    }
    out.push_back(TimedCommand{next.timestamp, BaseCommand{ema_vx, ema_wz, ema_h}});
  }
  return out;
}

Eigen::Vector3d gravity_in_torso(const UnitQuaternion& orientation) {
  return orientation.conjugate().rotate(Eigen::Vector3d(0.0, 0.0, -1.0));
}

Eigen::Vector3d angular_velocity_body(const OdomSample& prev, const OdomSample& next) {
  const double dt = next.timestamp - prev.timestamp;
  if (!(dt > 0.0)) {
    throw ValidationError("angular_velocity_body: dt must be > 0");
  }
  return (prev.pose.rotation.conjugate() * next.pose.rotation).to_rotation_vector() / dt;
}

BaseState base_state(const OdomSample& prev, const OdomSample& next) {
  BaseState state;
  state.omega_body = angular_velocity_body(prev, next);
  state.gravity_body = gravity_in_torso(next.pose.rotation);
  return state;
}

double yaw_of(const UnitQuaternion& q) {
  return std::atan2(2.0 * (q.w() * q.z() + q.x() * q.y()),
                    1.0 - 2.0 * (q.y() * q.y() + q.z() * q.z()));
}

}  // namespace exo
