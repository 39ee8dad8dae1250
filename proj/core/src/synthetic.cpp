#include "exo/synthetic.hpp"

#include <cmath>

#include "exo/errors.hpp"
#include "exo/kinematics.hpp"

namespace exo {

namespace {

/// 0 -> 1 over [0, T] with zero slope at both ends.
double smooth_ramp(double t, double T) {
  if (t <= 0.0) return 0.0;
  if (t >= T) return 1.0;
  return 0.5 * (1.0 - std::cos(M_PI * t / T));
}

struct ArmReference {
  Eigen::Vector3d shoulder{0.0, 0.0, 0.0};
  double elbow = 0.0;
  Eigen::Vector3d wrist{0.0, 0.0, 0.0};
};

struct BodyReference {
  ArmReference left;
  ArmReference right;
  Eigen::VectorXd left_hand;
  Eigen::VectorXd right_hand;
};

Eigen::VectorXd hand_wave(double t, double env, double phase0, std::size_t n) {
  Eigen::VectorXd h(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    h[static_cast<Eigen::Index>(i)] =
        0.6 + 0.5 * env * std::sin(2.0 * M_PI * 0.3 * t + phase0 + 0.4 * static_cast<double>(i));
  }
  return h;
}

BodyReference body_reference(Scenario scenario, double t, std::size_t hand_dof) {
  BodyReference ref;
  const double env = smooth_ramp(t, 1.5);
  switch (scenario) {
    case Scenario::home:
      ref.left_hand = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(hand_dof), 0.6);
      ref.right_hand = ref.left_hand;
      return ref;
    case Scenario::reach: {
      // Smooth reach-and-return of both arms, right arm leading.
      ref.left.shoulder = Eigen::Vector3d(0.5 * env * std::sin(2.0 * M_PI * 0.20 * t),
                                          0.35 * env * std::sin(2.0 * M_PI * 0.15 * t + 0.5),
                                          0.40 * env * std::sin(2.0 * M_PI * 0.10 * t + 1.0));
      ref.left.elbow = 0.8 * env * (0.5 - 0.5 * std::cos(2.0 * M_PI * 0.125 * t)) + 0.1 * env;
      ref.left.wrist = Eigen::Vector3d(0.45 * env * std::sin(2.0 * M_PI * 0.25 * t + 0.3),
                                       0.30 * env * std::sin(2.0 * M_PI * 0.20 * t + 1.1),
                                       0.35 * env * std::sin(2.0 * M_PI * 0.15 * t + 2.0));
      ref.right.shoulder = Eigen::Vector3d(0.55 * env * std::sin(2.0 * M_PI * 0.22 * t + 0.7),
                                           0.30 * env * std::sin(2.0 * M_PI * 0.17 * t),
                                           0.35 * env * std::sin(2.0 * M_PI * 0.12 * t + 0.4));
      ref.right.elbow = 0.9 * env * (0.5 - 0.5 * std::cos(2.0 * M_PI * 0.11 * t));
      ref.right.wrist = Eigen::Vector3d(0.40 * env * std::sin(2.0 * M_PI * 0.23 * t + 1.4),
                                        0.28 * env * std::sin(2.0 * M_PI * 0.19 * t + 0.2),
                                        0.30 * env * std::sin(2.0 * M_PI * 0.13 * t + 0.9));
      break;
    }
    case Scenario::walk: {
      // Gentle counter-phase arm swing.
      const double swing = 0.30 * env * std::sin(2.0 * M_PI * 0.8 * t);
      ref.left.shoulder = Eigen::Vector3d(swing, 0.05 * env, 0.0);
      ref.right.shoulder = Eigen::Vector3d(-swing, 0.05 * env, 0.0);
      ref.left.elbow = 0.5 + 0.15 * env * std::sin(2.0 * M_PI * 0.8 * t + M_PI);
      ref.right.elbow = 0.5 + 0.15 * env * std::sin(2.0 * M_PI * 0.8 * t);
      ref.left.wrist = Eigen::Vector3d(0.1 * env * std::sin(2.0 * M_PI * 0.8 * t), 0.0, 0.0);
      ref.right.wrist = -ref.left.wrist;
      break;
    }
    case Scenario::squat: {
      // Arms held forward while squatting.
      const double lift = 0.6 * smooth_ramp(t, 2.0);
      ref.left.shoulder = Eigen::Vector3d(0.0, lift, 0.0);
      ref.right.shoulder = Eigen::Vector3d(0.0, lift, 0.0);
      ref.left.elbow = 0.4 * smooth_ramp(t, 2.0);
      ref.right.elbow = ref.left.elbow;
      break;
    }
  }
  ref.left_hand = hand_wave(t, env, 0.0, hand_dof);
  ref.right_hand = hand_wave(t, env, 0.8, hand_dof);
  return ref;
}

double scenario_duration(Scenario scenario) {
  switch (scenario) {
    case Scenario::walk: return 12.0;
    case Scenario::squat: return 8.0;
    case Scenario::reach: return 8.0;
    case Scenario::home: return 2.0;
  }
  return 0.0;
}

Pose6D base_pose_at(Scenario scenario, double t) {
  Pose6D pose;
  pose.translation = Eigen::Vector3d(0.0, 0.0, 0.75);
  switch (scenario) {
    case Scenario::home:
    case Scenario::reach:
      break;
    case Scenario::walk:
      if (t <= 6.0) {
        pose.translation.x() = 0.5 * t;
      } else {
        pose.translation.x() = 3.0;
        pose.rotation = UnitQuaternion::from_axis_angle(Eigen::Vector3d::UnitZ(), 0.3 * (t - 6.0));
      }
      break;
    case Scenario::squat: {
      double h = 0.75;
      if (t >= 2.0 && t < 5.0) {
        h = 0.75 - 0.1 * (1.0 - std::cos(M_PI * (t - 2.0) / 3.0));
      } else if (t >= 5.0) {
        h = 0.55;
      }
      pose.translation.z() = h;
      break;
    }
  }
  return pose;
}

std::vector<MotionPhase> phases_of(Scenario scenario) {
  switch (scenario) {
    case Scenario::walk:
      return {MotionPhase{"straight", 0.0, 6.0, true, BaseCommand{0.5, 0.0, 0.75}},
              MotionPhase{"turn", 6.0, 12.0, true, BaseCommand{0.0, 0.3, 0.75}}};
    case Scenario::squat:
      return {MotionPhase{"stand_high", 0.0, 2.0, true, BaseCommand{0.0, 0.0, 0.75}},
              MotionPhase{"descend", 2.0, 5.0, false, BaseCommand{}},
              MotionPhase{"stand_low", 5.0, 8.0, true, BaseCommand{0.0, 0.0, 0.55}}};
    case Scenario::reach:
      return {MotionPhase{"stand", 0.0, 8.0, true, BaseCommand{0.0, 0.0, 0.75}}};
    case Scenario::home:
      return {MotionPhase{"stand", 0.0, 2.0, true, BaseCommand{0.0, 0.0, 0.75}}};
  }
  return {};
}

/// Slow world-frame disturbance applied to both IMUs; the wrist formula is
/// invariant to it by construction.
UnitQuaternion imu_disturbance(double t) {
  const Eigen::Vector3d axis(1.0, 1.0, 0.0);
  return UnitQuaternion::from_axis_angle(axis, 0.08 * std::sin(2.0 * M_PI * 0.1 * t));
}

}  // namespace

Scenario scenario_from_string(const std::string& name) {
  if (name == "walk") return Scenario::walk;
  if (name == "squat") return Scenario::squat;
  if (name == "reach") return Scenario::reach;
  if (name == "home") return Scenario::home;
  throw ValidationError("unknown scenario '" + name + "' (expected walk|squat|reach|home)");
}

std::string to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::walk: return "walk";
    case Scenario::squat: return "squat";
    case Scenario::reach: return "reach";
    case Scenario::home: return "home";
  }
  return "?";
}

SyntheticRecording generate_scenario(Scenario scenario, const RobotModel& model,
                                     const SyntheticConfig& config) {
  if (!(config.arm_rate_hz > 0.0) || !(config.odom_rate_hz > 0.0)) {
    throw ValidationError("generate_scenario: rates must be > 0");
  }
  const double T = scenario_duration(scenario);
  SyntheticRecording rec;
  rec.phases = phases_of(scenario);
  rec.task_label = "synthetic-" + to_string(scenario);

  // Solving the exoskeleton chain toward the robot-side reference keeps the
  // encoder stream consistent with what retargeting should reproduce.
  IkOptions exo_ik = model.ik;
  exo_ik.tolerance = 1e-9;
  exo_ik.max_iterations = 200;

  const std::size_t n_exo = static_cast<std::size_t>(std::floor(T * config.arm_rate_hz + 1e-9)) + 1;
  Eigen::VectorXd seed_left = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(model.left_arm.exo_chain.active_count()));
  Eigen::VectorXd seed_right = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(model.right_arm.exo_chain.active_count()));

  rec.exo.reserve(n_exo);
  for (std::size_t k = 0; k < n_exo; ++k) {
    const double t = static_cast<double>(k) / config.arm_rate_hz;
    const BodyReference ref = body_reference(scenario, t, model.hand.active_per_hand);
    const UnitQuaternion g = imu_disturbance(t);

    ExoSample s;
    s.timestamp = t;
    auto fill_arm = [&](const ArmModel& arm, const ArmReference& target, Eigen::VectorXd& seed,
                        ExoArmFrame& out) {
      const UnitQuaternion upper = fk_chain(arm.shoulder_chain, target.shoulder).rotation;
      const IkResult ik = ik_orientation(arm.exo_chain, upper, seed, exo_ik);
      seed = ik.joints;
      out.timestamp = t;
      out.encoder_angles = ik.joints;
      out.elbow_angle = target.elbow;  // identity elbow map in the default model
      const UnitQuaternion wrist_rel = fk_chain(arm.wrist_chain, target.wrist).rotation;
      out.imu_forearm = g;
      out.imu_wrist = g * wrist_rel;
    };
    fill_arm(model.left_arm, ref.left, seed_left, s.left);
    fill_arm(model.right_arm, ref.right, seed_right, s.right);
    s.left_hand = ref.left_hand;
    s.right_hand = ref.right_hand;
    rec.exo.push_back(std::move(s));
  }

  const std::size_t n_odom =
      static_cast<std::size_t>(std::floor(T * config.odom_rate_hz + 1e-9)) + 1;
  rec.odom.reserve(n_odom);
  for (std::size_t k = 0; k < n_odom; ++k) {
    const double t = static_cast<double>(k) / config.odom_rate_hz;
    rec.odom.push_back(OdomSample{t, base_pose_at(scenario, t)});
  }

  // Home position at t=0: both reference subchains are at zero, so the
  // calibration is just the shared disturbance at t=0.
  rec.calib.left.q_w0 = rec.exo.front().left.imu_wrist;
  rec.calib.left.q_f0 = rec.exo.front().left.imu_forearm;
  rec.calib.right.q_w0 = rec.exo.front().right.imu_wrist;
  rec.calib.right.q_f0 = rec.exo.front().right.imu_forearm;
  return rec;
}

}  // namespace exo
