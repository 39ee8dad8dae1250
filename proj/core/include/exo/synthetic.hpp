#pragma once

#include <string>
#include <vector>

#include "exo/robot_model.hpp"
#include "exo/streams.hpp"

namespace exo {

/// Analytic test scenarios. `walk` covers straight-line walking followed by
/// an in-place turn; `squat` holds, descends and holds again; `reach` is a
/// stationary base with smooth arm motion; `home` stands still at the
/// calibration pose.
enum class Scenario { walk, squat, reach, home };

Scenario scenario_from_string(const std::string& name);
std::string to_string(Scenario scenario);

struct SyntheticConfig {
  double arm_rate_hz = 100.0;   // exoskeleton stream rate
  double odom_rate_hz = 10.0;   // odometry stream rate
};

/// A time window with analytically known base motion. steady_command is
/// meaningful only when steady is true (constant ground truth over the
/// window).
struct MotionPhase {
  std::string name;
  double t_begin = 0.0;
  double t_end = 0.0;
  bool steady = true;
  BaseCommand steady_command;
};

struct SyntheticRecording {
  std::vector<ExoSample> exo;
  std::vector<OdomSample> odom;
  ArmCalibrationPair calib;
  std::vector<MotionPhase> phases;
  std::string task_label;
};

/// Generates a deterministic recording whose retargeted joints are smooth
/// and in-limit and whose base motion matches the phase descriptions
/// exactly. Exoskeleton encoders are synthesized by solving the exo chain
/// toward robot-side reference trajectories, so the streams are mutually
/// consistent.
SyntheticRecording generate_scenario(Scenario scenario, const RobotModel& model,
                                     const SyntheticConfig& config = {});

}  // namespace exo
