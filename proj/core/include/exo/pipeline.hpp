#pragma once

#include <span>
#include <string>

#include "exo/episode.hpp"
#include "exo/streams.hpp"

namespace exo {

struct PipelineOptions {
  double rate_hz = 50.0;  // output frame rate
  BaseCommandParams base;
  std::string task_label;
  std::string source = "exo";
  std::string created_at;  // left empty so identical inputs give identical files
};

/// End-to-end retarget: per-arm three-stage alignment over the raw stream
/// (IK seeded frame to frame), base commands from odometry, then
/// synchronization of all channels onto the output grid. Deterministic for
/// identical inputs.
Episode retarget_recording(std::span<const ExoSample> exo, std::span<const OdomSample> odom,
                           const ArmCalibrationPair& calib, const RobotModel& model,
                           const PipelineOptions& options = {});

}  // namespace exo
