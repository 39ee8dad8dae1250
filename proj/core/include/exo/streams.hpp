#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "exo/base_motion.hpp"
#include "exo/retarget.hpp"

namespace exo {

/// One raw recording sample covering both arms plus the glove finger
/// channels (6 active angles per hand, passed through opaquely).
struct ExoSample {
  double timestamp = 0.0;
  ExoArmFrame left;
  ExoArmFrame right;
  Eigen::VectorXd left_hand;
  Eigen::VectorXd right_hand;
};

struct ArmCalibrationPair {
  WristCalibration left;
  WristCalibration right;
};

/// Raw exoskeleton stream: JSON Lines, one sample per line
///   {"t", "left": {"enc", "elbow", "q_w", "q_f", "hand"}, "right": {...}}
/// with quaternions serialized [w, x, y, z].
std::vector<ExoSample> read_exo_raw(const std::filesystem::path& path);
void write_exo_raw(std::span<const ExoSample> samples, const std::filesystem::path& path);

/// Odometry stream: JSON Lines, one {"t", "q": [w,x,y,z], "p": [x,y,z]}
/// per line.
std::vector<OdomSample> read_odom(const std::filesystem::path& path);
void write_odom(std::span<const OdomSample> samples, const std::filesystem::path& path);

/// Per-arm home calibration:
///   {"left": {"q_w0": [...], "q_f0": [...]}, "right": {...}}
ArmCalibrationPair read_calibration(const std::filesystem::path& path);
void write_calibration(const ArmCalibrationPair& calib, const std::filesystem::path& path);

}  // namespace exo
