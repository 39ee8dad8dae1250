#include "exo/pipeline.hpp"

#include <sstream>

#include "exo/errors.hpp"
#include "exo/log.hpp"
#include "exo/trajectory.hpp"

namespace exo {

Episode retarget_recording(std::span<const ExoSample> exo, std::span<const OdomSample> odom,
                           const ArmCalibrationPair& calib, const RobotModel& model,
                           const PipelineOptions& options) {
  if (exo.empty()) throw ValidationError("retarget_recording: empty exoskeleton stream");
  if (options.source != "teleop" && options.source != "exo") {
    throw ValidationError("retarget_recording: source must be 'teleop' or 'exo'");
  }
  const Eigen::Index hand_dof = static_cast<Eigen::Index>(model.hand.active_per_hand);

  std::vector<TimedVector> arm_stream;
  std::vector<TimedVector> hand_stream;
  arm_stream.reserve(exo.size());
  hand_stream.reserve(exo.size());

  RobotArmJoints prev_left, prev_right;
  bool have_prev = false;
  std::size_t clamped_frames = 0;
  for (const ExoSample& sample : exo) {
    if (sample.left_hand.size() != hand_dof || sample.right_hand.size() != hand_dof) {
      std::ostringstream os;
      os << "retarget_recording: expected " << hand_dof << " active hand joints per hand, got "
         << sample.left_hand.size() << "/" << sample.right_hand.size();
      throw DimensionError(os.str());
    }
    const RobotArmJoints left = retarget_frame(sample.left, calib.left, model.left_arm, model.ik,
                                               have_prev ? &prev_left : nullptr);
    const RobotArmJoints right = retarget_frame(sample.right, calib.right, model.right_arm,
                                                model.ik, have_prev ? &prev_right : nullptr);
    prev_left = left;
    prev_right = right;
    have_prev = true;

    bool clamped = false;
    for (bool b : left.clamped_mask) clamped |= b;
    for (bool b : right.clamped_mask) clamped |= b;
    if (clamped) ++clamped_frames;

    TimedVector arm;
    arm.timestamp = sample.timestamp;
    arm.values.resize(14);
    arm.values << left.flat(), right.flat();
    arm_stream.push_back(std::move(arm));

    TimedVector hands;
    hands.timestamp = sample.timestamp;
    hands.values.resize(2 * hand_dof);
    hands.values << sample.left_hand, sample.right_hand;
    hand_stream.push_back(std::move(hands));
  }
  if (clamped_frames > 0) {
    std::ostringstream os;
    os << "retarget_recording: joint limits clamped the solution in " << clamped_frames << " of "
       << exo.size() << " input frames";
    log::warn(os.str());
  }

  const std::vector<TimedCommand> commands = estimate_base_commands(odom, options.base);

  Episode episode;
  episode.frames = synchronize(arm_stream, hand_stream, odom, commands, options.rate_hz);
  episode.header.format_version = 1;
  episode.header.robot_model_name = model.name;
  episode.header.source = options.source;
  episode.header.task_label = options.task_label;
  episode.header.created_at = options.created_at;
  episode.header.rate_hz = options.rate_hz;
  episode.header.frame_count = episode.frames.size();
  return episode;
}

}  // namespace exo
