#include <doctest.h>

#include <fstream>

#include "exo/episode.hpp"
#include "exo/errors.hpp"
#include "exo/pipeline.hpp"
#include "exo/synthetic.hpp"
#include "exo/trajectory.hpp"
#include "support/temp_dir.hpp"

using exo::Episode;
using exo::PipelineOptions;
using exo::RobotModel;
using exo::Scenario;
using exo::SyntheticConfig;
using exo::SyntheticRecording;
using testutil::TempDir;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("scenario name round trip") {
  for (const char* name : {"walk", "squat", "reach", "home"}) {
    CHECK(exo::to_string(exo::scenario_from_string(name)) == name);
  }
  CHECK_THROWS_AS(exo::scenario_from_string("jog"), exo::ValidationError);
}

TEST_CASE("synthetic recordings are internally consistent") {
  const RobotModel model = exo::default_robot_model();
  SyntheticConfig cfg;
  cfg.arm_rate_hz = 50.0;
  cfg.odom_rate_hz = 10.0;
  for (Scenario sc : {Scenario::walk, Scenario::squat, Scenario::reach, Scenario::home}) {
    const SyntheticRecording rec = exo::generate_scenario(sc, model, cfg);
    CHECK(!rec.exo.empty());
    CHECK(rec.odom.size() >= 2);
    CHECK(!rec.phases.empty());
    CHECK(rec.phases.front().t_begin == 0.0);
    // encoder angles stay within the exoskeleton limits
    for (std::size_t i = 0; i < rec.exo.size(); i += 7) {
      CHECK(model.left_arm.exo_chain.within_limits(rec.exo[i].left.encoder_angles));
      CHECK(model.right_arm.exo_chain.within_limits(rec.exo[i].right.encoder_angles));
    }
  }
}

TEST_CASE("retarget_recording produces a clean validated episode") {
  const RobotModel model = exo::default_robot_model();
  SyntheticConfig cfg;
  cfg.arm_rate_hz = 50.0;
  cfg.odom_rate_hz = 10.0;
  const SyntheticRecording rec = exo::generate_scenario(Scenario::reach, model, cfg);
  PipelineOptions opts;
  opts.rate_hz = 25.0;
  opts.task_label = rec.task_label;
  const Episode episode = exo::retarget_recording(rec.exo, rec.odom, rec.calib, model, opts);
  CHECK(episode.header.frame_count == episode.frames.size());
  CHECK(episode.header.robot_model_name == model.name);
  CHECK(!episode.frames.empty());
  const exo::ValidationReport report = exo::validate(episode.frames, model);
  CHECK(report.empty());
}

TEST_CASE("pipeline is deterministic end to end") {
  const RobotModel model = exo::default_robot_model();
  SyntheticConfig cfg;
  cfg.arm_rate_hz = 50.0;
  cfg.odom_rate_hz = 10.0;
  const SyntheticRecording rec = exo::generate_scenario(Scenario::home, model, cfg);
  PipelineOptions opts;
  opts.rate_hz = 25.0;
  const Episode a = exo::retarget_recording(rec.exo, rec.odom, rec.calib, model, opts);
  const Episode b = exo::retarget_recording(rec.exo, rec.odom, rec.calib, model, opts);
  TempDir tmp;
  exo::write_episode(a, tmp.path / "a.jsonl");
  exo::write_episode(b, tmp.path / "b.jsonl");
  CHECK(slurp(tmp.path / "a.jsonl") == slurp(tmp.path / "b.jsonl"));
}

TEST_CASE("pipeline input validation") {
  const RobotModel model = exo::default_robot_model();
  std::vector<exo::ExoSample> empty;
  std::vector<exo::OdomSample> odom;
  CHECK_THROWS_AS(
      exo::retarget_recording(empty, odom, exo::ArmCalibrationPair{}, model, PipelineOptions{}),
      exo::ValidationError);
}
