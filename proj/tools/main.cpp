// exomotion: converts exoskeleton + odometry recordings into humanoid
// demonstration episodes, validates them, and manages dataset mixes.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "exo/episode.hpp"
#include "exo/errors.hpp"
#include "exo/log.hpp"
#include "exo/pipeline.hpp"
#include "exo/robot_model.hpp"
#include "exo/streams.hpp"
#include "exo/synthetic.hpp"
#include "exo/trajectory.hpp"

namespace fs = std::filesystem;

namespace {

exo::RobotModel load_model_or_default(const std::string& path) {
  if (path.empty()) {
    exo::log::info("no --robot given, using the built-in placeholder model");
    return exo::default_robot_model();
  }
  return exo::load_robot_model(path);
}

int run_retarget(const std::string& exo_raw, const std::string& odom_path,
                 const std::string& calib_path, const std::string& robot_path, double rate,
                 double alpha, const std::string& task, const std::string& source,
                 const std::string& created_at, const std::string& out) {
  const exo::RobotModel model = load_model_or_default(robot_path);
  const auto exo_stream = exo::read_exo_raw(exo_raw);
  const auto odom = exo::read_odom(odom_path);
  const exo::ArmCalibrationPair calib = exo::read_calibration(calib_path);

  exo::PipelineOptions opts;
  opts.rate_hz = rate;
  opts.base.smoothing_alpha = alpha;
  opts.task_label = task;
  opts.source = source;
  opts.created_at = created_at;
  const exo::Episode episode = exo::retarget_recording(exo_stream, odom, calib, model, opts);
  exo::write_episode(episode, out);
  std::cout << "wrote " << episode.frames.size() << " frames at " << rate << " Hz to " << out
            << "\n";
  return 0;
}

int run_validate(const std::string& episode_path, const std::string& robot_path, double max_vel,
                 double max_dt) {
  const exo::RobotModel model = load_model_or_default(robot_path);
  const exo::Episode episode = exo::read_episode(episode_path);
  exo::ValidationThresholds thresholds;
  thresholds.max_joint_vel = max_vel;
  thresholds.max_dt = max_dt;
  const exo::ValidationReport report = exo::validate(episode.frames, model, thresholds);
  std::cout << exo::to_json(report) << "\n";
  return report.empty() ? 0 : 1;
}

int run_mirror(const std::string& episode_path, const std::string& spec_path,
               const std::string& out) {
  const exo::RobotModel model = load_model_or_default(spec_path);
  exo::Episode episode = exo::read_episode(episode_path);
  for (exo::WholeBodyFrame& frame : episode.frames) {
    frame = exo::mirror_frame(frame, model);
  }
  exo::write_episode(episode, out);
  std::cout << "wrote mirrored episode (" << episode.frames.size() << " frames) to " << out
            << "\n";
  return 0;
}

int run_mix(const std::string& teleop_dir, const std::string& exo_dir, std::size_t teleop_n,
            std::size_t exo_n, std::uint64_t seed, const std::string& out) {
  const exo::DatasetManifest manifest =
      exo::mix_manifest(teleop_dir, exo_dir, teleop_n, exo_n, seed);
  exo::save_manifest(manifest, out);
  std::cout << "manifest: " << manifest.teleop.episodes << " teleop + " << manifest.exo.episodes
            << " exo episodes (teleop fraction " << manifest.teleop_fraction << ") -> " << out
            << "\n";
  return 0;
}

int run_stats(const std::string& input, const std::string& robot_path, double max_vel,
              double max_dt) {
  const exo::RobotModel model = load_model_or_default(robot_path);
  const exo::RobotModel* model_ptr = robot_path.empty() ? nullptr : &model;
  exo::ValidationThresholds thresholds;
  thresholds.max_joint_vel = max_vel;
  thresholds.max_dt = max_dt;

  exo::StatsSummary summary;
  const fs::path p(input);
  if (p.extension() == ".json") {
    const exo::DatasetManifest manifest = exo::load_manifest(p);
    summary = exo::stats_for_manifest(manifest, p.parent_path(), model_ptr, thresholds);
  } else {
    summary = exo::stats(exo::read_episode(p), model_ptr, thresholds);
  }
  std::cout << exo::to_json(summary) << "\n";
  return 0;
}

int run_gen(const std::string& scenario_name, const std::string& robot_path, double arm_rate,
            double odom_rate, const std::string& out_prefix) {
  const exo::RobotModel model = load_model_or_default(robot_path);
  exo::SyntheticConfig cfg;
  cfg.arm_rate_hz = arm_rate;
  cfg.odom_rate_hz = odom_rate;
  const exo::SyntheticRecording rec =
      exo::generate_scenario(exo::scenario_from_string(scenario_name), model, cfg);
  const fs::path prefix(out_prefix);
  if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
  const fs::path exo_file = out_prefix + ".exo.jsonl";
  const fs::path odom_file = out_prefix + ".odom.jsonl";
  const fs::path calib_file = out_prefix + ".calib.json";
  exo::write_exo_raw(rec.exo, exo_file);
  exo::write_odom(rec.odom, odom_file);
  exo::write_calibration(rec.calib, calib_file);
  std::cout << "wrote " << exo_file.string() << " (" << rec.exo.size() << " samples), "
            << odom_file.string() << " (" << rec.odom.size() << " samples), "
            << calib_file.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exoskeleton-to-humanoid motion retargeting toolkit"};
  app.require_subcommand(1);

  // retarget
  std::string exo_raw, odom_path, calib_path, robot_path, out_path;
  std::string task_label, source = "exo", created_at;
  double rate = 50.0, alpha = 0.3;
  auto* retarget = app.add_subcommand("retarget", "convert raw streams into an episode");
  retarget->add_option("--exo-raw", exo_raw, "raw exoskeleton JSONL stream")->required();
  retarget->add_option("--odom", odom_path, "odometry JSONL stream")->required();
  retarget->add_option("--calib", calib_path, "wrist calibration JSON")->required();
  retarget->add_option("--robot", robot_path, "robot model JSON (default: built-in placeholder)");
  retarget->add_option("--rate", rate, "output frame rate, Hz")->check(CLI::PositiveNumber);
  retarget->add_option("--smoothing-alpha", alpha, "base command EMA weight");
  retarget->add_option("--task-label", task_label, "free-text task label");
  retarget->add_option("--source", source, "episode source tag (teleop|exo)");
  retarget->add_option("--created-at", created_at, "header timestamp text (empty keeps output reproducible)");
  retarget->add_option("--out", out_path, "episode output path")->required();

  // validate
  std::string v_episode, v_robot;
  double v_max_vel = 10.0, v_max_dt = 0.1;
  auto* validate = app.add_subcommand("validate", "check an episode for kinematic feasibility");
  validate->add_option("--episode", v_episode, "episode file")->required();
  validate->add_option("--robot", v_robot, "robot model JSON");
  validate->add_option("--max-vel", v_max_vel, "joint velocity threshold, rad/s");
  validate->add_option("--max-dt", v_max_dt, "timestamp gap threshold, s");

  // mirror-augment
  std::string m_episode, m_spec, m_out;
  auto* mirror = app.add_subcommand("mirror-augment", "mirror an episode across the x-z plane");
  mirror->add_option("--episode", m_episode, "episode file")->required();
  mirror->add_option("--spec", m_spec, "robot model JSON carrying the mirror tables");
  mirror->add_option("--out", m_out, "mirrored episode output path")->required();

  // mix
  std::string teleop_dir, exo_dir, mix_out;
  std::size_t teleop_n = 0, exo_n = 0;
  std::uint64_t seed = 0;
  auto* mix = app.add_subcommand("mix", "sample a dataset manifest from episode directories");
  mix->add_option("--teleop-dir", teleop_dir, "directory of teleop episodes")->required();
  mix->add_option("--exo-dir", exo_dir, "directory of exoskeleton episodes")->required();
  mix->add_option("--teleop-n", teleop_n, "teleop episodes to draw")->required();
  mix->add_option("--exo-n", exo_n, "exoskeleton episodes to draw")->required();
  mix->add_option("--seed", seed, "sampler seed")->required();
  mix->add_option("--out", mix_out, "manifest output path")->required();

  // stats
  std::string s_input, s_robot;
  double s_max_vel = 10.0, s_max_dt = 0.1;
  auto* stats = app.add_subcommand("stats", "summarize an episode or a manifest");
  stats->add_option("--input", s_input, "episode .jsonl or manifest .json")->required();
  stats->add_option("--robot", s_robot, "robot model JSON (adds violation counts)");
  stats->add_option("--max-vel", s_max_vel, "joint velocity threshold, rad/s");
  stats->add_option("--max-dt", s_max_dt, "timestamp gap threshold, s");

  // gen-synthetic
  std::string g_scenario, g_robot, g_out;
  double g_arm_rate = 100.0, g_odom_rate = 10.0;
  auto* gen = app.add_subcommand("gen-synthetic", "generate analytic test recordings");
  gen->add_option("--scenario", g_scenario, "walk|squat|reach|home")->required();
  gen->add_option("--robot", g_robot, "robot model JSON");
  gen->add_option("--arm-rate", g_arm_rate, "exoskeleton stream rate, Hz");
  gen->add_option("--odom-rate", g_odom_rate, "odometry stream rate, Hz");
  gen->add_option("--out", g_out, "output prefix (<out>.exo.jsonl, <out>.odom.jsonl, <out>.calib.json)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (retarget->parsed()) {
      return run_retarget(exo_raw, odom_path, calib_path, robot_path, rate, alpha, task_label,
                          source, created_at, out_path);
    }
    if (validate->parsed()) return run_validate(v_episode, v_robot, v_max_vel, v_max_dt);
    if (mirror->parsed()) return run_mirror(m_episode, m_spec, m_out);
    if (mix->parsed()) return run_mix(teleop_dir, exo_dir, teleop_n, exo_n, seed, mix_out);
    if (stats->parsed()) return run_stats(s_input, s_robot, s_max_vel, s_max_dt);
    if (gen->parsed()) return run_gen(g_scenario, g_robot, g_arm_rate, g_odom_rate, g_out);
  } catch (const exo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
