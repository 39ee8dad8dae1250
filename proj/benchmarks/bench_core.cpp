#include <benchmark/benchmark.h>

#include <random>

#include "exo/base_motion.hpp"
#include "exo/kinematics.hpp"
#include "exo/pipeline.hpp"
#include "exo/quaternion.hpp"
#include "exo/retarget.hpp"
#include "exo/robot_model.hpp"
#include "exo/synthetic.hpp"

namespace {

exo::UnitQuaternion random_quat(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return exo::UnitQuaternion(n(rng), n(rng), n(rng), n(rng));
}

void BM_QuaternionMultiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const exo::UnitQuaternion a = random_quat(rng);
  exo::UnitQuaternion b = random_quat(rng);
  for (auto _ : state) {
    b = a * b;
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_QuaternionMultiply);

void BM_FkChain(benchmark::State& state) {
  const exo::RobotModel model = exo::default_robot_model();
  const Eigen::VectorXd q = Eigen::VectorXd::Constant(3, 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fk_chain(model.left_arm.shoulder_chain, q));
  }
}
BENCHMARK(BM_FkChain);

void BM_IkOrientation(benchmark::State& state) {
  const exo::RobotModel model = exo::default_robot_model();
  const exo::KinematicChain& chain = model.left_arm.shoulder_chain;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto _ : state) {
    state.PauseTiming();
    Eigen::Vector3d q_true(u(rng), u(rng), u(rng));
    const exo::UnitQuaternion target = fk_chain(chain, q_true).rotation;
    Eigen::Vector3d seed = q_true + 0.1 * Eigen::Vector3d(u(rng), u(rng), u(rng));
    state.ResumeTiming();
    benchmark::DoNotOptimize(ik_orientation(chain, target, chain.clamp(seed), model.ik));
  }
}
BENCHMARK(BM_IkOrientation);

void BM_RetargetFrame(benchmark::State& state) {
  const exo::RobotModel model = exo::default_robot_model();
  exo::SyntheticConfig cfg;
  cfg.arm_rate_hz = 50.0;
  const exo::SyntheticRecording rec =
      exo::generate_scenario(exo::Scenario::reach, model, cfg);
  exo::RobotArmJoints prev;
  std::size_t i = 0;
  for (auto _ : state) {
    const exo::ExoSample& s = rec.exo[i++ % rec.exo.size()];
    prev = retarget_frame(s.left, rec.calib.left, model.left_arm, model.ik, &prev);
    benchmark::DoNotOptimize(prev);
  }
}
BENCHMARK(BM_RetargetFrame);

void BM_EstimateBaseCommands(benchmark::State& state) {
  std::vector<exo::OdomSample> odom;
  for (int i = 0; i < state.range(0); ++i) {
    const double t = 0.01 * i;
    odom.push_back(exo::OdomSample{
        t, exo::Pose6D{exo::UnitQuaternion::from_axis_angle(Eigen::Vector3d::UnitZ(), 0.1 * t),
                       {0.5 * t, 0.0, 0.75}}});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_base_commands(odom, exo::BaseCommandParams{}));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EstimateBaseCommands)->Range(256, 8192)->Complexity(benchmark::oN);

void BM_RetargetRecording(benchmark::State& state) {
  const exo::RobotModel model = exo::default_robot_model();
  exo::SyntheticConfig cfg;
  cfg.arm_rate_hz = 50.0;
  cfg.odom_rate_hz = 10.0;
  const exo::SyntheticRecording rec = exo::generate_scenario(exo::Scenario::home, model, cfg);
  exo::PipelineOptions opts;
  opts.rate_hz = 25.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(retarget_recording(rec.exo, rec.odom, rec.calib, model, opts));
  }
}
BENCHMARK(BM_RetargetRecording);

}  // namespace

BENCHMARK_MAIN();
