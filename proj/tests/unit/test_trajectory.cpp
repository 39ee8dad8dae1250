#include <doctest.h>

#include <cmath>

#include "exo/errors.hpp"
#include "exo/trajectory.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using exo::BaseCommand;
using exo::OdomSample;
using exo::Pose6D;
using exo::TimedCommand;
using exo::TimedVector;
using exo::UnitQuaternion;
using exo::WholeBodyFrame;

namespace {

std::vector<WholeBodyFrame> constant_frames(const exo::RobotModel& model, int n, double dt) {
  std::vector<WholeBodyFrame> frames(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    WholeBodyFrame& f = frames[static_cast<std::size_t>(i)];
    f.timestamp = i * dt;
    f.arm_joints = Eigen::VectorXd::Constant(14, 0.1);
    f.hand_joints = Eigen::VectorXd::Constant(12, 0.5);
    f.base_command = BaseCommand{0.0, 0.0, 0.75};
    f.base_pose = Pose6D{UnitQuaternion(), {0.0, 0.0, 0.75}};
  }
  return frames;
}

}  // namespace

TEST_CASE("resample hits sample times exactly") {
  const std::vector<double> times{0.0, 0.1, 0.2};
  const std::vector<double> values{1.0, -2.0, 4.0};
  const std::vector<double> targets{0.1};
  const auto out = exo::resample(times, values, targets);
  CHECK(out[0] == -2.0);
}

TEST_CASE("resample midpoint of two scalars") {
  const std::vector<double> times{0.0, 1.0};
  const std::vector<double> values{0.0, 2.0};
  const std::vector<double> targets{0.5};
  CHECK(exo::resample(times, values, targets)[0] == doctest::Approx(1.0));
}

TEST_CASE("slerp midpoint of identity and a quarter turn") {
  const std::vector<double> times{0.0, 1.0};
  const std::vector<UnitQuaternion> values{
      UnitQuaternion(), UnitQuaternion::from_axis_angle(Eigen::Vector3d::UnitZ(), M_PI / 2.0)};
  const std::vector<double> targets{0.5};
  const auto out = exo::resample(times, values, targets);
  // axis-angle oracle: half the turn about the same axis
  const Eigen::Matrix3d expected = oracle::rotation_matrix(Eigen::Vector3d::UnitZ(), M_PI / 4.0);
  CHECK((out[0].to_rotation_matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("slerp output is unit norm and linear output stays in the hull") {
  gen::Rng rng(501);
  std::vector<double> times;
  std::vector<UnitQuaternion> quats;
  std::vector<double> scalars;
  double t = 0.0;
  for (int i = 0; i < 30; ++i) {
    times.push_back(t);
    t += gen::uniform(rng, 0.01, 0.2);
    quats.push_back(gen::random_quaternion(rng));
    scalars.push_back(gen::uniform(rng, -5.0, 5.0));
  }
  std::vector<double> targets;
  for (int k = 0; k < 200; ++k) targets.push_back(gen::uniform(rng, times.front(), times.back()));
  std::sort(targets.begin(), targets.end());

  const auto sq = exo::resample(times, std::span<const UnitQuaternion>(quats), targets);
  for (const UnitQuaternion& q : sq) {
    CHECK(std::abs(q.w() * q.w() + q.x() * q.x() + q.y() * q.y() + q.z() * q.z() - 1.0) < 1e-9);
  }

  const auto sv = exo::resample(times, std::span<const double>(scalars), targets);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const auto it = std::upper_bound(times.begin(), times.end(), targets[k]);
    const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - times.begin()),
                                                 times.size() - 1);
    const std::size_t lo = hi == 0 ? 0 : hi - 1;
    CHECK(sv[k] >= std::min(scalars[lo], scalars[hi]) - 1e-12);
    CHECK(sv[k] <= std::max(scalars[lo], scalars[hi]) + 1e-12);
  }
}

TEST_CASE("resample extrapolation is bounded and flagged") {
  const std::vector<double> times{0.0, 0.1, 0.2};
  const std::vector<double> values{1.0, 2.0, 3.0};
  exo::ExtrapolationFlags flags;
  const std::vector<double> ok{-0.05, 0.1, 0.25};
  const auto out = exo::resample(times, values, ok, &flags);
  CHECK(out[0] == 1.0);  // hold
  CHECK(out[2] == 3.0);
  CHECK(flags[0]);
  CHECK_FALSE(flags[1]);
  CHECK(flags[2]);
  const std::vector<double> too_far{0.45};
  CHECK_THROWS_AS(exo::resample(times, values, too_far), exo::ValidationError);
}

TEST_CASE("resample input validation") {
  const std::vector<double> empty;
  const std::vector<double> values{1.0};
  const std::vector<double> targets{0.0};
  CHECK_THROWS_AS(exo::resample(empty, empty, targets), exo::ValidationError);
  const std::vector<double> times{0.0, 0.1};
  const std::vector<double> vals2{1.0, 2.0};
  const std::vector<double> unsorted{0.1, 0.0};
  CHECK_THROWS_AS(exo::resample(times, vals2, unsorted), exo::ValidationError);
  const std::vector<double> bad_times{0.0, 0.0};
  CHECK_THROWS_AS(exo::resample(bad_times, vals2, targets), exo::ValidationError);
}

TEST_CASE("resample_hold holds the earlier sample") {
  const std::vector<double> times{0.0, 1.0};
  const std::vector<std::vector<std::string>> refs{{"a0"}, {"a1"}};
  const std::vector<double> targets{0.0, 0.4, 0.99, 1.0};
  const auto out = exo::resample_hold(times, refs, targets);
  CHECK(out[0] == std::vector<std::string>{"a0"});
  CHECK(out[1] == std::vector<std::string>{"a0"});
  CHECK(out[2] == std::vector<std::string>{"a0"});
  CHECK(out[3] == std::vector<std::string>{"a1"});
}

TEST_CASE("synchronize grid size and analytic ramps") {
  // 100 Hz arm + 10 Hz odometry resampled at 50 Hz
  std::vector<TimedVector> arm, hands;
  for (int i = 0; i <= 200; ++i) {
    const double t = i / 100.0;
    TimedVector s;
    s.timestamp = t;
    s.values = Eigen::VectorXd::Constant(14, 2.0 * t);  // ramp
    arm.push_back(s);
    TimedVector h;
    h.timestamp = t;
    h.values = Eigen::VectorXd::Constant(12, -0.5 * t);
    hands.push_back(h);
  }
  std::vector<OdomSample> odom;
  std::vector<TimedCommand> commands;
  for (int i = 0; i <= 20; ++i) {
    const double t = i / 10.0;
    odom.push_back(OdomSample{t, Pose6D{UnitQuaternion(), {0.3 * t, 0.0, 0.75}}});
    commands.push_back(TimedCommand{t, BaseCommand{0.3, 0.0, 0.75}});
  }
  const auto frames = exo::synchronize(arm, hands, odom, commands, 50.0);
  CHECK(frames.size() == static_cast<std::size_t>(std::floor(2.0 * 50.0)) + 1);
  for (const WholeBodyFrame& f : frames) {
    CHECK(f.arm_joints[0] == doctest::Approx(2.0 * f.timestamp).epsilon(1e-9));
    CHECK(f.hand_joints[3] == doctest::Approx(-0.5 * f.timestamp).epsilon(1e-9));
    CHECK(f.base_pose.translation.x() == doctest::Approx(0.3 * f.timestamp).epsilon(1e-9));
  }
}

TEST_CASE("synchronize on already-synchronized input is the identity") {
  const exo::RobotModel model = exo::default_robot_model();
  const auto frames = constant_frames(model, 21, 0.02);
  std::vector<TimedVector> arm, hands;
  std::vector<OdomSample> odom;
  std::vector<TimedCommand> commands;
  for (const WholeBodyFrame& f : frames) {
    arm.push_back(TimedVector{f.timestamp, f.arm_joints});
    hands.push_back(TimedVector{f.timestamp, f.hand_joints});
    odom.push_back(OdomSample{f.timestamp, f.base_pose});
    commands.push_back(TimedCommand{f.timestamp, f.base_command});
  }
  const auto resynced = exo::synchronize(arm, hands, odom, commands, 50.0);
  REQUIRE(resynced.size() == frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    CHECK(resynced[i].timestamp == doctest::Approx(frames[i].timestamp).epsilon(1e-12));
    CHECK((resynced[i].arm_joints - frames[i].arm_joints).norm() == 0.0);
    CHECK((resynced[i].hand_joints - frames[i].hand_joints).norm() == 0.0);
  }
}

TEST_CASE("synchronize validation") {
  std::vector<TimedVector> arm{TimedVector{0.0, Eigen::VectorXd::Zero(14)}};
  std::vector<TimedVector> hands{TimedVector{5.0, Eigen::VectorXd::Zero(12)}};
  std::vector<OdomSample> odom{OdomSample{0.0, Pose6D{}}};
  std::vector<TimedCommand> commands{TimedCommand{0.0, BaseCommand{0, 0, 0.75}}};
  CHECK_THROWS_AS(exo::synchronize(arm, hands, odom, commands, 50.0), exo::ValidationError);
  std::vector<TimedVector> hands_ok{TimedVector{0.0, Eigen::VectorXd::Zero(12)}};
  CHECK_THROWS_AS(exo::synchronize(arm, hands_ok, odom, commands, 0.0), exo::ValidationError);
  std::vector<TimedVector> empty;
  CHECK_THROWS_AS(exo::synchronize(empty, hands_ok, odom, commands, 50.0), exo::ValidationError);
}

TEST_CASE("validate: clean trajectory produces an empty report") {
  const exo::RobotModel model = exo::default_robot_model();
  const auto frames = constant_frames(model, 50, 0.02);
  const exo::ValidationReport report = exo::validate(frames, model);
  CHECK(report.empty());
  // locality: sub-ranges of a clean trajectory are clean
  const std::span<const WholeBodyFrame> span(frames);
  CHECK(exo::validate(span.subspan(10, 20), model).empty());
}

TEST_CASE("validate: one out-of-limit joint is reported once") {
  const exo::RobotModel model = exo::default_robot_model();
  auto frames = constant_frames(model, 10, 0.02);
  frames[4].arm_joints[2] = 3.2;  // beyond the 2.6 placeholder limit
  const exo::ValidationReport report = exo::validate(frames, model);
  REQUIRE(report.limit_violations.size() == 1);
  CHECK(report.limit_violations[0].frame == 4);
  CHECK(report.limit_violations[0].joint == 2);
  CHECK(report.limit_violations[0].value == doctest::Approx(3.2));
}

TEST_CASE("validate: velocity spike arithmetic") {
  const exo::RobotModel model = exo::default_robot_model();
  auto frames = constant_frames(model, 10, 0.02);
  for (std::size_t i = 5; i < frames.size(); ++i) frames[i].arm_joints[7] += 1.0;
  exo::ValidationThresholds thr;
  thr.max_joint_vel = 10.0;
  const exo::ValidationReport report = exo::validate(frames, model, thr);
  REQUIRE(report.velocity_spikes.size() == 1);
  CHECK(report.velocity_spikes[0].frame == 5);
  CHECK(report.velocity_spikes[0].joint == 7);
  CHECK(report.velocity_spikes[0].velocity == doctest::Approx(50.0));
}

TEST_CASE("validate: timestamp gaps") {
  const exo::RobotModel model = exo::default_robot_model();
  auto frames = constant_frames(model, 10, 0.02);
  for (std::size_t i = 7; i < frames.size(); ++i) frames[i].timestamp += 0.5;
  const exo::ValidationReport report = exo::validate(frames, model);
  REQUIRE(report.timestamp_gaps.size() == 1);
  CHECK(report.timestamp_gaps[0].frame == 7);
  CHECK(report.timestamp_gaps[0].dt == doctest::Approx(0.52));
}

TEST_CASE("validate: hand limit violations use offset joint indices") {
  const exo::RobotModel model = exo::default_robot_model();
  auto frames = constant_frames(model, 3, 0.02);
  frames[1].hand_joints[11] = 2.4;  // above the 1.7 placeholder hand limit
  const exo::ValidationReport report = exo::validate(frames, model);
  REQUIRE(report.limit_violations.size() == 1);
  CHECK(report.limit_violations[0].joint == 14 + 11);
}

TEST_CASE("report JSON carries the summary") {
  const exo::RobotModel model = exo::default_robot_model();
  const auto frames = constant_frames(model, 3, 0.02);
  const std::string js = exo::to_json(exo::validate(frames, model));
  CHECK(js.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("mirror_frame is an involution and flips the yaw command") {
  const exo::RobotModel model = exo::default_robot_model();
  gen::Rng rng(502);
  for (int i = 0; i < 50; ++i) {
    WholeBodyFrame f;
    f.timestamp = gen::uniform(rng, 0.0, 10.0);
    f.arm_joints = gen::random_vector(rng, 14);
    f.hand_joints = gen::random_vector(rng, 12);
    f.base_command = BaseCommand{gen::uniform(rng, -1, 1), gen::uniform(rng, -1, 1),
                                 gen::uniform(rng, 0.4, 1.0)};
    f.base_pose = Pose6D{gen::random_quaternion(rng), gen::random_vec3(rng)};
    f.camera_refs = {"cam0/17"};

    const WholeBodyFrame m = exo::mirror_frame(f, model);
    CHECK(m.base_command.omega_z == -f.base_command.omega_z);
    CHECK(m.base_command.v_x == f.base_command.v_x);
    CHECK(m.base_pose.translation.y() == -f.base_pose.translation.y());
    // rotation mirror against the conjugation oracle M R M
    Eigen::Matrix3d mirror_mat = Eigen::Vector3d(1, -1, 1).asDiagonal();
    const Eigen::Matrix3d expected =
        mirror_mat * f.base_pose.rotation.to_rotation_matrix() * mirror_mat;
    CHECK((m.base_pose.rotation.to_rotation_matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);

    const WholeBodyFrame back = exo::mirror_frame(m, model);
    CHECK((back.arm_joints - f.arm_joints).norm() == 0.0);
    CHECK((back.hand_joints - f.hand_joints).norm() == 0.0);
    CHECK(back.base_command.omega_z == f.base_command.omega_z);
    CHECK((back.base_pose.translation - f.base_pose.translation).norm() == 0.0);
    CHECK(back.base_pose.rotation.approx_equal(f.base_pose.rotation, 1e-15));
    CHECK(back.camera_refs == f.camera_refs);
  }
}
