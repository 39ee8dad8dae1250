#include <doctest.h>

#include <cmath>

#include "exo/errors.hpp"
#include "exo/kinematics.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using exo::DHRow;
using exo::IkOptions;
using exo::IkResult;
using exo::JointKind;
using exo::JointLimit;
using exo::KinematicChain;
using exo::Pose6D;
using exo::UnitQuaternion;

namespace {

KinematicChain three_joint_zyz() {
  std::vector<DHRow> rows = {
      DHRow{0.0, -M_PI / 2.0, 0.1, 0.0, JointKind::revolute_active},
      DHRow{0.0, M_PI / 2.0, 0.0, 0.0, JointKind::revolute_active},
      DHRow{0.0, 0.0, 0.0, 0.0, JointKind::revolute_active},
  };
  return KinematicChain("zyz", std::move(rows),
                        {{-2.8, 2.8}, {-2.0, 2.0}, {-2.8, 2.8}});
}

void check_pose_against_oracle(const Pose6D& pose, const Eigen::Matrix4d& m, double tol) {
  CHECK((pose.translation - m.block<3, 1>(0, 3)).cwiseAbs().maxCoeff() < tol);
  const Eigen::Quaterniond oq(Eigen::Matrix3d(m.block<3, 3>(0, 0)));
  // component-wise after sign canonicalization
  const UnitQuaternion expected(oq.w(), oq.x(), oq.y(), oq.z());
  CHECK(pose.rotation.approx_equal(expected, tol));
}

}  // namespace

TEST_CASE("chain validation") {
  CHECK_THROWS_AS(KinematicChain("bad", {DHRow{}}, {{1.0, 1.0}}), exo::ValidationError);
  CHECK_THROWS_AS(KinematicChain("bad", {DHRow{}}, {}), exo::DimensionError);
  // coupling must point at a passive row
  std::vector<DHRow> rows = {DHRow{}, DHRow{0, 0, 0, 0, JointKind::revolute_passive}};
  CHECK_THROWS_AS(KinematicChain("bad", rows, {{-1.0, 1.0}},
                                 {exo::PassiveCoupling{0, 0, 1.0, 0.0}}),
                  exo::ValidationError);
  CHECK_NOTHROW(KinematicChain("ok", rows, {{-1.0, 1.0}},
                               {exo::PassiveCoupling{1, 0, 0.5, 0.0}}));
}

TEST_CASE("fk on pure d-offset rows is a pure translation") {
  std::vector<DHRow> rows = {
      DHRow{0.0, 0.0, 0.2, 0.0, JointKind::revolute_active},
      DHRow{0.0, 0.0, 0.3, 0.0, JointKind::fixed},
      DHRow{0.0, 0.0, 0.15, 0.0, JointKind::revolute_active},
  };
  KinematicChain chain("stack", std::move(rows), {{-1.0, 1.0}, {-1.0, 1.0}});
  const Pose6D pose = fk_chain(chain, Eigen::Vector2d(0.0, 0.0));
  CHECK(pose.rotation.approx_equal(UnitQuaternion(), 1e-15));
  CHECK((pose.translation - Eigen::Vector3d(0.0, 0.0, 0.65)).norm() < 1e-15);
}

TEST_CASE("single revolute joint rotates about its axis") {
  KinematicChain chain("one", {DHRow{}}, {{-M_PI, M_PI}});
  const double theta = 0.73;
  const Pose6D pose = fk_chain(chain, Eigen::Matrix<double, 1, 1>(theta));
  CHECK(pose.rotation.approx_equal(
      UnitQuaternion::from_axis_angle(Eigen::Vector3d::UnitZ(), theta), 1e-15));
}

TEST_CASE("fk matches the homogeneous-matrix oracle") {
  gen::Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const KinematicChain chain = gen::random_chain(rng);
    const Eigen::VectorXd q = gen::random_joints_in_limits(rng, chain);
    check_pose_against_oracle(fk_chain(chain, q), oracle::fk_matrix(chain, q), 1e-10);
  }
}

TEST_CASE("fk dimension and NaN errors") {
  KinematicChain chain = three_joint_zyz();
  CHECK_THROWS_WITH_AS(fk_chain(chain, Eigen::Vector2d(0, 0)),
                       doctest::Contains("expected 3"), exo::DimensionError);
  Eigen::Vector3d q(0.0, std::nan(""), 0.0);
  CHECK_THROWS_AS(fk_chain(chain, q), exo::ValidationError);
}

TEST_CASE("jacobian of a single z joint") {
  KinematicChain chain("one", {DHRow{}}, {{-M_PI, M_PI}});
  for (double theta : {0.0, 0.4, -1.2}) {
    const Eigen::Matrix3Xd jac = jacobian_orientation(chain, Eigen::Matrix<double, 1, 1>(theta));
    CHECK((jac.col(0) - Eigen::Vector3d::UnitZ()).norm() < 1e-15);
  }
}

TEST_CASE("jacobian of a zero-DoF chain is 3x0") {
  KinematicChain chain("fixed", {DHRow{0, 0.3, 0.1, 0.2, JointKind::fixed}}, {});
  const Eigen::Matrix3Xd jac = jacobian_orientation(chain, Eigen::VectorXd());
  CHECK(jac.rows() == 3);
  CHECK(jac.cols() == 0);
}

TEST_CASE("jacobian matches central finite differences") {
  gen::Rng rng(102);
  for (int trial = 0; trial < 50; ++trial) {
    const KinematicChain chain = gen::random_chain(rng);
    const Eigen::VectorXd q = gen::random_joints_in_limits(rng, chain, 1e-5);
    const Eigen::Matrix3Xd jac = jacobian_orientation(chain, q);
    const Eigen::Matrix3Xd fd = oracle::fd_jacobian(chain, q);
    CHECK((jac - fd).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("ik fixed point returns the seed with zero iterations") {
  KinematicChain chain = three_joint_zyz();
  const Eigen::Vector3d seed(0.4, 0.9, -0.7);
  const UnitQuaternion target = fk_chain(chain, seed).rotation;
  const IkResult result = ik_orientation(chain, target, seed);
  CHECK(result.iterations == 0);
  CHECK(result.converged);
  CHECK(result.residual < 1e-9);
  CHECK((result.joints - seed).norm() == 0.0);
}

TEST_CASE("ik round trip recovers reachable targets") {
  KinematicChain chain = three_joint_zyz();
  gen::Rng rng(103);
  int recovered = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    const Eigen::VectorXd q_true = gen::random_joints_in_limits(rng, chain);
    const UnitQuaternion target = fk_chain(chain, q_true).rotation;
    Eigen::VectorXd seed = q_true;
    for (Eigen::Index i = 0; i < 3; ++i) seed[i] += gen::uniform(rng, -0.1, 0.1);
    seed = chain.clamp(seed);
    const IkResult result = ik_orientation(chain, target, seed);
    CHECK(chain.within_limits(result.joints));
    if (result.residual <= 1e-6) ++recovered;
    CHECK(result.residual ==
          doctest::Approx(exo::orientation_error(fk_chain(chain, result.joints).rotation, target)
                              .norm())
              .epsilon(1e-12));
  }
  CHECK(recovered >= 99);
}

TEST_CASE("ik on an unreachable target lands on the limit boundary") {
  // Narrow cone: the middle joint barely moves.
  std::vector<DHRow> rows = {
      DHRow{0.0, -M_PI / 2.0, 0.1, 0.0, JointKind::revolute_active},
      DHRow{0.0, M_PI / 2.0, 0.0, 0.0, JointKind::revolute_active},
      DHRow{0.0, 0.0, 0.0, 0.0, JointKind::revolute_active},
  };
  KinematicChain chain("narrow", std::move(rows), {{-0.3, 0.3}, {-0.25, 0.25}, {-0.3, 0.3}});
  const UnitQuaternion target =
      UnitQuaternion::from_axis_angle(Eigen::Vector3d(0.3, 0.8, 0.52).normalized(), 2.4);
  const IkResult result = ik_orientation(chain, target, Eigen::Vector3d(0.05, -0.05, 0.1));
  CHECK(result.residual > 0.1);
  CHECK(!result.converged);
  CHECK(chain.within_limits(result.joints));
  bool on_boundary = false;
  for (int j = 0; j < 3; ++j) {
    const JointLimit lim = chain.limits()[static_cast<std::size_t>(j)];
    if (result.joints[j] == lim.lo || result.joints[j] == lim.hi) on_boundary = true;
  }
  CHECK(on_boundary);
  const double grid = oracle::grid_min_residual(chain, target, 60);
  CHECK(result.residual <= 1.05 * grid + 1e-9);
}

TEST_CASE("ik validates options and inputs") {
  KinematicChain chain = three_joint_zyz();
  IkOptions opts;
  opts.tolerance = 0.0;
  CHECK_THROWS_AS(ik_orientation(chain, UnitQuaternion(), Eigen::Vector3d::Zero(), opts),
                  exo::ValidationError);
  opts = IkOptions{};
  opts.max_iterations = 0;
  CHECK_THROWS_AS(ik_orientation(chain, UnitQuaternion(), Eigen::Vector3d::Zero(), opts),
                  exo::ValidationError);
  opts = IkOptions{};
  opts.step_scale = 1.5;
  CHECK_THROWS_AS(ik_orientation(chain, UnitQuaternion(), Eigen::Vector3d::Zero(), opts),
                  exo::ValidationError);
  Eigen::Vector3d bad(0.0, std::nan(""), 0.0);
  CHECK_THROWS_AS(ik_orientation(chain, UnitQuaternion(), bad), exo::ValidationError);
}

TEST_CASE("ik clamps an out-of-limit seed") {
  KinematicChain chain = three_joint_zyz();
  const UnitQuaternion target = fk_chain(chain, Eigen::Vector3d(0.2, 0.3, 0.1)).rotation;
  const IkResult result = ik_orientation(chain, target, Eigen::Vector3d(10.0, -10.0, 0.0));
  CHECK(chain.within_limits(result.joints));
}
