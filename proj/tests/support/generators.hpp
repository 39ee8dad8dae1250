#pragma once

// Seeded random generators shared by the unit and acceptance suites.

#include <random>
#include <vector>

#include <Eigen/Core>

#include "exo/control.hpp"
#include "exo/kinematics.hpp"
#include "exo/quaternion.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline exo::UnitQuaternion random_quaternion(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  while (true) {
    const double w = normal(rng), x = normal(rng), y = normal(rng), z = normal(rng);
    if (w * w + x * x + y * y + z * z > 1e-12) return exo::UnitQuaternion(w, x, y, z);
  }
}

inline Eigen::Vector3d random_vec3(Rng& rng, double scale = 1.0) {
  return Eigen::Vector3d(uniform(rng, -scale, scale), uniform(rng, -scale, scale),
                         uniform(rng, -scale, scale));
}

inline Eigen::VectorXd random_vector(Rng& rng, Eigen::Index n, double scale = 1.0) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform(rng, -scale, scale);
  return v;
}

/// Random DH chain with 1..max_active active joints, optionally salted with
/// passive (coupled and uncoupled) and fixed rows.
inline exo::KinematicChain random_chain(Rng& rng, int max_active = 7, bool with_extras = true) {
  const int n_active = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_active));
  std::vector<exo::DHRow> rows;
  std::vector<exo::PassiveCoupling> couplings;
  int active_so_far = 0;
  while (active_so_far < n_active) {
    exo::DHRow row;
    row.a = uniform(rng, -0.5, 0.5);
    row.alpha = uniform(rng, -M_PI, M_PI);
    row.d = uniform(rng, -0.5, 0.5);
    row.theta_offset = uniform(rng, -M_PI, M_PI);
    const unsigned pick = with_extras ? rng() % 10 : 0;
    if (pick < 6 || !with_extras) {
      row.kind = exo::JointKind::revolute_active;
      ++active_so_far;
    } else if (pick < 8) {
      row.kind = exo::JointKind::revolute_passive;
      if (active_so_far > 0 && (rng() % 4) != 0) {
        exo::PassiveCoupling pc;
        pc.passive_row = rows.size();
        pc.active_joint = static_cast<std::size_t>(rng() % static_cast<unsigned>(active_so_far));
        pc.gain = uniform(rng, -1.0, 1.0);
        pc.offset = uniform(rng, -0.5, 0.5);
        couplings.push_back(pc);
      }
    } else {
      row.kind = exo::JointKind::fixed;
    }
    rows.push_back(row);
  }
  std::vector<exo::JointLimit> limits(static_cast<std::size_t>(n_active));
  for (auto& lim : limits) {
    lim.lo = uniform(rng, -M_PI, -0.2);
    lim.hi = uniform(rng, 0.2, M_PI);
  }
  return exo::KinematicChain("random", std::move(rows), std::move(limits), std::move(couplings));
}

inline Eigen::VectorXd random_joints_in_limits(Rng& rng, const exo::KinematicChain& chain,
                                               double margin = 0.0) {
  Eigen::VectorXd q(static_cast<Eigen::Index>(chain.active_count()));
  for (std::size_t j = 0; j < chain.active_count(); ++j) {
    const exo::JointLimit& lim = chain.limits()[j];
    q[static_cast<Eigen::Index>(j)] = uniform(rng, lim.lo + margin, lim.hi - margin);
  }
  return q;
}

/// Random valid mirror spec: a random involutive pairing with matched signs.
inline exo::MirrorSpec random_mirror_spec(Rng& rng, std::size_t n) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  exo::MirrorSpec spec;
  spec.joint_permutation.assign(n, 0);
  spec.joint_sign.assign(n, 1.0);
  std::size_t i = 0;
  for (; i + 1 < n; i += 2) {
    const std::size_t a = order[i], b = order[i + 1];
    if (rng() % 4 == 0) {  // occasional fixed points
      spec.joint_permutation[a] = a;
      spec.joint_permutation[b] = b;
      spec.joint_sign[a] = (rng() % 2) ? 1.0 : -1.0;
      spec.joint_sign[b] = (rng() % 2) ? 1.0 : -1.0;
    } else {
      const double s = (rng() % 2) ? 1.0 : -1.0;
      spec.joint_permutation[a] = b;
      spec.joint_permutation[b] = a;
      spec.joint_sign[a] = s;
      spec.joint_sign[b] = s;
    }
  }
  if (i < n) {
    spec.joint_permutation[order[i]] = order[i];
    spec.joint_sign[order[i]] = (rng() % 2) ? 1.0 : -1.0;
  }
  spec.validate();
  return spec;
}

}  // namespace gen
