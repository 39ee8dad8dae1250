#include "exo/robot_model.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "exo/errors.hpp"

namespace exo {

namespace {

using nlohmann::ordered_json;

ordered_json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  ordered_json j = ordered_json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw FormatError("invalid JSON in " + path.string());
  return j;
}

JointKind kind_from_string(const std::string& s) {
  if (s == "revolute-active") return JointKind::revolute_active;
  if (s == "revolute-passive") return JointKind::revolute_passive;
  if (s == "fixed") return JointKind::fixed;
  throw FormatError("unknown joint kind '" + s + "'");
}

std::string kind_to_string(JointKind k) {
  switch (k) {
    case JointKind::revolute_active: return "revolute-active";
    case JointKind::revolute_passive: return "revolute-passive";
    case JointKind::fixed: return "fixed";
  }
  return "?";
}

KinematicChain chain_from_json(const ordered_json& j) {
  try {
    std::vector<DHRow> rows;
    for (const auto& rj : j.at("dh_rows")) {
      DHRow row;
      row.a = rj.at("a").get<double>();
      row.alpha = rj.at("alpha").get<double>();
      row.d = rj.at("d").get<double>();
      row.theta_offset = rj.at("theta_offset").get<double>();
      row.kind = kind_from_string(rj.at("kind").get<std::string>());
      rows.push_back(row);
    }
    std::vector<JointLimit> limits;
    for (const auto& lj : j.at("limits")) {
      limits.push_back(JointLimit{lj.at(0).get<double>(), lj.at(1).get<double>()});
    }
    std::vector<PassiveCoupling> couplings;
    if (j.contains("passive_couplings")) {
      for (const auto& cj : j.at("passive_couplings")) {
        PassiveCoupling pc;
        pc.passive_row = cj.at("passive_index").get<std::size_t>();
        pc.active_joint = cj.at("active_index").get<std::size_t>();
        pc.gain = cj.at("gain").get<double>();
        pc.offset = cj.at("offset").get<double>();
        couplings.push_back(pc);
      }
    }
    return KinematicChain(j.value("name", std::string{}), std::move(rows), std::move(limits),
                          std::move(couplings));
  } catch (const ordered_json::exception& e) {
    throw FormatError(std::string("chain config: ") + e.what());
  }
}

ordered_json chain_to_json(const KinematicChain& chain) {
  ordered_json j;
  j["name"] = chain.name();
  j["dh_rows"] = ordered_json::array();
  for (const DHRow& row : chain.rows()) {
    j["dh_rows"].push_back({{"a", row.a},
                            {"alpha", row.alpha},
                            {"d", row.d},
                            {"theta_offset", row.theta_offset},
                            {"kind", kind_to_string(row.kind)}});
  }
  j["limits"] = ordered_json::array();
  for (const JointLimit& lim : chain.limits()) {
    j["limits"].push_back({lim.lo, lim.hi});
  }
  j["passive_couplings"] = ordered_json::array();
  for (const PassiveCoupling& pc : chain.couplings()) {
    j["passive_couplings"].push_back({{"passive_index", pc.passive_row},
                                      {"active_index", pc.active_joint},
                                      {"gain", pc.gain},
                                      {"offset", pc.offset}});
  }
  return j;
}

MirrorSpec mirror_from_json(const ordered_json& j) {
  MirrorSpec spec;
  spec.joint_permutation = j.at("permutation").get<std::vector<std::size_t>>();
  spec.joint_sign = j.at("sign").get<std::vector<double>>();
  spec.validate();
  return spec;
}

ordered_json mirror_to_json(const MirrorSpec& spec) {
  return ordered_json{{"permutation", spec.joint_permutation}, {"sign", spec.joint_sign}};
}

ElbowMap elbow_from_json(const ordered_json& j) {
  ElbowMap map;
  map.gain = j.at("gain").get<double>();
  map.offset = j.at("offset").get<double>();
  map.limits = JointLimit{j.at("limits").at(0).get<double>(), j.at("limits").at(1).get<double>()};
  return map;
}

ordered_json elbow_to_json(const ElbowMap& map) {
  return ordered_json{
      {"gain", map.gain}, {"offset", map.offset}, {"limits", {map.limits.lo, map.limits.hi}}};
}

ArmModel arm_from_json(const ordered_json& j) {
  ArmModel arm{chain_from_json(j.at("exo_chain")), chain_from_json(j.at("shoulder_chain")),
               elbow_from_json(j.at("elbow")), chain_from_json(j.at("wrist_chain"))};
  if (arm.shoulder_chain.active_count() != 3 || arm.wrist_chain.active_count() != 3) {
    throw FormatError("arm model: shoulder and wrist chains must each have 3 active joints");
  }
  return arm;
}

ordered_json arm_to_json(const ArmModel& arm) {
  ordered_json j;
  j["exo_chain"] = chain_to_json(arm.exo_chain);
  j["shoulder_chain"] = chain_to_json(arm.shoulder_chain);
  j["elbow"] = elbow_to_json(arm.elbow);
  j["wrist_chain"] = chain_to_json(arm.wrist_chain);
  return j;
}

/// ZYZ-style spherical subchain: identity orientation at the zero pose.
KinematicChain spherical_chain(const std::string& name, double d0,
                               std::vector<JointLimit> limits) {
  std::vector<DHRow> rows = {
      DHRow{0.0, -M_PI / 2.0, d0, 0.0, JointKind::revolute_active},
      DHRow{0.0, M_PI / 2.0, 0.0, 0.0, JointKind::revolute_active},
      DHRow{0.0, 0.0, 0.0, 0.0, JointKind::revolute_active},
  };
  return KinematicChain(name, std::move(rows), std::move(limits));
}

/// Placeholder exoskeleton upper-arm chain: three encoders with two passive
/// belt-coupled rows at the GH joint. Identity orientation at zero.
KinematicChain placeholder_exo_chain(const std::string& name) {
  std::vector<DHRow> rows = {
      DHRow{0.0, -M_PI / 2.0, 0.06, 0.0, JointKind::revolute_active},
      DHRow{0.02, 0.0, 0.0, 0.0, JointKind::revolute_passive},
      DHRow{0.0, M_PI / 2.0, 0.0, 0.0, JointKind::revolute_active},
      DHRow{0.015, 0.0, 0.0, 0.0, JointKind::revolute_passive},
      DHRow{0.0, 0.0, 0.09, 0.0, JointKind::revolute_active},
  };
  std::vector<JointLimit> limits = {{-2.9, 2.9}, {-2.0, 2.0}, {-2.9, 2.9}};
  std::vector<PassiveCoupling> couplings = {
      PassiveCoupling{1, 0, 0.25, 0.0},
      PassiveCoupling{3, 1, -0.15, 0.0},
  };
  return KinematicChain(name, std::move(rows), std::move(limits), std::move(couplings));
}

ArmModel placeholder_arm(const std::string& side) {
  ArmModel arm{
      placeholder_exo_chain("exo_" + side),
      spherical_chain("shoulder_" + side, 0.10, {{-3.0, 2.6}, {-2.0, 2.0}, {-2.6, 2.6}}),
      ElbowMap{1.0, 0.0, JointLimit{-1.0, 2.2}},
      spherical_chain("wrist_" + side, 0.05, {{-1.9, 1.9}, {-1.5, 1.5}, {-1.6, 1.6}}),
  };
  return arm;
}

}  // namespace

JointLimit RobotModel::arm_limit(std::size_t j) const {
  const ArmModel& arm = j < 7 ? left_arm : right_arm;
  const std::size_t k = j % 7;
  if (k < 3) return arm.shoulder_chain.limits()[k];
  if (k == 3) return arm.elbow.limits;
  return arm.wrist_chain.limits()[k - 4];
}

std::string RobotModel::arm_joint_name(std::size_t j) const {
  static const char* part[7] = {"shoulder_0", "shoulder_1", "shoulder_2", "elbow",
                                "wrist_0",    "wrist_1",    "wrist_2"};
  return std::string(j < 7 ? "left_" : "right_") + part[j % 7];
}

RobotModel default_robot_model() {
  RobotModel m;
  m.name = "placeholder_humanoid";
  m.left_arm = placeholder_arm("left");
  m.right_arm = placeholder_arm("right");
  m.hand = HandModel{6, JointLimit{-0.3, 1.7}};

  m.lower.q0 = Eigen::VectorXd(12);
  m.lower.q0 << -0.2, 0.0, 0.0, 0.42, -0.23, 0.0, -0.2, 0.0, 0.0, 0.42, -0.23, 0.0;
  m.lower.limits = {{-2.5, 2.8}, {-2.9, 2.9}, {-2.7, 2.7}, {-0.1, 2.8}, {-0.87, 0.52}, {-0.26, 0.26},
                    {-2.5, 2.8}, {-2.9, 2.9}, {-2.7, 2.7}, {-0.1, 2.8}, {-0.87, 0.52}, {-0.26, 0.26}};
  m.lower.gains.kp = Eigen::VectorXd(12);
  m.lower.gains.kp << 100, 100, 100, 150, 40, 40, 100, 100, 100, 150, 40, 40;
  m.lower.gains.kd = Eigen::VectorXd(12);
  m.lower.gains.kd << 2, 2, 2, 4, 2, 2, 2, 2, 2, 4, 2, 2;
  m.lower.mirror = default_lower_body_mirror();

  m.arm_mirror.joint_permutation = {7, 8, 9, 10, 11, 12, 13, 0, 1, 2, 3, 4, 5, 6};
  const double arm_sign[7] = {1.0, -1.0, -1.0, 1.0, -1.0, 1.0, -1.0};
  m.arm_mirror.joint_sign.assign(14, 1.0);
  for (std::size_t i = 0; i < 14; ++i) m.arm_mirror.joint_sign[i] = arm_sign[i % 7];
  m.arm_mirror.validate();

  m.hand_mirror.joint_permutation = {6, 7, 8, 9, 10, 11, 0, 1, 2, 3, 4, 5};
  m.hand_mirror.joint_sign.assign(12, 1.0);
  m.hand_mirror.validate();

  m.ik = IkOptions{};
  return m;
}

RobotModel load_robot_model(const std::filesystem::path& path) {
  const ordered_json j = parse_file(path);
  try {
    RobotModel m;
    m.name = j.at("name").get<std::string>();
    m.left_arm = arm_from_json(j.at("arms").at("left"));
    m.right_arm = arm_from_json(j.at("arms").at("right"));
    m.hand.active_per_hand = j.at("hands").at("active_per_hand").get<std::size_t>();
    m.hand.limits = JointLimit{j.at("hands").at("limits").at(0).get<double>(),
                               j.at("hands").at("limits").at(1).get<double>()};
    const auto& lj = j.at("lower_body");
    const auto q0v = lj.at("q0").get<std::vector<double>>();
    m.lower.q0 = Eigen::Map<const Eigen::VectorXd>(q0v.data(), static_cast<Eigen::Index>(q0v.size()));
    for (const auto& lim : lj.at("limits")) {
      m.lower.limits.push_back(JointLimit{lim.at(0).get<double>(), lim.at(1).get<double>()});
    }
    const auto kpv = lj.at("pd").at("kp").get<std::vector<double>>();
    const auto kdv = lj.at("pd").at("kd").get<std::vector<double>>();
    m.lower.gains.kp = Eigen::Map<const Eigen::VectorXd>(kpv.data(), static_cast<Eigen::Index>(kpv.size()));
    m.lower.gains.kd = Eigen::Map<const Eigen::VectorXd>(kdv.data(), static_cast<Eigen::Index>(kdv.size()));
    m.lower.mirror = mirror_from_json(lj.at("mirror"));
    m.arm_mirror = mirror_from_json(j.at("arm_mirror"));
    m.hand_mirror = mirror_from_json(j.at("hand_mirror"));
    if (j.contains("ik")) {
      const auto& ij = j.at("ik");
      m.ik.damping = ij.value("damping", m.ik.damping);
      m.ik.max_iterations = ij.value("max_iterations", m.ik.max_iterations);
      m.ik.tolerance = ij.value("tolerance", m.ik.tolerance);
      m.ik.step_scale = ij.value("step_scale", m.ik.step_scale);
    }
    if (m.arm_mirror.size() != RobotModel::kArmJointCount ||
        m.hand_mirror.size() != RobotModel::kHandJointCount) {
      throw FormatError("robot model: mirror table sizes must be 14 (arms) and 12 (hands)");
    }
    if (m.lower.q0.size() != static_cast<Eigen::Index>(m.lower.limits.size()) ||
        m.lower.gains.kp.size() != m.lower.q0.size() || m.lower.gains.kd.size() != m.lower.q0.size() ||
        m.lower.mirror.size() != static_cast<std::size_t>(m.lower.q0.size())) {
      throw FormatError("robot model: inconsistent lower-body vector sizes");
    }
    return m;
  } catch (const ordered_json::exception& e) {
    throw FormatError("robot model " + path.string() + ": " + e.what());
  }
}

void save_robot_model(const RobotModel& model, const std::filesystem::path& path) {
  ordered_json j;
  j["name"] = model.name;
  j["arms"] = ordered_json{{"left", arm_to_json(model.left_arm)},
                           {"right", arm_to_json(model.right_arm)}};
  j["hands"] = ordered_json{{"active_per_hand", model.hand.active_per_hand},
                            {"limits", {model.hand.limits.lo, model.hand.limits.hi}}};
  ordered_json lj;
  lj["q0"] = std::vector<double>(model.lower.q0.data(), model.lower.q0.data() + model.lower.q0.size());
  lj["limits"] = ordered_json::array();
  for (const JointLimit& lim : model.lower.limits) lj["limits"].push_back({lim.lo, lim.hi});
  lj["pd"] = ordered_json{
      {"kp", std::vector<double>(model.lower.gains.kp.data(),
                                 model.lower.gains.kp.data() + model.lower.gains.kp.size())},
      {"kd", std::vector<double>(model.lower.gains.kd.data(),
                                 model.lower.gains.kd.data() + model.lower.gains.kd.size())}};
  lj["mirror"] = mirror_to_json(model.lower.mirror);
  j["lower_body"] = lj;
  j["arm_mirror"] = mirror_to_json(model.arm_mirror);
  j["hand_mirror"] = mirror_to_json(model.hand_mirror);
  j["ik"] = ordered_json{{"damping", model.ik.damping},
                         {"max_iterations", model.ik.max_iterations},
                         {"tolerance", model.ik.tolerance},
                         {"step_scale", model.ik.step_scale}};
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

KinematicChain load_chain(const std::filesystem::path& path) {
  return chain_from_json(parse_file(path));
}

void save_chain(const KinematicChain& chain, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << chain_to_json(chain).dump(2) << "\n";
}

}  // namespace exo
