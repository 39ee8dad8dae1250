#include "exo/streams.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "exo/errors.hpp"

namespace exo {

namespace {

using nlohmann::ordered_json;

ordered_json quat_to_json(const UnitQuaternion& q) {
  return ordered_json{q.w(), q.x(), q.y(), q.z()};
}

UnitQuaternion quat_from_json(const ordered_json& j) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 4) throw FormatError("quaternion must have 4 components [w,x,y,z]");
  return UnitQuaternion(v[0], v[1], v[2], v[3]);
}

ordered_json arm_to_json(const ExoArmFrame& arm, const Eigen::VectorXd& hand) {
  ordered_json j;
  j["enc"] = std::vector<double>(arm.encoder_angles.data(),
                                 arm.encoder_angles.data() + arm.encoder_angles.size());
  j["elbow"] = arm.elbow_angle;
  j["q_w"] = quat_to_json(arm.imu_wrist);
  j["q_f"] = quat_to_json(arm.imu_forearm);
  j["hand"] = std::vector<double>(hand.data(), hand.data() + hand.size());
  return j;
}

void arm_from_json(const ordered_json& j, double t, ExoArmFrame& arm, Eigen::VectorXd& hand) {
  const auto enc = j.at("enc").get<std::vector<double>>();
  arm.timestamp = t;
  arm.encoder_angles =
      Eigen::Map<const Eigen::VectorXd>(enc.data(), static_cast<Eigen::Index>(enc.size()));
  arm.elbow_angle = j.at("elbow").get<double>();
  arm.imu_wrist = quat_from_json(j.at("q_w"));
  arm.imu_forearm = quat_from_json(j.at("q_f"));
  const auto hv = j.at("hand").get<std::vector<double>>();
  hand = Eigen::Map<const Eigen::VectorXd>(hv.data(), static_cast<Eigen::Index>(hv.size()));
}

std::vector<ordered_json> read_jsonl(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<ordered_json> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ordered_json j = ordered_json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      std::ostringstream os;
      os << what << " " << path.string() << ": malformed JSON at line " << lineno;
      throw FormatError(os.str());
    }
    lines.push_back(std::move(j));
  }
  return lines;
}

}  // namespace

std::vector<ExoSample> read_exo_raw(const std::filesystem::path& path) {
  std::vector<ExoSample> out;
  double prev_t = -std::numeric_limits<double>::infinity();
  for (const ordered_json& j : read_jsonl(path, "exo-raw")) {
    try {
      ExoSample s;
      s.timestamp = j.at("t").get<double>();
      if (!std::isfinite(s.timestamp) || s.timestamp < prev_t) {
        throw FormatError("exo-raw " + path.string() + ": timestamps must be non-decreasing");
      }
      prev_t = s.timestamp;
      arm_from_json(j.at("left"), s.timestamp, s.left, s.left_hand);
      arm_from_json(j.at("right"), s.timestamp, s.right, s.right_hand);
      out.push_back(std::move(s));
    } catch (const ordered_json::exception& e) {
      throw FormatError("exo-raw " + path.string() + ": " + e.what());
    }
  }
  return out;
}

void write_exo_raw(std::span<const ExoSample> samples, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const ExoSample& s : samples) {
    ordered_json j;
    j["t"] = s.timestamp;
    j["left"] = arm_to_json(s.left, s.left_hand);
    j["right"] = arm_to_json(s.right, s.right_hand);
    out << j.dump() << "\n";
  }
}

std::vector<OdomSample> read_odom(const std::filesystem::path& path) {
  std::vector<OdomSample> out;
  double prev_t = -std::numeric_limits<double>::infinity();
  for (const ordered_json& j : read_jsonl(path, "odometry")) {
    try {
      OdomSample s;
      s.timestamp = j.at("t").get<double>();
      if (!std::isfinite(s.timestamp) || s.timestamp <= prev_t) {
        throw FormatError("odometry " + path.string() + ": timestamps must be strictly increasing");
      }
      prev_t = s.timestamp;
      s.pose.rotation = quat_from_json(j.at("q"));
      const auto p = j.at("p").get<std::vector<double>>();
      if (p.size() != 3) throw FormatError("odometry: p must have 3 components");
      s.pose.translation = Eigen::Vector3d(p[0], p[1], p[2]);
      out.push_back(s);
    } catch (const ordered_json::exception& e) {
      throw FormatError("odometry " + path.string() + ": " + e.what());
    }
  }
  return out;
}

void write_odom(std::span<const OdomSample> samples, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const OdomSample& s : samples) {
    ordered_json j;
    j["t"] = s.timestamp;
    j["q"] = quat_to_json(s.pose.rotation);
    j["p"] = {s.pose.translation.x(), s.pose.translation.y(), s.pose.translation.z()};
    out << j.dump() << "\n";
  }
}

ArmCalibrationPair read_calibration(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  ordered_json j = ordered_json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw FormatError("calibration: invalid JSON in " + path.string());
  try {
    ArmCalibrationPair c;
    c.left.q_w0 = quat_from_json(j.at("left").at("q_w0"));
    c.left.q_f0 = quat_from_json(j.at("left").at("q_f0"));
    c.right.q_w0 = quat_from_json(j.at("right").at("q_w0"));
    c.right.q_f0 = quat_from_json(j.at("right").at("q_f0"));
    return c;
  } catch (const ordered_json::exception& e) {
    throw FormatError("calibration " + path.string() + ": " + e.what());
  }
}

void write_calibration(const ArmCalibrationPair& calib, const std::filesystem::path& path) {
  ordered_json j;
  j["left"] = ordered_json{{"q_w0", quat_to_json(calib.left.q_w0)},
                           {"q_f0", quat_to_json(calib.left.q_f0)}};
  j["right"] = ordered_json{{"q_w0", quat_to_json(calib.right.q_w0)},
                            {"q_f0", quat_to_json(calib.right.q_f0)}};
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace exo
