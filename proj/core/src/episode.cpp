#include "exo/episode.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "exo/errors.hpp"
#include "exo/log.hpp"

namespace exo {

namespace {

using nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

void check_episode(const Episode& episode) {
  const EpisodeHeader& h = episode.header;
  if (h.source != "teleop" && h.source != "exo") {
    throw ValidationError("episode: source must be 'teleop' or 'exo', got '" + h.source + "'");
  }
  if (h.frame_count != episode.frames.size()) {
    std::ostringstream os;
    os << "episode: header frame_count " << h.frame_count << " != " << episode.frames.size()
       << " frames";
    throw ValidationError(os.str());
  }
  for (std::size_t i = 0; i < episode.frames.size(); ++i) {
    const WholeBodyFrame& f = episode.frames[i];
    if (!std::isfinite(f.timestamp)) throw ValidationError("episode: non-finite timestamp");
    if (i > 0 && !(f.timestamp > episode.frames[i - 1].timestamp)) {
      throw ValidationError("episode: frame timestamps must be strictly increasing");
    }
    if (!f.arm_joints.allFinite() || !f.hand_joints.allFinite()) {
      throw ValidationError("episode: non-finite joint value");
    }
    if (!std::isfinite(f.base_command.v_x) || !std::isfinite(f.base_command.omega_z) ||
        !(f.base_command.h > 0.0)) {
      throw ValidationError("episode: base command must be finite with h > 0");
    }
    if (!f.base_pose.translation.allFinite()) {
      throw ValidationError("episode: non-finite base pose");
    }
  }
}

std::vector<double> to_vec(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd from_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

ordered_json frame_to_json(const WholeBodyFrame& f) {
  ordered_json j;
  j["t"] = f.timestamp;
  j["arm"] = to_vec(f.arm_joints);
  j["hand"] = to_vec(f.hand_joints);
  j["cmd"] = {f.base_command.v_x, f.base_command.omega_z, f.base_command.h};
  j["pose"] = ordered_json{{"q",
                            {f.base_pose.rotation.w(), f.base_pose.rotation.x(),
                             f.base_pose.rotation.y(), f.base_pose.rotation.z()}},
                           {"p",
                            {f.base_pose.translation.x(), f.base_pose.translation.y(),
                             f.base_pose.translation.z()}}};
  j["cam"] = f.camera_refs;
  return j;
}

WholeBodyFrame frame_from_json(const ordered_json& j) {
  WholeBodyFrame f;
  f.timestamp = j.at("t").get<double>();
  f.arm_joints = from_vec(j.at("arm").get<std::vector<double>>());
  f.hand_joints = from_vec(j.at("hand").get<std::vector<double>>());
  const auto cmd = j.at("cmd").get<std::vector<double>>();
  if (cmd.size() != 3) throw FormatError("episode frame: cmd must have 3 entries");
  f.base_command = BaseCommand{cmd[0], cmd[1], cmd[2]};
  const auto& pj = j.at("pose");
  const auto q = pj.at("q").get<std::vector<double>>();
  const auto p = pj.at("p").get<std::vector<double>>();
  if (q.size() != 4 || p.size() != 3) throw FormatError("episode frame: pose must be q[4], p[3]");
  f.base_pose.rotation = UnitQuaternion(q[0], q[1], q[2], q[3]);
  f.base_pose.translation = Eigen::Vector3d(p[0], p[1], p[2]);
  f.camera_refs = j.at("cam").get<std::vector<std::string>>();
  return f;
}

ordered_json parse_line(const std::string& line, const char* what) {
  ordered_json j = ordered_json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw FormatError(std::string("episode: malformed ") + what);
  }
  return j;
}

EpisodeHeader header_from_json(const ordered_json& j) {
  EpisodeHeader h;
  try {
    h.format_version = j.at("format_version").get<int>();
    if (h.format_version != kFormatVersion) {
      std::ostringstream os;
      os << "episode: unsupported format_version " << h.format_version;
      throw FormatError(os.str());
    }
    h.robot_model_name = j.at("robot_model_name").get<std::string>();
    h.source = j.at("source").get<std::string>();
    h.task_label = j.at("task_label").get<std::string>();
    h.created_at = j.at("created_at").get<std::string>();
    h.rate_hz = j.at("rate_hz").get<double>();
    h.frame_count = j.at("frame_count").get<std::size_t>();
  } catch (const ordered_json::exception& e) {
    throw FormatError(std::string("episode header: ") + e.what());
  }
  if (h.source != "teleop" && h.source != "exo") {
    throw FormatError("episode header: unknown source '" + h.source + "'");
  }
  return h;
}

void accumulate(ChannelStats& cs, double v, std::size_t seen_before) {
  if (seen_before == 0) {
    cs.min = cs.max = v;
    cs.mean = v;  // holds the running sum until finalized
  } else {
    cs.min = std::min(cs.min, v);
    cs.max = std::max(cs.max, v);
    cs.mean += v;
  }
}

ordered_json channel_to_json(const ChannelStats& cs) {
  return ordered_json{{"min", cs.min}, {"max", cs.max}, {"mean", cs.mean}};
}

ChannelStats channel_merge(const ChannelStats& a, std::size_t na, const ChannelStats& b,
                           std::size_t nb) {
  if (na == 0) return b;
  if (nb == 0) return a;
  ChannelStats out;
  out.min = std::min(a.min, b.min);
  out.max = std::max(a.max, b.max);
  out.mean = (a.mean * static_cast<double>(na) + b.mean * static_cast<double>(nb)) /
             static_cast<double>(na + nb);
  return out;
}

}  // namespace

double Episode::duration() const {
  if (header.rate_hz > 0.0) {
    return static_cast<double>(header.frame_count) / header.rate_hz;
  }
  if (frames.size() < 2) return 0.0;
  return frames.back().timestamp - frames.front().timestamp;
}

void write_episode(const Episode& episode, const std::filesystem::path& path) {
  check_episode(episode);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  ordered_json hj;
  hj["format_version"] = episode.header.format_version;
  hj["robot_model_name"] = episode.header.robot_model_name;
  hj["source"] = episode.header.source;
  hj["task_label"] = episode.header.task_label;
  hj["created_at"] = episode.header.created_at;
  hj["rate_hz"] = episode.header.rate_hz;
  hj["frame_count"] = episode.header.frame_count;
  out << hj.dump() << "\n";
  for (const WholeBodyFrame& f : episode.frames) {
    out << frame_to_json(f).dump() << "\n";
  }
  if (!out) throw IoError("write failed for " + path.string());
}

Episode read_episode(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw FormatError("episode: empty file " + path.string());

  Episode episode;
  episode.header = header_from_json(parse_line(line, "header"));
  episode.frames.reserve(episode.header.frame_count);
  for (std::size_t i = 0; i < episode.header.frame_count; ++i) {
    if (!std::getline(in, line)) {
      std::ostringstream os;
      os << "episode: truncated file, expected " << episode.header.frame_count
         << " frames but found " << i;
      throw FormatError(os.str());
    }
    try {
      episode.frames.push_back(frame_from_json(parse_line(line, "frame")));
    } catch (const ordered_json::exception& e) {
      throw FormatError(std::string("episode frame: ") + e.what());
    }
  }
  while (std::getline(in, line)) {
    if (!line.empty()) throw FormatError("episode: trailing data after declared frames");
  }
  check_episode(episode);
  return episode;
}

EpisodeHeader read_episode_header(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw FormatError("episode: empty file " + path.string());
  return header_from_json(parse_line(line, "header"));
}

std::uint64_t PortableSampler::next_below(std::uint64_t n) {
  if (n == 0) throw ValidationError("PortableSampler: n must be > 0");
  return engine_() % n;
}

std::vector<std::size_t> PortableSampler::sample_without_replacement(std::size_t n, std::size_t k) {
  if (k > n) throw ValidationError("PortableSampler: k > n");
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(next_below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

namespace {

std::vector<std::filesystem::path> list_episode_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<ManifestEntry> sample_source(const std::filesystem::path& dir,
                                         const std::string& expected_source, std::size_t count,
                                         PortableSampler& sampler) {
  const auto files = list_episode_files(dir);
  if (files.size() < count) {
    std::ostringstream os;
    os << "mix_manifest: requested " << count << " " << expected_source << " episodes but "
       << dir.string() << " holds " << files.size();
    throw ValidationError(os.str());
  }
  const auto chosen = sampler.sample_without_replacement(files.size(), count);
  std::vector<ManifestEntry> entries;
  entries.reserve(count);
  for (const std::size_t i : chosen) {
    const EpisodeHeader h = read_episode_header(files[i]);
    if (h.source != expected_source) {
      throw ValidationError("mix_manifest: " + files[i].string() + " has source '" + h.source +
                            "', expected '" + expected_source + "'");
    }
    ManifestEntry e;
    e.path = files[i].string();
    e.source = h.source;
    e.task_label = h.task_label;
    e.frame_count = h.frame_count;
    e.duration = h.rate_hz > 0.0 ? static_cast<double>(h.frame_count) / h.rate_hz : 0.0;
    entries.push_back(std::move(e));
  }
  return entries;
}

SourceTotals totals_of(std::span<const ManifestEntry> entries, const std::string& source) {
  SourceTotals t;
  for (const ManifestEntry& e : entries) {
    if (e.source != source) continue;
    t.episodes += 1;
    t.frames += e.frame_count;
    t.duration += e.duration;
  }
  return t;
}

}  // namespace

DatasetManifest mix_manifest(const std::filesystem::path& teleop_dir,
                             const std::filesystem::path& exo_dir, std::size_t teleop_n,
                             std::size_t exo_n, std::uint64_t seed) {
  PortableSampler sampler(seed);
  DatasetManifest m;
  m.seed = seed;
  auto teleop_entries = sample_source(teleop_dir, "teleop", teleop_n, sampler);
  auto exo_entries = sample_source(exo_dir, "exo", exo_n, sampler);
  m.episodes.reserve(teleop_n + exo_n);
  for (auto& e : teleop_entries) m.episodes.push_back(std::move(e));
  for (auto& e : exo_entries) m.episodes.push_back(std::move(e));
  m.teleop = totals_of(m.episodes, "teleop");
  m.exo = totals_of(m.episodes, "exo");
  const std::size_t all = m.teleop.episodes + m.exo.episodes;
  m.teleop_fraction = all == 0 ? 0.0 : static_cast<double>(m.teleop.episodes) / static_cast<double>(all);
  return m;
}

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  ordered_json j;
  j["format_version"] = kFormatVersion;
  j["sampler"] = "mt19937_64-fisher-yates-mod";
  j["seed"] = manifest.seed;
  j["episodes"] = ordered_json::array();
  for (const ManifestEntry& e : manifest.episodes) {
    j["episodes"].push_back({{"path", e.path},
                             {"source", e.source},
                             {"task_label", e.task_label},
                             {"frame_count", e.frame_count},
                             {"duration", e.duration}});
  }
  auto totals = [](const SourceTotals& t) {
    return ordered_json{{"episodes", t.episodes}, {"frames", t.frames}, {"duration", t.duration}};
  };
  j["totals"] = ordered_json{{"teleop", totals(manifest.teleop)},
                             {"exo", totals(manifest.exo)},
                             {"teleop_fraction", manifest.teleop_fraction}};
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  ordered_json j = ordered_json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw FormatError("manifest: invalid JSON in " + path.string());
  try {
    DatasetManifest m;
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& ej : j.at("episodes")) {
      ManifestEntry e;
      e.path = ej.at("path").get<std::string>();
      e.source = ej.at("source").get<std::string>();
      e.task_label = ej.at("task_label").get<std::string>();
      e.frame_count = ej.at("frame_count").get<std::size_t>();
      e.duration = ej.at("duration").get<double>();
      m.episodes.push_back(std::move(e));
    }
    m.teleop = totals_of(m.episodes, "teleop");
    m.exo = totals_of(m.episodes, "exo");
    const std::size_t all = m.teleop.episodes + m.exo.episodes;
    m.teleop_fraction =
        all == 0 ? 0.0 : static_cast<double>(m.teleop.episodes) / static_cast<double>(all);
    return m;
  } catch (const ordered_json::exception& e) {
    throw FormatError("manifest " + path.string() + ": " + e.what());
  }
}

void StatsSummary::merge(const StatsSummary& other) {
  if (other.frames == 0 && other.episodes == 0) return;
  if (arm_joints.empty()) arm_joints.assign(other.arm_joints.size(), ChannelStats{});
  if (hand_joints.empty()) hand_joints.assign(other.hand_joints.size(), ChannelStats{});
  if (arm_joints.size() != other.arm_joints.size() ||
      hand_joints.size() != other.hand_joints.size()) {
    throw DimensionError("StatsSummary::merge: joint channel counts differ");
  }
  for (std::size_t i = 0; i < arm_joints.size(); ++i) {
    arm_joints[i] = channel_merge(arm_joints[i], frames, other.arm_joints[i], other.frames);
  }
  for (std::size_t i = 0; i < hand_joints.size(); ++i) {
    hand_joints[i] = channel_merge(hand_joints[i], frames, other.hand_joints[i], other.frames);
  }
  v_x = channel_merge(v_x, frames, other.v_x, other.frames);
  omega_z = channel_merge(omega_z, frames, other.omega_z, other.frames);
  h = channel_merge(h, frames, other.h, other.frames);
  episodes += other.episodes;
  frames += other.frames;
  duration += other.duration;
  if (other.limit_violations) {
    limit_violations = limit_violations.value_or(0) + *other.limit_violations;
    velocity_spikes = velocity_spikes.value_or(0) + *other.velocity_spikes;
    timestamp_gaps = timestamp_gaps.value_or(0) + *other.timestamp_gaps;
  }
}

StatsSummary stats(const Episode& episode, const RobotModel* model,
                   const ValidationThresholds& thresholds) {
  StatsSummary s;
  s.episodes = 1;
  s.frames = episode.frames.size();
  s.duration = episode.duration();
  if (!episode.frames.empty()) {
    const std::size_t n_arm = static_cast<std::size_t>(episode.frames[0].arm_joints.size());
    const std::size_t n_hand = static_cast<std::size_t>(episode.frames[0].hand_joints.size());
    s.arm_joints.assign(n_arm, ChannelStats{});
    s.hand_joints.assign(n_hand, ChannelStats{});
    for (std::size_t i = 0; i < episode.frames.size(); ++i) {
      const WholeBodyFrame& f = episode.frames[i];
      for (std::size_t jx = 0; jx < n_arm; ++jx) {
        accumulate(s.arm_joints[jx], f.arm_joints[static_cast<Eigen::Index>(jx)], i);
      }
      for (std::size_t jx = 0; jx < n_hand; ++jx) {
        accumulate(s.hand_joints[jx], f.hand_joints[static_cast<Eigen::Index>(jx)], i);
      }
      accumulate(s.v_x, f.base_command.v_x, i);
      accumulate(s.omega_z, f.base_command.omega_z, i);
      accumulate(s.h, f.base_command.h, i);
    }
    const double n = static_cast<double>(s.frames);
    for (ChannelStats& cs : s.arm_joints) cs.mean /= n;
    for (ChannelStats& cs : s.hand_joints) cs.mean /= n;
    s.v_x.mean /= n;
    s.omega_z.mean /= n;
    s.h.mean /= n;
  }
  if (model != nullptr) {
    const ValidationReport report = validate(episode.frames, *model, thresholds);
    s.limit_violations = report.limit_violations.size();
    s.velocity_spikes = report.velocity_spikes.size();
    s.timestamp_gaps = report.timestamp_gaps.size();
  }
  return s;
}

StatsSummary stats_for_manifest(const DatasetManifest& manifest, const std::filesystem::path& base,
                                const RobotModel* model, const ValidationThresholds& thresholds) {
  StatsSummary total;
  for (const ManifestEntry& e : manifest.episodes) {
    std::filesystem::path p(e.path);
    if (p.is_relative()) p = base / p;
    total.merge(stats(read_episode(p), model, thresholds));
  }
  return total;
}

std::string to_json(const StatsSummary& summary, int indent) {
  ordered_json j;
  j["episodes"] = summary.episodes;
  j["frames"] = summary.frames;
  j["duration"] = summary.duration;
  j["arm_joints"] = ordered_json::array();
  for (const ChannelStats& cs : summary.arm_joints) j["arm_joints"].push_back(channel_to_json(cs));
  j["hand_joints"] = ordered_json::array();
  for (const ChannelStats& cs : summary.hand_joints) {
    j["hand_joints"].push_back(channel_to_json(cs));
  }
  j["commands"] = ordered_json{{"v_x", channel_to_json(summary.v_x)},
                               {"omega_z", channel_to_json(summary.omega_z)},
                               {"h", channel_to_json(summary.h)}};
  if (summary.limit_violations) {
    j["violations"] = ordered_json{{"limit_violations", *summary.limit_violations},
                                   {"velocity_spikes", *summary.velocity_spikes},
                                   {"timestamp_gaps", *summary.timestamp_gaps}};
  } else {
    j["violations"] = nullptr;
  }
  return j.dump(indent);
}

}  // namespace exo
