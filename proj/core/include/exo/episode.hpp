#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "exo/robot_model.hpp"
#include "exo/trajectory.hpp"

namespace exo {

/// Episode file header. `source` records how the demonstration was
/// collected: "teleop" (robot teleoperation) or "exo" (worn exoskeleton,
/// no robot). Duration is defined as frame_count / rate_hz so that
/// splitting an episode into parts preserves the total.
struct EpisodeHeader {
  int format_version = 1;
  std::string robot_model_name;
  std::string source;      // "teleop" | "exo"
  std::string task_label;  // free text
  std::string created_at;  // free text, empty unless the producer sets it
  double rate_hz = 0.0;
  std::size_t frame_count = 0;
};

struct Episode {
  EpisodeHeader header;
  std::vector<WholeBodyFrame> frames;

  double duration() const;
};

/// One header JSON line followed by one JSON line per frame, fields in a
/// fixed order, numbers as shortest round-trip decimals. The round trip
/// read(write(e)) == e is exact for every representable double.
void write_episode(const Episode& episode, const std::filesystem::path& path);
Episode read_episode(const std::filesystem::path& path);

/// Reads only the header line (cheap manifest scans).
EpisodeHeader read_episode_header(const std::filesystem::path& path);

/// Seeded sampler pinned to a portable algorithm: std::mt19937_64 (whose
/// output sequence is fixed by the C++ standard) feeding a partial
/// Fisher-Yates shuffle, bounded draws via modulo. Identical seeds give
/// identical samples on every platform.
class PortableSampler {
 public:
  explicit PortableSampler(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_below(std::uint64_t n);

  /// First k entries of a seeded partial shuffle of [0, n).
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

struct ManifestEntry {
  std::string path;
  std::string source;
  std::string task_label;
  std::size_t frame_count = 0;
  double duration = 0.0;
};

struct SourceTotals {
  std::size_t episodes = 0;
  std::size_t frames = 0;
  double duration = 0.0;
};

struct DatasetManifest {
  std::uint64_t seed = 0;
  std::vector<ManifestEntry> episodes;  // teleop entries first, then exo
  SourceTotals teleop;
  SourceTotals exo;
  double teleop_fraction = 0.0;  // teleop episodes / all episodes
};

/// Deterministic seeded sample without replacement: teleop_n episodes from
/// teleop_dir and exo_n from exo_dir (files sorted by path before
/// sampling; headers must carry the matching source tag). Throws
/// ValidationError when a directory holds fewer episodes than requested.
DatasetManifest mix_manifest(const std::filesystem::path& teleop_dir,
                             const std::filesystem::path& exo_dir, std::size_t teleop_n,
                             std::size_t exo_n, std::uint64_t seed);

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);
DatasetManifest load_manifest(const std::filesystem::path& path);

struct ChannelStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct StatsSummary {
  std::size_t episodes = 0;
  std::size_t frames = 0;
  double duration = 0.0;
  std::vector<ChannelStats> arm_joints;   // 14
  std::vector<ChannelStats> hand_joints;  // 12
  ChannelStats v_x, omega_z, h;
  std::optional<std::size_t> limit_violations;  // set when a model was given
  std::optional<std::size_t> velocity_spikes;
  std::optional<std::size_t> timestamp_gaps;

  /// Frame-count-weighted merge; splitting or merging episode files does
  /// not change the result.
  void merge(const StatsSummary& other);
};

/// Exact per-channel min/max/mean over the frames, plus validation counts
/// when a model is supplied.
StatsSummary stats(const Episode& episode, const RobotModel* model = nullptr,
                   const ValidationThresholds& thresholds = {});

/// Aggregates stats over every episode listed in a manifest. Paths are
/// resolved relative to `base` when not absolute.
StatsSummary stats_for_manifest(const DatasetManifest& manifest, const std::filesystem::path& base,
                                const RobotModel* model = nullptr,
                                const ValidationThresholds& thresholds = {});

std::string to_json(const StatsSummary& summary, int indent = 2);

}  // namespace exo
