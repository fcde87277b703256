#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riotwave/config.hpp"

namespace riotwave {

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::uint64_t bytes = 0;
};

struct RunManifest {
  std::string config_hash;
  std::string tool_version;
  std::vector<ManifestEntry> outputs;
  double wall_ms = 0.0;
  std::vector<std::string> warnings;  // clipping counts, boundary proximity, ...
};

/// Routes the experiment to its owning module and writes all outputs (data
/// CSV/JSON plus gnuplot-ready .dat companions) under out_dir, finishing
/// with manifest.json. Data outputs are bit-identical across reruns of the
/// same config and tool version; only the manifest wall time may differ.
RunManifest dispatch(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace riotwave
