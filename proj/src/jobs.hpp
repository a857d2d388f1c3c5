#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace plasmon::jobs {

struct JobContext {
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir;  // empty: nothing written by the job itself
};

/// Outcome of one job. `record` is deterministic in (config, seed); wall time is
/// kept out of it.
struct JobResult {
  nlohmann::json record;
  std::string csv;
  std::string table;
  bool passed = true;
  double wall_seconds = 0.0;
  nlohmann::json timing;  // per-stage wall times
};

/// command is one of "spectrum", "perturb", "dn-derivative", "validate".
JobResult run_job(const std::string& command, const nlohmann::json& config, const JobContext& ctx);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& data);

}  // namespace plasmon::jobs
