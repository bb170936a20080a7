#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lnhom/sweep.hpp"

namespace lnhom {

/// Experiment description read from an INI file:
///
///   [model]     family, sigma0, ell, beta
///   [functions] f, g, psi            ("poly:c0,c1,..." or "sin:freq,amp")
///   [sweep]     eps_exponents, replicates, base_seed, probe
///   [grid]      points_per_corrlen
///   [sampler]   psd_tolerance, max_pad_factor
///   [output]    directory, formats ("csv", "jsonl" or both), runtime
///
/// Every key is optional; missing keys keep the SweepConfig defaults.
struct ExperimentConfig {
  SweepConfig sweep;
  std::string output_directory = "results";
  std::vector<std::string> formats{"csv", "jsonl"};
  bool record_runtime = false;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws Config on syntax errors, unknown sections or keys, and values
/// outside their ranges.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// INI text that parses back to an equal config.
std::string serialize_config(const ExperimentConfig& config);

void validate(const ExperimentConfig& config);

/// 64-bit FNV-1a of the serialized config, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

}  // namespace lnhom
