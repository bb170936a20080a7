#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lnhom/config.hpp"
#include "lnhom/sweep.hpp"

namespace lnhom::cli {

inline constexpr const char* kVersion = "0.3.0";

/// Report builders. Pure functions of (records, config); the JSON they return
/// is what the subcommands write.
nlohmann::json oscillation_report(const std::vector<ObservableRecord>& records,
                                  const ExperimentConfig& config);
nlohmann::json fluctuation_report(const std::vector<ObservableRecord>& records,
                                  const ExperimentConfig& config);
nlohmann::json pathwise_report(const std::vector<ObservableRecord>& records,
                               const ExperimentConfig& config);

/// Deterministic JSON text: fixed key order, numbers in shortest round-trip form.
std::string dump_report(const nlohmann::json& report);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicates;
  std::optional<std::string> out;
  unsigned threads = 0;
};

ExperimentConfig apply(ExperimentConfig config, const Overrides& overrides);

/// Writes one realization (the field used by sweep task (j, r)) as x,g,a CSV.
/// Returns the path written.
std::filesystem::path cmd_sample(const ExperimentConfig& config, int j, std::size_t replicate,
                                 const std::filesystem::path& file = {});

/// Runs the sweep, writes the record tables, the report JSON and the manifest
/// into the output directory, and returns the report.
nlohmann::json cmd_oscillation(const ExperimentConfig& config, unsigned threads = 0);
nlohmann::json cmd_fluctuation(const ExperimentConfig& config, unsigned threads = 0);
nlohmann::json cmd_pathwise(const ExperimentConfig& config, unsigned threads = 0);

/// Recomputes all three reports from an existing records CSV.
nlohmann::json cmd_report(const ExperimentConfig& config, const std::filesystem::path& records);

/// Entry point shared by the executable and the tests. Maps library errors
/// to exit codes: 0 ok, 2 config, 3 numerical, 4 IO.
int run(int argc, const char* const* argv);

}  // namespace lnhom::cli
