// cli.hpp: scenario configuration and the bound / verify / phase commands

#pragma once

#include "nphase/io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nphase {

enum ExitCode : int { kExitOk = 0, kExitConfigError = 1, kExitVerificationFailed = 2 };

struct EntropyParams {
  ConjugatePair pair;
  double s;
  double t;
};

struct ScenarioConfig {
  std::string command;   // bound, verify, phase
  std::string scenario;  // see README for the list per command
  std::vector<EntropyParams> params;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> bins;
  std::optional<PhasePartition> edges;
  std::optional<double> delta;
  std::optional<json> state;
  std::vector<json> channels;
  std::size_t trials = 100;
  std::optional<std::uint64_t> seed;
  std::size_t grid = kDefaultGridPoints;
  std::size_t brute_grid = 4096;
  std::size_t remixings = 50;
  std::vector<double> g_values{0.2, 0.5, 0.9};
  double slack_tolerance = 1e-9;
  double lemma_tolerance = 1e-4;
  std::string output_path;
  std::string format = "csv";
};

// Validates a parsed document. Errors name the offending field by JSON pointer.
ScenarioConfig parse_config(const json& doc);

// Reads and parses a file; syntax errors report line and column.
ScenarioConfig load_config(const std::filesystem::path& path);

struct SweepResult {
  std::vector<SweepRow> rows;
  bool failed = false;
};

SweepResult cmd_bound(const ScenarioConfig& cfg);
SweepResult cmd_verify(const ScenarioConfig& cfg);

// Writes phase_density.csv, binned.json and entropies.csv into out_dir.
void cmd_phase(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

// Full command line: nphase [bound|verify|phase] --config PATH [--seed N]
// [--out PATH] [--format csv|json] [--trials N] [--quiet]. Returns the exit
// code.
int run_cli(int argc, char** argv);

}  // namespace nphase
