#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cvqkd/analysis.hpp"

namespace cvqkd {

enum class Subcommand { keyrate, sweep, tolerance, compare, optimize, mc };

std::string subcommand_name(Subcommand cmd);

struct AxesBlock {
  std::vector<double> distances_km;  // empty = default axis
  std::vector<int> onu_counts;
};

struct ToleranceBlock {
  AxesBlock axes;
  double eps_max = 0.3;
};

struct CompareBlock {
  std::vector<double> fiber_losses_db{4.0, 8.0, 10.0, 12.0};
  std::vector<int> onu_counts{1, 2, 4, 8, 16, 32, 64};
};

struct OptimizeBlock {
  AxesBlock axes;
  Bracket bracket;
};

struct McBlock {
  std::size_t n_samples = 100000;
  std::uint64_t seed = 42;
};

struct OutputConfig {
  std::string csv;
  std::string json;
  std::string plot;
};

// Parsed configuration plus CLI overrides. At most one subcommand block may
// be present; the active command requires its own block (keyrate needs
// none).
struct RunConfig {
  ProtocolParams params;
  std::optional<AxesBlock> sweep;
  std::optional<ToleranceBlock> tolerance;
  std::optional<CompareBlock> compare;
  std::optional<OptimizeBlock> optimize;
  std::optional<McBlock> mc;
  OutputConfig output;
  int threads = 0;  // 0 = CVQKD_THREADS or hardware concurrency

  SweepGrid grid_for(const AxesBlock& axes) const;
};

// INI dialect: [section] headers, key = value pairs, full-line comments
// starting with # or ;. Lists are comma-separated; ranges use lo:hi:step
// inclusive. Unknown sections or keys are errors.
RunConfig parse_config(const std::string& text);

// Canonical INI for the active command: effective params and block values
// with shortest round-trip number formatting, so parse(serialize(c))
// reproduces c bit for bit. Output paths and thread counts are omitted;
// they do not affect results.
std::string serialize_config(const RunConfig& config, Subcommand cmd);

// FNV-1a 64-bit over the canonical INI, as 16 hex digits.
std::string params_hash(const RunConfig& config, Subcommand cmd);

}  // namespace cvqkd
