// Command-line front end: parameter sweeps over the model scenarios with
// CSV/JSONL output, a randomized verifier of the trade-off inequality, and
// finite-statistics (shot-noise) sweeps.  Configs are flat key=value files;
// presets bundle ready-made configurations for the standard figures.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace seqmeas::cli {

struct GridAxis {
  std::string name;  // parameter key, e.g. "alpha_deg"
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;  // number of points; 1 means the single value `start`

  double value_at(int i) const;
};

struct SweepConfig {
  std::string scenario;  // qubit | qutrit | circuit | sagnac | shots
  std::vector<GridAxis> grid;  // row-major nesting in declaration order
  std::map<std::string, std::string> fixed;  // scenario parameters
  std::string output;       // empty = stdout
  std::string format = "csv";  // csv | jsonl
  std::uint64_t seed = 1;
  int jobs = 0;  // 0 = hardware concurrency
};

struct VerifyConfig {
  int dim = 2;  // outcome count, 2..5
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  bool quiet = false;
};

// Parse a key=value config file ('#' comments, blank lines ignored,
// "grid.<param>=start:stop:steps" axes).  Throws std::invalid_argument with
// a line reference on malformed input.
SweepConfig load_sweep_config(const std::string& path);

// Named ready-made sweep configurations; throws std::invalid_argument for
// unknown names.  preset_names lists them in registry order.
SweepConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Run a sweep (model scenarios and the finite-statistics scenario alike),
// writing one row per grid point.  Returns a process exit code.
int run_sweep(const SweepConfig& cfg);

// Random-scenario stress test of the trade-off inequality; prints a summary
// and returns 0, or 3 if any trial produced epsilon + eta < xi_g_max beyond
// rounding (-1e-10), printing the offending instance.
int run_verify(const VerifyConfig& cfg);

// Full argument-vector entry point (what main delegates to): subcommands
// sweep | verify | shots | preset.  Returns the process exit code: 0 ok,
// 1 usage/config error, 2 model error, 3 verify violation.
int cli_main(int argc, const char* const* argv);

}  // namespace seqmeas::cli
