#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "posred/optimizer/algorithm.hpp"
#include "posred/sysmodel/h2.hpp"

namespace posred::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitSolver = 3;

struct RunConfig {
  std::string system_dir;
  /// Defaults to partition.json inside system_dir.
  std::string partition_path;
  std::string out_dir;
  optimizer::AlgoConfig algo;
  /// nullopt selects the automatic shift.
  std::optional<double> alpha;
  std::uint64_t seed = 0;
};

/// Reads a JSON object whose keys mirror the reduce flags:
/// system, partition, out, c, c1, c2, epsilon, gamma, max_iters, stat_tol,
/// trace, adaptive, alpha ("auto" or a number), seed. Unknown keys are
/// rejected.
RunConfig run_config_from_json(const std::string& text);
RunConfig load_run_config(const std::string& path);

int cmd_generate(const std::string& kind, numkit::Index k, const std::string& out_dir,
                 std::ostream& out, std::ostream& err);
int cmd_reduce(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_evaluate(const std::string& full_dir, const std::string& reduced_dir, std::ostream& out,
                 std::ostream& err, const sysmodel::H2Options& options = {});
int cmd_trace_plotdata(const std::string& trace_csv, const std::string& out_csv,
                       std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace posred::cli
