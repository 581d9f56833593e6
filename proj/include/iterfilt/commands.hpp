#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iterfilt::cli {

/// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitTrend = 3;
inline constexpr int kExitViolations = 4;

/// Everything one run needs. `input` is a CSV/WAV path unless `generator`
/// is set (1 or 2), in which case the signal is synthesized. `length`
/// accepts "analytic", "extrema", or "file:<path>". An unset `xi` resolves
/// to 1.0 for curve-based lengths and 2.0 for the extrema heuristic (both
/// place the target component on the filter's first spectral zero).
struct RunManifest {
    std::string input;
    std::optional<int> generator;
    std::size_t n = 0; ///< 0 = per-example default (10^4 for id 1, 8000 for id 2)

    std::string method = "frif";
    std::string filter = "triangular";
    double delta = 1e-3;
    int max_iter = 500;
    std::optional<double> xi;
    std::string length = "extrema";

    std::optional<double> snr_db;
    std::uint64_t seed = 0;

    std::string out_dir = ".";
};

int cmd_decompose(const RunManifest& manifest);
int cmd_generate(const RunManifest& manifest);
int cmd_benchmark(const std::vector<int>& example_ids, const std::vector<std::string>& methods,
                  const RunManifest& manifest);
int cmd_diagnose(const RunManifest& manifest);

} // namespace iterfilt::cli

namespace iterfilt::log {

enum class Level { error = 0, info = 1, debug = 2 };

/// Threshold from ITERFILT_LOG ({error|info|debug}, default info).
Level threshold();

void error(const std::string& msg);
void info(const std::string& msg);
void debug(const std::string& msg);

} // namespace iterfilt::log
