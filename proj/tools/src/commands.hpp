#pragma once

#include <ostream>
#include <string>

#include "runspec.hpp"

namespace detumble::cli {

// Stable exit codes, shared by the command functions and the binary.
inline constexpr int kExitOk = 0;            ///< success / entry recommended
inline constexpr int kExitConfig = 1;        ///< configuration or validation error
inline constexpr int kExitNumerical = 2;     ///< numerical abort mid-run
inline constexpr int kExitEntryRefused = 3;  ///< check: entry not recommended

/// Closed-loop run: telemetry CSV to out_csv, human summary to log.
/// On a numerical abort the partial CSV is flushed with a trailing
/// "# abort: ..." marker row and the exit code is kExitNumerical.
int cmd_simulate(const RunSpec& spec, const std::string& out_csv, std::ostream& log);

/// 1D or 2D parameter sweep, long-format CSV with deterministic row order.
int cmd_sweep(const RunSpec& spec, const std::string& out_csv, int threads,
              std::ostream& log);

/// Pre-flight entry gate. Text report to log; JSON written to out_json when
/// nonempty. Returns kExitOk or kExitEntryRefused.
int cmd_check(const RunSpec& spec, const std::string& out_json, std::ostream& log);

/// Sampled phase-portrait CSV (omega_z, omega_z_dot) plus a companion
/// equilibria CSV at equilibria_path(out_csv).
int cmd_portrait(const RunSpec& spec, const std::string& out_csv, std::ostream& log);

/// "dir/name.csv" -> "dir/name_equilibria.csv"
std::string equilibria_path(const std::string& out_csv);

/// Full command-line front end (simulate | sweep | check | portrait).
int run_cli(int argc, const char* const* argv);

} // namespace detumble::cli
