#pragma once

#include "qball/config.hpp"

#include <string>

namespace qball {

// Process exit codes shared by the CLI and the test harness.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCollapse = 3;
inline constexpr int kExitNoConvergence = 4;
inline constexpr int kExitCertificateFailed = 5;
inline constexpr int kExitNumericAbort = 6;

// Each runner reads the parsed config, writes its artifacts (CSV/JSON plus a
// manifest.json recording the config hash, grid, and version) under out_dir,
// and returns an exit code.  Numeric payloads are deterministic; manifests may
// differ in timestamp only.
int run_check_potential(const Config& cfg, const std::string& out_dir);
int run_solve(const Config& cfg, const std::string& out_dir);
int run_sweep(const Config& cfg, const std::string& out_dir);
int run_certify(const Config& cfg, const std::string& out_dir, int threads);
int run_evolve(const Config& cfg, const std::string& out_dir);
int run_stability(const Config& cfg, const std::string& out_dir);

// Maps a thrown error to the exit-code contract above (used by the CLI).
int dispatch(const std::string& command, const Config& cfg, const std::string& out_dir,
             int threads);

} // namespace qball
