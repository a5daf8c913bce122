// cli.hpp — config parsing, subcommands, CSV emission and the self-test
// suite behind the command-line tool.
//
// Exit codes: 0 success, 1 self-test failure, 2 config error, 3 numerical
// failure.

#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "esd/numerics.hpp"
#include "esd/sweeper.hpp"

namespace esd::cli {

// Fully validated run configuration. Keys accepted in the config file and as
// --key flags (flags override the file): beta1, beta2, zeta1, zeta2, phi,
// gamma, theta, nmax, tmax, samples, out, preset. The swept keys (beta1,
// beta2, gamma, theta, phi, zeta2) accept comma-separated lists.
struct RunConfig {
    SweepGrid grid;
    std::string out = "-"; // "-" = stdout
    std::string preset;
    std::set<std::string> explicit_keys;
};

// Parses `file_text` (key = value lines, '#' comments) then applies the flag
// list. Unknown keys are hard errors; the diagnostic names the first
// offending key. Throws ConfigError.
RunConfig parse_config(const std::string& file_text, const std::vector<std::string>& flags);

// Serialise a double with 17 significant digits, locale-independent.
std::string format_double(double value);

// Single-trajectory time series as CSV. Requires every swept key to hold a
// single value.
void cmd_evolve(const RunConfig& config, std::ostream& out);

// Cartesian sweep as CSV, grid-major and time-minor.
void cmd_sweep(const RunConfig& config, std::ostream& out, unsigned threads);

// Named preset sweep; same CSV with a leading "preset" column. Preset axis
// defaults may be overridden by explicitly set config keys.
void cmd_figure(const RunConfig& config, std::ostream& out, unsigned threads);

struct SelftestCheck {
    std::string name;
    double tolerance = 0.0;
    double observed = 0.0;
    bool pass = false;
    std::string note;
};

struct SelftestOptions {
    // Scales every tolerance; values below ~1e-3 push the checks under the
    // floating-point noise floor and are expected to fail.
    double tolerance_scale = 1.0;
    // Test seam: applied to the Hamiltonian handed to the series route only.
    Matrix (*perturb_series_hamiltonian)(const Matrix&) = nullptr;
};

// Cross-oracle suite: series vs closed form, full space vs subspace oracle,
// beta2 invariance, X-state shortcut, analytic benchmark. Returns the
// individual check results; overall pass = every check passed.
std::vector<SelftestCheck> run_selftest(const SelftestOptions& options = {});

// Runs the suite and prints one line per check; returns false on any failure.
bool cmd_selftest(std::ostream& out, const SelftestOptions& options = {});

// Entry point used by the binary; maps errors to exit codes.
int app_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace esd::cli
