// sweeper.hpp — Cartesian parameter sweeps with deterministic output and the
// figure presets (fig1, fig2a, fig2b, fig3).

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "esd/entanglement.hpp"
#include "esd/model.hpp"

namespace esd {

struct TimeGrid {
    double t_max = 25.0; // in scaled-time units
    int samples = 501;

    std::vector<double> times() const;
};

// Axis lists are swept as a Cartesian product with the order below; the zeta2
// axis doubles as the coupling-ratio axis since zeta1 fixes the time unit.
struct SweepGrid {
    std::vector<double> beta1{0.0};
    std::vector<double> beta2{0.0};
    std::vector<double> gamma{0.0};
    std::vector<double> theta{0.0};
    std::vector<double> phi{0.0};
    std::vector<double> zeta2{1.0};
    double zeta1 = 1.0;
    int n_max = 6;
    TimeGrid time;
    std::string preset; // optional: fig1, fig2a, fig2b, fig3

    void validate() const;
    std::size_t size() const;
    // Mixed-radix decode of a grid index (beta1 major ... zeta2 minor).
    ModelParams point(std::size_t grid_index) const;
};

struct SweepRow {
    double beta1 = 0.0;
    double beta2 = 0.0;
    double zeta1 = 1.0;
    double zeta2 = 1.0;
    double gamma = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    EntanglementRecord record;
};

struct SweepResult {
    std::vector<SweepRow> rows; // grid-major, time-minor
};

// Exhaustive evaluation of the grid. Grid points are evaluated concurrently
// on up to `threads` workers (0 = hardware concurrency); rows are emitted in
// grid order regardless of scheduling. Numerical failures are rethrown
// annotated with the offending grid point.
SweepResult run_sweep(const SweepGrid& grid, unsigned threads = 0);

struct ZeroInterval {
    double begin = 0.0;
    double end = 0.0;
};

// Maximal closed intervals where negativity <= threshold; endpoints linearly
// interpolated between samples. The series must be time-ascending.
std::vector<ZeroInterval>
detect_zero_intervals(const std::vector<std::pair<double, double>>& series,
                      double threshold = 1e-9);

// Figure presets; axis ranges are defaults and may be overridden before
// running. Throws UnknownPreset.
SweepGrid make_preset(const std::string& name);

} // namespace esd
