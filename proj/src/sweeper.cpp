#include "esd/sweeper.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "esd/evolution.hpp"

namespace esd {

std::vector<double> TimeGrid::times() const {
    if (samples < 1)
        throw InvalidState("TimeGrid: samples must be >= 1");
    if (!(t_max > 0.0))
        throw InvalidState("TimeGrid: t_max must be > 0");
    if (samples == 1) return {0.0};
    std::vector<double> ts(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
        ts[static_cast<std::size_t>(i)] =
            t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
    return ts;
}

void SweepGrid::validate() const {
    const auto check_axis = [](const std::vector<double>& axis, const char* name) {
        if (axis.empty())
            throw InvalidState(std::string("SweepGrid: axis ") + name + " is empty");
    };
    check_axis(beta1, "beta1");
    check_axis(beta2, "beta2");
    check_axis(gamma, "gamma");
    check_axis(theta, "theta");
    check_axis(phi, "phi");
    check_axis(zeta2, "zeta2");
    if (time.samples < 1)
        throw InvalidState("SweepGrid: sample count must be >= 1");
    if (!(time.t_max > 0.0))
        throw InvalidState("SweepGrid: t_max must be > 0");
}

std::size_t SweepGrid::size() const {
    return beta1.size() * beta2.size() * gamma.size() * theta.size() * phi.size() *
           zeta2.size();
}

ModelParams SweepGrid::point(std::size_t grid_index) const {
    std::size_t rest = grid_index;
    const std::size_t i_z = rest % zeta2.size(); rest /= zeta2.size();
    const std::size_t i_p = rest % phi.size();   rest /= phi.size();
    const std::size_t i_t = rest % theta.size(); rest /= theta.size();
    const std::size_t i_g = rest % gamma.size(); rest /= gamma.size();
    const std::size_t i_b2 = rest % beta2.size(); rest /= beta2.size();
    const std::size_t i_b1 = rest;

    ModelParams p;
    p.beta1 = beta1[i_b1];
    p.beta2 = beta2[i_b2];
    p.gamma = gamma[i_g];
    p.theta = theta[i_t];
    p.phi = phi[i_p];
    p.zeta1 = zeta1;
    p.zeta2 = zeta2[i_z];
    p.n_max = n_max;
    return p;
}

SweepResult run_sweep(const SweepGrid& grid, unsigned threads) {
    grid.validate();
    const std::size_t n_points = grid.size();
    const std::vector<double> ts = grid.time.times();

    std::vector<std::vector<EntanglementRecord>> per_point(n_points);
    std::vector<std::exception_ptr> failures(n_points);

    unsigned n_workers = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (n_workers == 0) n_workers = 1;
    n_workers = static_cast<unsigned>(
        std::min<std::size_t>(n_workers, std::max<std::size_t>(n_points, 1)));

    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_points) return;
            try {
                per_point[i] = evolve_series(grid.point(i), ts);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    for (std::size_t i = 0; i < n_points; ++i) {
        if (!failures[i]) continue;
        const ModelParams p = grid.point(i);
        std::ostringstream where;
        where << "grid point " << i << " (beta1=" << p.beta1 << ", beta2=" << p.beta2
              << ", gamma=" << p.gamma << ", theta=" << p.theta << ", phi=" << p.phi
              << ", zeta2=" << p.zeta2 << "): ";
        try {
            std::rethrow_exception(failures[i]);
        } catch (const std::exception& e) {
            throw NumericalFailure(where.str() + e.what());
        }
    }

    SweepResult result;
    result.rows.reserve(n_points * ts.size());
    for (std::size_t i = 0; i < n_points; ++i) {
        const ModelParams p = grid.point(i);
        for (const EntanglementRecord& rec : per_point[i]) {
            SweepRow row;
            row.beta1 = p.beta1;
            row.beta2 = p.beta2;
            row.zeta1 = p.zeta1;
            row.zeta2 = p.zeta2;
            row.gamma = p.gamma;
            row.theta = p.theta;
            row.phi = p.phi;
            row.record = rec;
            result.rows.push_back(row);
        }
    }
    return result;
}

std::vector<ZeroInterval>
detect_zero_intervals(const std::vector<std::pair<double, double>>& series,
                      double threshold) {
    if (series.empty())
        throw EmptySeries("detect_zero_intervals: empty series");
    if (!(threshold > 0.0))
        throw InvalidState("detect_zero_intervals: threshold must be > 0");
    for (std::size_t i = 1; i < series.size(); ++i)
        if (series[i].first < series[i - 1].first)
            throw InvalidState("detect_zero_intervals: series must be time-ascending");

    const auto cross = [threshold](const std::pair<double, double>& lo,
                                   const std::pair<double, double>& hi) {
        // linear interpolation of the threshold crossing between two samples
        const double f = (threshold - lo.second) / (hi.second - lo.second);
        return lo.first + f * (hi.first - lo.first);
    };

    std::vector<ZeroInterval> intervals;
    bool inside = series.front().second <= threshold;
    double begin = series.front().first;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const bool below = series[i].second <= threshold;
        if (!inside && below) {
            begin = cross(series[i - 1], series[i]);
            inside = true;
        } else if (inside && !below) {
            intervals.push_back({begin, cross(series[i], series[i - 1])});
            inside = false;
        }
    }
    if (inside) intervals.push_back({begin, series.back().first});
    return intervals;
}

SweepGrid make_preset(const std::string& name) {
    SweepGrid grid;
    grid.preset = name;
    if (name == "fig1") {
        grid.theta = {0.0};
        grid.gamma = {0.0};
        grid.beta1.clear();
        for (int i = 0; i <= 40; ++i) grid.beta1.push_back(0.5 * i);
    } else if (name == "fig2a" || name == "fig2b") {
        grid.theta = {name == "fig2a" ? std::acos(-1.0) / 2.0 : std::acos(-1.0) / 4.0};
        grid.gamma = {0.0};
        grid.beta1 = {2.0, 5.0, 15.0};
    } else if (name == "fig3") {
        grid.theta = {std::acos(-1.0) / 2.0};
        grid.beta1 = {1.0};
        grid.beta2 = {1.0};
        grid.gamma = {0.01, 0.1, 0.7};
    } else {
        throw UnknownPreset("unknown preset '" + name + "'");
    }
    return grid;
}

} // namespace esd
