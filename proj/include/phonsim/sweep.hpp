#ifndef PHONSIM_SWEEP_HPP
#define PHONSIM_SWEEP_HPP

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "phonsim/lindblad.hpp"
#include "phonsim/params.hpp"
#include "phonsim/statistics.hpp"

// Parameter-sweep engine: 1- or 2-axis grids, optional dual-direction
// scans, deterministic ordering regardless of worker count.

namespace phonsim {

enum class AxisParam { DriveDetuning, NonlinearityU, RotationOmega, DriveAmp };

inline const char* to_string(AxisParam a) {
    switch (a) {
        case AxisParam::DriveDetuning: return "drive_detuning";
        case AxisParam::NonlinearityU: return "nonlinearity_u";
        case AxisParam::RotationOmega: return "rotation_omega";
        default: return "drive_amp";
    }
}

inline AxisParam axis_param_from_string(std::string_view s) {
    if (s == "drive_detuning") return AxisParam::DriveDetuning;
    if (s == "nonlinearity_u") return AxisParam::NonlinearityU;
    if (s == "rotation_omega") return AxisParam::RotationOmega;
    if (s == "drive_amp") return AxisParam::DriveAmp;
    throw std::invalid_argument("unknown sweep axis: " + std::string(s));
}

struct Axis {
    AxisParam param = AxisParam::DriveDetuning;
    double start = 0.0;
    double stop = 0.0;
    int num_points = 0;

    double value_at(int i) const {
        return start + (stop - start) * i / (num_points - 1);
    }
};

enum class DirectionMode { LeftOnly, RightOnly, Both };

struct TruncationPolicy {
    int start_dim = 10;
    double tol = 1e-8;
    int hard_cap = 60;
};

struct SweepSpec {
    SystemParams base;
    std::vector<Axis> axes;  // 1 or 2
    DirectionMode directions = DirectionMode::LeftOnly;
    TruncationPolicy truncation;
};

inline void validate(const SweepSpec& spec) {
    validate(spec.base);
    if (spec.axes.empty() || spec.axes.size() > 2)
        throw std::invalid_argument("sweep needs 1 or 2 axes");
    for (const Axis& ax : spec.axes) {
        if (ax.num_points < 2)
            throw std::invalid_argument("axis needs at least 2 points");
        if (!(ax.start < ax.stop))
            throw std::invalid_argument("axis start must be below stop");
    }
    if (spec.axes.size() == 2 && spec.axes[0].param == spec.axes[1].param)
        throw std::invalid_argument("sweep axes must be distinct parameters");
}

struct PointResult {
    double axis1 = 0.0;
    double axis2 = std::numeric_limits<double>::quiet_NaN();
    DriveDirection direction = DriveDirection::LeftPort;
    bool ok = false;
    std::string error;
    PhononStats stats;
    Classification cls;
    int n_trunc = 0;
    double residual = 0.0;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<PointResult> points;  // grid order: axis1, axis2, direction
};

namespace detail {
inline void set_axis(SystemParams& p, AxisParam which, double value) {
    switch (which) {
        case AxisParam::DriveDetuning: p.drive_detuning = value; break;
        case AxisParam::NonlinearityU: p.nonlinearity_u = value; break;
        case AxisParam::RotationOmega: p.rotation_omega = value; break;
        case AxisParam::DriveAmp: p.drive_amp = value; break;
    }
}
}  // namespace detail

inline PointResult solve_point(const SystemParams& p,
                               const TruncationPolicy& trunc) {
    PointResult res;
    res.direction = p.direction;
    try {
        ConvergedSolution sol =
            solve_converged(p, trunc.start_dim, trunc.tol, trunc.hard_cap);
        res.stats = certified_stats(sol.rho, sol.rho_check);
        res.cls = classify(res.stats);
        res.n_trunc = sol.dim;
        res.residual = sol.residual;
        res.ok = true;
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    return res;
}

inline SweepResult run_sweep(const SweepSpec& spec, int workers = 0) {
    validate(spec);
    if (workers <= 0)
        workers = std::max(1u, std::thread::hardware_concurrency());

    std::vector<DriveDirection> dirs;
    if (spec.directions != DirectionMode::RightOnly)
        dirs.push_back(DriveDirection::LeftPort);
    if (spec.directions != DirectionMode::LeftOnly)
        dirs.push_back(DriveDirection::RightPort);

    const Axis& ax1 = spec.axes[0];
    const bool two_d = spec.axes.size() == 2;
    const int n2 = two_d ? spec.axes[1].num_points : 1;
    const std::size_t total =
        static_cast<std::size_t>(ax1.num_points) * n2 * dirs.size();

    SweepResult result;
    result.spec = spec;
    result.points.resize(total);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t idx = next.fetch_add(1); idx < total;
             idx = next.fetch_add(1)) {
            const std::size_t di = idx % dirs.size();
            const std::size_t gi = idx / dirs.size();
            const int i2 = static_cast<int>(gi % n2);
            const int i1 = static_cast<int>(gi / n2);

            SystemParams p = spec.base;
            p.direction = dirs[di];
            detail::set_axis(p, ax1.param, ax1.value_at(i1));
            if (two_d)
                detail::set_axis(p, spec.axes[1].param,
                                 spec.axes[1].value_at(i2));

            PointResult point = solve_point(p, spec.truncation);
            point.axis1 = ax1.value_at(i1);
            if (two_d) point.axis2 = spec.axes[1].value_at(i2);
            result.points[idx] = std::move(point);
        }
    };

    std::vector<std::thread> pool;
    const int nthreads = std::min<std::size_t>(workers, total);
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return result;
}

// Canonical sweep specs for the reference scans. Grid ranges follow the
// library defaults (detuning in [-40, 80], U in [0, 40], gamma units);
// the rotating recipes put the rotation-induced shift at 10 gamma.
inline SweepSpec figure_recipe(std::string_view name) {
    SweepSpec spec;
    spec.base.nonlinearity_u = 20.0;
    spec.base.chirality_mag = 0.12;

    const Axis detuning_axis{AxisParam::DriveDetuning, -40.0, 80.0, 241};
    const Axis u_axis{AxisParam::NonlinearityU, 0.0, 40.0, 161};
    const double rot_for_10g = 10.0 / spec.base.chirality_mag;

    if (name == "fig2a" || name == "fig2b" || name == "fig2c" ||
        name == "fig2d") {
        spec.base.drive_amp = name == "fig2a"   ? 0.33
                              : name == "fig2b" ? 1.0
                              : name == "fig2c" ? 3.0
                                                : 5.0;
        spec.base.nonlinearity_u = 0.0;
        spec.axes = {u_axis, detuning_axis};
    } else if (name == "fig3a" || name == "fig4a") {
        spec.base.drive_amp = name == "fig3a" ? 0.33 : 3.0;
        spec.axes = {detuning_axis};
    } else if (name == "fig5a" || name == "fig5b") {
        spec.base.drive_amp = 0.33;
        spec.base.rotation_omega = rot_for_10g;
        spec.axes = {detuning_axis};
        spec.directions = name == "fig5a" ? DirectionMode::RightOnly
                                          : DirectionMode::LeftOnly;
    } else if (name == "fig6a") {
        spec.base.drive_amp = 0.33;
        spec.base.rotation_omega = rot_for_10g;
        spec.axes = {Axis{AxisParam::DriveDetuning, -10.0, 40.0, 101}};
        spec.directions = DirectionMode::Both;
    } else if (name == "fig7") {
        spec.base.drive_amp = 3.0;
        spec.base.rotation_omega = rot_for_10g;
        spec.axes = {Axis{AxisParam::DriveDetuning, -10.0, 50.0, 121}};
        spec.directions = DirectionMode::Both;
    } else {
        throw std::invalid_argument("unknown figure recipe: " +
                                    std::string(name));
    }
    return spec;
}

}  // namespace phonsim

#endif
