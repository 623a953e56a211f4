#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "thermal_bell/sweep.hpp"

namespace thermal_bell {

inline std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) throw std::invalid_argument("linspace: need at least 1 point");
    if (points == 1) return {lo};
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    return g;
}

inline std::vector<double> logspace(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("logspace: need 0 < lo < hi");
    if (points == 1) return {lo};
    std::vector<double> g(static_cast<std::size_t>(points));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < points; ++i)
        g[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (points - 1));
    return g;
}

struct FigureRow {
    std::string axis;
    double value = 0.0;
    std::string curve;
    WitnessReport report;
};

namespace detail {
inline std::string compact_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}
} // namespace detail

// Default temperature grid for the figure presets: 200 log-spaced points from
// 1e-3 * max(1, |J|) to 5 * max(1, |J|), which resolves every threshold kink
// at plotting scale.
inline std::vector<double> preset_temperature_grid(double j) {
    const double scale = std::max(1.0, std::abs(j));
    return logspace(1e-3 * scale, 5.0 * scale, 200);
}

constexpr int kNumFigures = 5;

// Built-in parameter sets:
//   1: M and C vs T at N=2, J=Delta=1, B in {0, 1, 2, 2.5}
//   2: M and C vs T at J=-1, B=Delta=0, N in {2, 3, 5}
//   3: M and C vs B at J=-1, Delta=0, T=0.05, N in {2, 3, 6}
//   4: M, C and D vs T at J=-1, B=Delta=0, N in {2, 3}
//   5: M, C and D vs lambda/T for the cavity mapping, N in {2, 3}, lambda=1
inline std::vector<FigureRow> figure_rows(int figure_id) {
    std::vector<FigureRow> rows;
    auto append = [&rows](const SweepSpec& spec, const std::string& curve) {
        for (const auto& pt : run_sweep(spec))
            rows.push_back({axis_name(spec.axis), pt.axis_value, curve, pt.report});
    };

    switch (figure_id) {
        case 1: {
            for (const double b : {0.0, 1.0, 2.0, 2.5}) {
                SweepSpec spec;
                spec.axis = SweepAxis::temperature;
                spec.grid = preset_temperature_grid(1.0);
                spec.fixed = ModelParams{2, 1.0, 1.0, b, 1.0};
                append(spec, "B=" + detail::compact_number(b));
            }
            break;
        }
        case 2: {
            for (const int n : {2, 3, 5}) {
                SweepSpec spec;
                spec.axis = SweepAxis::temperature;
                spec.grid = preset_temperature_grid(-1.0);
                spec.fixed = ModelParams{n, -1.0, 0.0, 0.0, 1.0};
                append(spec, "N=" + std::to_string(n));
            }
            break;
        }
        case 3: {
            for (const int n : {2, 3, 6}) {
                SweepSpec spec;
                spec.axis = SweepAxis::field;
                spec.grid = linspace(0.0, 6.0, 200);
                spec.fixed = ModelParams{n, -1.0, 0.0, 0.0, 1.0 / 0.05};
                append(spec, "N=" + std::to_string(n));
            }
            break;
        }
        case 4: {
            for (const int n : {2, 3}) {
                SweepSpec spec;
                spec.axis = SweepAxis::temperature;
                spec.grid = preset_temperature_grid(-1.0);
                spec.fixed = ModelParams{n, -1.0, 0.0, 0.0, 1.0};
                append(spec, "N=" + std::to_string(n));
            }
            break;
        }
        case 5: {
            // lambda/T = 0 itself would mean infinite temperature; the grid
            // starts just above it
            for (const int n : {2, 3}) {
                for (const auto& pt :
                     cavity_sweep(CavityParams::from_lambda(1.0), n,
                                  linspace(0.05, 10.0, 200)))
                    rows.push_back({axis_name(SweepAxis::lambda_over_t),
                                    pt.axis_value, "N=" + std::to_string(n),
                                    pt.report});
            }
            break;
        }
        default:
            throw std::invalid_argument("figure_rows: figure id must be 1..5");
    }
    return rows;
}

} // namespace thermal_bell
