#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thermal_bell/model.hpp"
#include "thermal_bell/parallel.hpp"
#include "thermal_bell/reduced_state.hpp"
#include "thermal_bell/witnesses.hpp"

namespace thermal_bell {

enum class SweepAxis { temperature, field, lambda_over_t };

enum class WitnessQuantity { violation_m, concurrence, disorder_d, chsh_max };

inline const char* axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::temperature: return "temperature";
        case SweepAxis::field: return "field";
        case SweepAxis::lambda_over_t: return "lambda_over_t";
    }
    return "?";
}

inline const char* quantity_name(WitnessQuantity q) {
    switch (q) {
        case WitnessQuantity::violation_m: return "M";
        case WitnessQuantity::concurrence: return "C";
        case WitnessQuantity::disorder_d: return "D";
        case WitnessQuantity::chsh_max: return "chsh_max";
    }
    return "?";
}

inline double quantity_value(const WitnessReport& r, WitnessQuantity q) {
    switch (q) {
        case WitnessQuantity::violation_m: return r.violation_m;
        case WitnessQuantity::concurrence: return r.concurrence;
        case WitnessQuantity::disorder_d: return r.disorder_d;
        case WitnessQuantity::chsh_max: return r.chsh_max;
    }
    return 0.0;
}

constexpr double kMinTemperature = 1e-3;

// Full closed-form pipeline at a single parameter point: sector table ->
// reduced X-state -> witness report.
inline WitnessReport evaluate_point(const ModelParams& params) {
    validate(params);
    const SectorTable table = build_sector_table(params);
    const XStateElements x =
        x_state_from_sector_table(table, params.inverse_temperature);
    return witness_report_from_x(x);
}

// A one-axis sweep. `fixed` carries every parameter except the swept one,
// whose slot is overwritten per grid point. Temperature grids are floored at
// 1e-3 (beta <= 1000 keeps shifted Boltzmann weights exact). On the
// lambda_over_t axis, fixed.coupling holds lambda, the mapping is
// J = B = lambda, Delta = 0, beta = (lambda/T)/lambda.
struct SweepSpec {
    SweepAxis axis = SweepAxis::temperature;
    std::vector<double> grid;
    ModelParams fixed;
    std::vector<WitnessQuantity> quantities = {WitnessQuantity::violation_m,
                                               WitnessQuantity::concurrence,
                                               WitnessQuantity::disorder_d};
};

inline ModelParams params_for_axis_value(const SweepSpec& spec, double value) {
    ModelParams p = spec.fixed;
    switch (spec.axis) {
        case SweepAxis::temperature:
            p.inverse_temperature = 1.0 / value;
            break;
        case SweepAxis::field:
            p.field = value;
            break;
        case SweepAxis::lambda_over_t: {
            const double lambda = spec.fixed.coupling;
            if (lambda == 0.0)
                throw std::invalid_argument("sweep: lambda must be nonzero");
            p.coupling = lambda;
            p.field = lambda;
            p.anisotropy = 0.0;
            p.inverse_temperature = value / lambda;
            break;
        }
    }
    return p;
}

inline void validate_sweep_spec(const SweepSpec& spec) {
    if (spec.grid.empty())
        throw std::invalid_argument("sweep: grid must be non-empty");
    for (std::size_t i = 1; i < spec.grid.size(); ++i)
        if (!(spec.grid[i] > spec.grid[i - 1]))
            throw std::invalid_argument("sweep: grid must be strictly increasing");
    if (spec.axis == SweepAxis::temperature && spec.grid.front() < kMinTemperature)
        throw std::invalid_argument("sweep: temperatures below 1e-3 not supported");
    for (const double v : spec.grid)
        validate(params_for_axis_value(spec, v)); // throws on an invalid mapping
}

struct SweepPoint {
    double axis_value = 0.0;
    WitnessReport report;
};

// Grid points are independent; they are evaluated in parallel and emitted in
// grid order.
inline std::vector<SweepPoint> run_sweep(const SweepSpec& spec) {
    validate_sweep_spec(spec);
    std::vector<SweepPoint> out(spec.grid.size());
    parallel_for(spec.grid.size(), [&](std::size_t i) {
        const double v = spec.grid[i];
        out[i] = {v, evaluate_point(params_for_axis_value(spec, v))};
    });
    return out;
}

// Threshold search: the threshold is the largest axis value at which the
// quantity still exceeds `positivity_floor` (default: plain sign change).
// A 64-point pre-grid locates the last positive -> non-positive cell, which
// bisection then narrows below `tolerance`. Concurrence along a field axis
// decays exponentially without a sign change, so the figure-level field
// thresholds are queried with an explicit small floor; everything on the
// temperature axis uses the exact sign change.
struct ThresholdQuery {
    WitnessQuantity quantity = WitnessQuantity::concurrence;
    SweepAxis axis = SweepAxis::temperature;
    double lo = 0.0;
    double hi = 0.0;
    ModelParams fixed;
    double tolerance = 1e-6;
    double positivity_floor = 0.0;
};

enum class ThresholdOutcome { crossing_found, never_positive, still_positive_at_hi };

struct ThresholdResult {
    ThresholdOutcome outcome = ThresholdOutcome::never_positive;
    std::optional<double> crossing;
};

inline ThresholdResult find_threshold(const ThresholdQuery& q) {
    if (!(q.lo < q.hi))
        throw std::invalid_argument("find_threshold: need lo < hi");
    if (!(q.tolerance > 0.0))
        throw std::invalid_argument("find_threshold: tolerance must be positive");
    if (q.axis == SweepAxis::temperature && q.lo < kMinTemperature)
        throw std::invalid_argument("find_threshold: temperatures below 1e-3");

    SweepSpec probe{q.axis, {}, q.fixed, {q.quantity}};
    auto positive = [&](double x) {
        const WitnessReport r = evaluate_point(params_for_axis_value(probe, x));
        return quantity_value(r, q.quantity) > q.positivity_floor;
    };

    constexpr int kPreGrid = 64;
    std::vector<double> xs(kPreGrid);
    std::vector<char> pos(kPreGrid);
    for (int i = 0; i < kPreGrid; ++i)
        xs[static_cast<std::size_t>(i)] =
            q.lo + (q.hi - q.lo) * i / (kPreGrid - 1);
    parallel_for(kPreGrid, [&](std::size_t i) {
        pos[i] = positive(xs[i]) ? 1 : 0;
    });

    int last_cross = -1;
    bool any_positive = false;
    for (int i = 0; i < kPreGrid; ++i) {
        if (pos[static_cast<std::size_t>(i)]) any_positive = true;
        if (i + 1 < kPreGrid && pos[static_cast<std::size_t>(i)] &&
            !pos[static_cast<std::size_t>(i + 1)])
            last_cross = i;
    }
    if (!any_positive) return {ThresholdOutcome::never_positive, std::nullopt};
    if (pos[kPreGrid - 1])
        return {ThresholdOutcome::still_positive_at_hi, std::nullopt};

    double lo = xs[static_cast<std::size_t>(last_cross)];
    double hi = xs[static_cast<std::size_t>(last_cross + 1)];
    while (hi - lo > q.tolerance) {
        const double mid = 0.5 * (lo + hi);
        (positive(mid) ? lo : hi) = mid;
    }
    return {ThresholdOutcome::crossing_found, 0.5 * (lo + hi)};
}

// Cavity-QED mapping: N qubits dispersively coupled to one mode give the
// effective collective Hamiltonian lambda (Sx^2 + Sy^2 + Sz), i.e. the model
// at Delta = 0 and J = B = lambda with lambda = g^2 / detuning (possibly
// negative).
struct CavityParams {
    double lambda = 0.0;

    static CavityParams from_lambda(double lambda) { return {lambda}; }
    static CavityParams from_coupling(double g, double detuning) {
        if (detuning == 0.0)
            throw std::invalid_argument("CavityParams: detuning must be nonzero");
        return {g * g / detuning};
    }
};

// Sweep over lambda/T. Grid values must share lambda's sign so that
// beta = (lambda/T)/lambda stays positive.
inline std::vector<SweepPoint> cavity_sweep(const CavityParams& cp, int n_qubits,
                                            const std::vector<double>& grid) {
    if (cp.lambda == 0.0)
        throw std::invalid_argument("cavity_sweep: lambda = 0 gives a free model");
    SweepSpec spec;
    spec.axis = SweepAxis::lambda_over_t;
    spec.grid = grid; // negative lambda needs a negative (still increasing) grid
    spec.fixed = ModelParams{n_qubits, cp.lambda, 0.0, cp.lambda, 1.0};
    return run_sweep(spec);
}

} // namespace thermal_bell
