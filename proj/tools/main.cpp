// thermal-bell: exact thermal-state witnesses for the collective Heisenberg
// model. Subcommands: figure, sweep, threshold, verify. All tabular output is
// CSV with header `axis,value,curve,M,C,D,chsh_max`.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thermal_bell/csv.hpp"
#include "thermal_bell/figures.hpp"
#include "thermal_bell/sweep.hpp"
#include "thermal_bell/verification.hpp"

namespace tb = thermal_bell;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

tb::SweepAxis parse_axis(const std::string& s) {
    if (s == "temperature") return tb::SweepAxis::temperature;
    if (s == "field") return tb::SweepAxis::field;
    throw CLI::ValidationError("--axis", "must be 'temperature' or 'field'");
}

tb::WitnessQuantity parse_quantity(const std::string& s) {
    if (s == "M") return tb::WitnessQuantity::violation_m;
    if (s == "C") return tb::WitnessQuantity::concurrence;
    if (s == "D") return tb::WitnessQuantity::disorder_d;
    if (s == "chsh_max") return tb::WitnessQuantity::chsh_max;
    throw CLI::ValidationError("--quantities", "unknown quantity '" + s + "'");
}

std::vector<tb::WitnessQuantity> parse_quantity_list(const std::string& csv) {
    std::vector<tb::WitnessQuantity> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_quantity(item));
    }
    if (out.empty())
        throw CLI::ValidationError("--quantities", "list must not be empty");
    return out;
}

struct ModelFlags {
    int n = 2;
    double j = 1.0;
    double delta = 1.0;
    double b = 0.0;
    std::optional<double> t; // fixed temperature, required on the field axis
};

void add_model_flags(CLI::App& cmd, ModelFlags& mf) {
    cmd.add_option("--n", mf.n, "number of qubits")->check(CLI::Range(2, 20));
    cmd.add_option("--j", mf.j, "exchange coupling J");
    cmd.add_option("--delta", mf.delta, "anisotropy Delta");
    cmd.add_option("--b", mf.b, "magnetic field B");
    cmd.add_option("--t", [&mf](const CLI::results_t& r) {
        double value = 0.0;
        if (!CLI::detail::lexical_cast(r.at(0), value)) return false;
        mf.t = value;
        return true;
    }, "fixed temperature (field-axis runs only)");
}

tb::ModelParams fixed_params(const ModelFlags& mf, tb::SweepAxis axis) {
    tb::ModelParams p{mf.n, mf.j, mf.delta, mf.b, 1.0};
    if (axis == tb::SweepAxis::field) {
        if (!mf.t)
            throw CLI::ValidationError("--t", "field-axis runs need a fixed temperature");
        if (*mf.t < tb::kMinTemperature)
            throw CLI::ValidationError("--t", "temperature must be >= 1e-3");
        p.inverse_temperature = 1.0 / *mf.t;
    } else if (mf.t) {
        throw CLI::ValidationError("--t", "not meaningful on a temperature axis");
    }
    return p;
}

int run_figure(int id, const std::string& out_path) {
    const auto rows = tb::figure_rows(id);
    tb::emit_csv(rows, out_path);
    std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
    return 0;
}

int run_sweep_cmd(const ModelFlags& mf, const std::string& axis_str, double from,
                  double to, int points, const std::string& quantities,
                  const std::string& out_path) {
    tb::SweepSpec spec;
    spec.axis = parse_axis(axis_str);
    spec.fixed = fixed_params(mf, spec.axis);
    spec.quantities = parse_quantity_list(quantities);
    if (points < 1)
        throw CLI::ValidationError("--points", "need at least one grid point");
    if (points == 1 && from != to)
        throw CLI::ValidationError("--points", "a 1-point grid needs --from == --to");
    spec.grid = points == 1 ? std::vector<double>{from}
                            : tb::linspace(from, to, points);

    const auto pts = tb::run_sweep(spec);
    std::vector<tb::FigureRow> rows;
    rows.reserve(pts.size());
    std::ostringstream curve;
    curve << "N=" << mf.n;
    for (const auto& pt : pts)
        rows.push_back({tb::axis_name(spec.axis), pt.axis_value, curve.str(),
                        pt.report});
    tb::emit_csv(rows, out_path);
    std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
    return 0;
}

int run_threshold(const ModelFlags& mf, const std::string& quantity_str,
                  const std::string& axis_str, double lo, double hi, double tol,
                  double floor, const std::string& out_path) {
    tb::ThresholdQuery q;
    q.quantity = parse_quantity(quantity_str);
    if (q.quantity == tb::WitnessQuantity::chsh_max)
        throw CLI::ValidationError("--quantity", "must be one of M, C, D");
    q.axis = parse_axis(axis_str);
    q.fixed = fixed_params(mf, q.axis);
    q.lo = lo;
    q.hi = hi;
    q.tolerance = tol;
    q.positivity_floor = floor;

    const auto result = tb::find_threshold(q);
    if (result.outcome == tb::ThresholdOutcome::crossing_found) {
        std::printf("%.6f\n", *result.crossing);
        if (!out_path.empty()) {
            const tb::ModelParams at =
                tb::params_for_axis_value({q.axis, {}, q.fixed, {}}, *result.crossing);
            std::vector<tb::FigureRow> rows{{tb::axis_name(q.axis), *result.crossing,
                                             std::string("threshold_") + quantity_str,
                                             tb::evaluate_point(at)}};
            tb::emit_csv(rows, out_path);
        }
    } else if (result.outcome == tb::ThresholdOutcome::never_positive) {
        std::cout << "no-crossing: quantity never positive in bracket\n";
        if (!out_path.empty()) tb::emit_csv({}, out_path);
    } else {
        std::cout << "no-crossing: quantity still positive at upper end\n";
        if (!out_path.empty()) tb::emit_csv({}, out_path);
    }
    return 0;
}

int run_verify(int max_n, std::uint64_t seed) {
    const std::vector<tb::SuiteResult> results = {
        tb::oracle_equivalence_suite(max_n, seed),
        tb::symmetry_suite_run(seed + 1),
        tb::consistency_triangle_suite(seed + 2),
        tb::pure_state_relation_suite(seed + 3),
        tb::threshold_ordering_suite(),
    };
    bool all = true;
    for (const auto& r : results) {
        std::cout << "suite " << r.name << ": " << (r.passed ? "PASS" : "FAIL")
                  << " (" << r.detail << ")\n";
        all = all && r.passed;
    }
    std::cout << (all ? "verification: ALL PASS" : "verification: FAILED") << "\n";
    return all ? 0 : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact thermal-state Bell/entanglement witnesses for the "
                 "collective Heisenberg model"};
    app.require_subcommand(1);

    auto* figure = app.add_subcommand("figure", "write a built-in figure preset as CSV");
    int figure_id = 0;
    std::string figure_out;
    figure->add_option("--id", figure_id, "figure preset id")
        ->required()
        ->check(CLI::Range(1, tb::kNumFigures));
    figure->add_option("--out", figure_out, "output CSV path")->required();

    auto* sweep = app.add_subcommand("sweep", "sweep one axis and write CSV");
    ModelFlags sweep_mf;
    std::string sweep_axis = "temperature";
    double sweep_from = 0.0, sweep_to = 0.0;
    int sweep_points = 0;
    std::string sweep_quantities = "M,C,D";
    std::string sweep_out;
    add_model_flags(*sweep, sweep_mf);
    sweep->add_option("--axis", sweep_axis, "temperature | field");
    sweep->add_option("--from", sweep_from, "grid start")->required();
    sweep->add_option("--to", sweep_to, "grid end")->required();
    sweep->add_option("--points", sweep_points, "grid size")->required();
    sweep->add_option("--quantities", sweep_quantities,
                      "comma list from M,C,D,chsh_max");
    sweep->add_option("--out", sweep_out, "output CSV path")->required();

    auto* threshold = app.add_subcommand(
        "threshold", "locate the last axis value where a quantity is positive");
    ModelFlags thr_mf;
    std::string thr_quantity, thr_axis = "temperature", thr_out;
    double thr_lo = 0.0, thr_hi = 0.0, thr_tol = 1e-6, thr_floor = 0.0;
    add_model_flags(*threshold, thr_mf);
    threshold->add_option("--quantity", thr_quantity, "M | C | D")->required();
    threshold->add_option("--axis", thr_axis, "temperature | field");
    threshold->add_option("--lo", thr_lo, "bracket lower end")->required();
    threshold->add_option("--hi", thr_hi, "bracket upper end")->required();
    threshold->add_option("--tol", thr_tol, "bisection tolerance");
    threshold->add_option("--floor", thr_floor,
                          "positivity floor (figure-level field thresholds)");
    threshold->add_option("--out", thr_out, "optional CSV with the crossing point");

    auto* verify = app.add_subcommand("verify", "run the cross-validation suites");
    int verify_max_n = 8;
    std::uint64_t verify_seed = 42;
    verify->add_option("--max-n", verify_max_n, "largest qubit count")
        ->check(CLI::Range(2, tb::kMaxOracleQubits));
    verify->add_option("--seed", verify_seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*figure) return run_figure(figure_id, figure_out);
        if (*sweep)
            return run_sweep_cmd(sweep_mf, sweep_axis, sweep_from, sweep_to,
                                 sweep_points, sweep_quantities, sweep_out);
        if (*threshold)
            return run_threshold(thr_mf, thr_quantity, thr_axis, thr_lo, thr_hi,
                                 thr_tol, thr_floor, thr_out);
        if (*verify) return run_verify(verify_max_n, verify_seed);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const tb::io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
    return 0;
}
