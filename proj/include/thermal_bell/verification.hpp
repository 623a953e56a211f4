#pragma once

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "thermal_bell/closed_form_n2.hpp"
#include "thermal_bell/oracle.hpp"
#include "thermal_bell/parallel.hpp"
#include "thermal_bell/random.hpp"
#include "thermal_bell/sweep.hpp"

namespace thermal_bell {

struct SuiteResult {
    std::string name;
    bool passed = false;
    double worst_error = 0.0;
    std::string detail;
};

namespace detail {

struct DrawnParams {
    int n = 2;
    double j = 0.0, delta = 0.0, b = 0.0, beta = 1.0;
};

inline DrawnParams draw_params(Rng& rng, int n) {
    DrawnParams d;
    d.n = n;
    d.j = rng.uniform(-3.0, 3.0);
    d.delta = rng.uniform(-2.0, 2.0);
    d.b = rng.uniform(-3.0, 3.0);
    d.beta = rng.uniform(0.1, 30.0);
    return d;
}

inline double generic_disorder(const DensityMatrix4& rho) {
    return von_neumann_entropy(single_qubit_reduction(rho)) -
           von_neumann_entropy(rho);
}

} // namespace detail

// Closed-form pipeline against the full-Hilbert-space oracle: collective
// moments, the reduced density matrix entrywise, and M / C / D against the
// generic Horodecki / Wootters / entropy routes, for every qubit count up to
// max_n with `draws` seeded parameter draws each.
inline SuiteResult oracle_equivalence_suite(int max_n, std::uint64_t seed,
                                            int draws = 30) {
    SuiteResult res;
    res.name = "oracle-equivalence";
    if (max_n < 2 || max_n > kMaxOracleQubits)
        throw std::invalid_argument("oracle_equivalence_suite: max_n must be 2..12");

    double worst_moment = 0.0, worst_entry = 0.0, worst_witness = 0.0;
    for (int n = 2; n <= max_n; ++n) {
        Rng rng(seed + static_cast<std::uint64_t>(n));
        std::vector<detail::DrawnParams> batch;
        batch.reserve(static_cast<std::size_t>(draws));
        for (int d = 0; d < draws; ++d) batch.push_back(detail::draw_params(rng, n));

        const Eigen::VectorXd mz = collective_sz_values(n);
        const Eigen::MatrixXd transverse = collective_transverse_matrix(n);

        std::vector<double> err_moment(batch.size(), 0.0);
        std::vector<double> err_entry(batch.size(), 0.0);
        std::vector<double> err_witness(batch.size(), 0.0);

        parallel_for(batch.size(), [&](std::size_t i) {
            const auto& d = batch[i];
            const ModelParams p{d.n, d.j, d.delta, d.b, d.beta};
            const SectorTable table = build_sector_table(p);
            const auto [sz, sz2] = expectation_sz_moments(table, d.beta);
            const double trans = expectation_transverse(table, d.beta);
            const XStateElements x = x_state_from_sector_table(table, d.beta);

            const FullHamiltonian h = build_full_hamiltonian(p);
            const Eigen::MatrixXd rho = thermal_state(h, d.beta);

            const double sz_o = rho.diagonal().dot(mz);
            const double sz2_o = rho.diagonal().dot(mz.cwiseProduct(mz));
            const double trans_o = rho.cwiseProduct(transverse).sum();
            err_moment[i] = std::max({std::abs(sz - sz_o), std::abs(sz2 - sz2_o),
                                      std::abs(trans - trans_o)});

            const DensityMatrix4 pair = partial_trace_to_pair(rho, d.n, 0, 1);
            const DensityMatrix4 closed = to_density_matrix(x);
            err_entry[i] = (pair - closed).cwiseAbs().maxCoeff();

            const auto hv = horodecki_violation(correlation_matrix(pair));
            const double m_gen = hv.u + hv.u_tilde - 1.0;
            const double c_gen = concurrence_wootters(pair);
            const double d_gen = detail::generic_disorder(pair);
            err_witness[i] = std::max(
                {std::abs(violation_measure_from_x(x) - m_gen),
                 std::abs(concurrence_from_x(x) - c_gen),
                 std::abs(disorder_measure(x) - d_gen)});
        });
        for (std::size_t i = 0; i < batch.size(); ++i) {
            worst_moment = std::max(worst_moment, err_moment[i]);
            worst_entry = std::max(worst_entry, err_entry[i]);
            worst_witness = std::max(worst_witness, err_witness[i]);
        }
    }

    res.worst_error = std::max({worst_moment, worst_entry, worst_witness});
    res.passed = worst_moment <= 1e-10 && worst_entry <= 1e-10 &&
                 worst_witness <= 1e-10;
    std::ostringstream os;
    os << "moments " << worst_moment << ", reduced-matrix entries " << worst_entry
       << ", witnesses " << worst_witness << " (tolerance 1e-10)";
    res.detail = os.str();
    return res;
}

// N=2 closed-form sign-change identities over seeded draws plus the
// field-flip identity through the general pipeline for N up to
// pipeline_max_n. The (J, Delta) sign flip beyond N=2 is reported only.
inline SuiteResult symmetry_suite_run(std::uint64_t seed, int draws = 1000,
                                      int pipeline_max_n = 8) {
    SuiteResult res;
    res.name = "symmetry";
    Rng rng(seed);
    double worst = 0.0, exploratory = 0.0;
    for (int d = 0; d < draws; ++d) {
        const double j = rng.uniform(-3.0, 3.0);
        const double delta = rng.uniform(-2.0, 2.0);
        const double b = rng.uniform(-3.0, 3.0);
        const double beta = rng.uniform(0.05, 20.0);
        const int max_n = (d % 100 == 0) ? pipeline_max_n : 2;
        const auto rep = symmetry_suite(j, delta, beta, b, max_n);
        worst = std::max({worst, rep.dev_jd_flip_m, rep.dev_jd_flip_c,
                          rep.dev_b_flip_m, rep.dev_b_flip_c,
                          rep.dev_pipeline_b_flip});
        exploratory = std::max(exploratory, rep.dev_pipeline_jd_flip);
    }
    res.worst_error = worst;
    res.passed = worst <= 1e-12;
    std::ostringstream os;
    os << "identities " << worst << " (tolerance 1e-12); exploratory (J,Delta)"
       << " flip for N>2 deviates by up to " << exploratory
       << " (reported, not asserted)";
    res.detail = os.str();
    return res;
}

// Closed-form witnesses against the generic routes on random thermal points,
// plus the witness implications and value ranges.
inline SuiteResult consistency_triangle_suite(std::uint64_t seed,
                                              int draws = 200) {
    SuiteResult res;
    res.name = "consistency-triangle";
    Rng rng(seed);
    double worst_tight = 0.0; // 1e-12 family
    double worst_loose = 0.0; // 1e-10 family
    bool implications = true, ranges = true;
    const double chsh_cap = 2.0 * std::numbers::sqrt2 + 1e-12;

    for (int d = 0; d < draws; ++d) {
        const auto dp = detail::draw_params(rng, rng.uniform_int(2, 8));
        const ModelParams p{dp.n, dp.j, dp.delta, dp.b, dp.beta};
        const SectorTable table = build_sector_table(p);
        const XStateElements x = x_state_from_sector_table(table, dp.beta);
        const WitnessReport rep = witness_report_from_x(x);
        const DensityMatrix4 rho = to_density_matrix(x);

        const auto hv = horodecki_violation(correlation_matrix(rho));
        const double m_from_chsh = 0.25 * hv.chsh_max * hv.chsh_max - 1.0;
        worst_tight = std::max(worst_tight,
                               std::abs(rep.violation_m - m_from_chsh));
        worst_tight = std::max(
            worst_tight, std::abs(rep.violation_m - (rep.u + rep.u_tilde - 1.0)));
        worst_tight = std::max(worst_tight,
                               std::abs(rep.disorder_d - detail::generic_disorder(rho)));
        worst_loose = std::max(worst_loose,
                               std::abs(rep.concurrence - concurrence_wootters(rho)));

        if (rep.violation_m > 0.0 && !(rep.concurrence > 0.0)) implications = false;
        if (rep.disorder_d > 0.0 && !(rep.concurrence > 0.0)) implications = false;
        if (!(rep.eof_lower >= rep.disorder_d - 1e-12)) implications = false;
        if (rep.violation_m < -1.0 - 1e-12 || rep.violation_m > 1.0 + 1e-12 ||
            rep.concurrence < 0.0 || rep.concurrence > 1.0 + 1e-12 ||
            rep.chsh_max < 0.0 || rep.chsh_max > chsh_cap)
            ranges = false;
    }

    res.worst_error = std::max(worst_tight, worst_loose);
    res.passed = worst_tight <= 1e-12 && worst_loose <= 1e-10 && implications &&
                 ranges;
    std::ostringstream os;
    os << "closed vs generic: tight " << worst_tight << " (1e-12), concurrence "
       << worst_loose << " (1e-10); implications "
       << (implications ? "hold" : "VIOLATED") << "; ranges "
       << (ranges ? "hold" : "VIOLATED");
    res.detail = os.str();
    return res;
}

// chsh_max = 2 sqrt(1 + C^2) on seeded random pure two-qubit states.
inline SuiteResult pure_state_relation_suite(std::uint64_t seed,
                                             int count = 1000) {
    SuiteResult res;
    res.name = "pure-state-relation";
    Rng rng(seed);
    auto normal = [&rng]() {
        const double u1 = std::max(rng.uniform01(), 1e-300);
        const double u2 = rng.uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    };
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        Eigen::Vector4cd psi;
        for (int a = 0; a < 4; ++a)
            psi(a) = std::complex<double>(normal(), normal());
        psi.normalize();
        const auto rel = pure_state_relation(psi);
        worst = std::max(worst, std::abs(rel.chsh_max - rel.from_concurrence));
    }
    res.worst_error = worst;
    res.passed = worst <= 1e-10;
    std::ostringstream os;
    os << "max |chsh_max - 2 sqrt(1+C^2)| = " << worst << " over " << count
       << " states (tolerance 1e-10)";
    res.detail = os.str();
    return res;
}

// Threshold values behind the headline ordering claims. Temperature
// thresholds are exact sign changes. Field-axis concurrence decays
// exponentially without a sign change, so its figure-level threshold is the
// crossing of a small positivity floor; the orderings are asserted across
// three floors spanning four decades to show they do not depend on the
// choice.
struct ThresholdSummary {
    double t_c_value = 0.0;     // N=2, J=Delta=1 (field independent)
    double t_c_spread = 0.0;    // max |T_C(B) - T_C(0)| over B in {0,1,2,2.5}
    std::vector<double> t_m_by_b; // B in {0, 1}; B=2 has no violation region
    bool b2_never_violates = false;
    double t_d_ferro = 0.0, t_m_ferro = 0.0, t_c_ferro = 0.0; // J=-1, B=Delta=0
    double b_m_n2 = 0.0;
    std::vector<double> b_c_floors;          // the floors used
    std::vector<std::vector<double>> b_c_by_n; // [floor][N index], N in {2,3,6}
};

inline ThresholdSummary compute_threshold_summary() {
    ThresholdSummary s;

    auto temp_query = [](WitnessQuantity q, const ModelParams& p, double lo,
                         double hi) {
        return find_threshold({q, SweepAxis::temperature, lo, hi, p, 1e-6, 0.0});
    };

    std::vector<double> tcs;
    for (const double b : {0.0, 1.0, 2.0, 2.5}) {
        const auto r = temp_query(WitnessQuantity::concurrence,
                                  ModelParams{2, 1.0, 1.0, b, 1.0}, 0.5, 3.0);
        tcs.push_back(r.crossing.value_or(0.0));
    }
    s.t_c_value = tcs[0];
    for (const double t : tcs)
        s.t_c_spread = std::max(s.t_c_spread, std::abs(t - tcs[0]));

    for (const double b : {0.0, 1.0}) {
        const auto r = temp_query(WitnessQuantity::violation_m,
                                  ModelParams{2, 1.0, 1.0, b, 1.0}, 0.05, 3.0);
        s.t_m_by_b.push_back(r.crossing.value_or(0.0));
    }
    const auto b2 = temp_query(WitnessQuantity::violation_m,
                               ModelParams{2, 1.0, 1.0, 2.0, 1.0}, 0.05, 3.0);
    s.b2_never_violates = b2.outcome == ThresholdOutcome::never_positive;

    const ModelParams ferro{2, -1.0, 0.0, 0.0, 1.0};
    s.t_d_ferro = temp_query(WitnessQuantity::disorder_d, ferro, 0.05, 3.0)
                      .crossing.value_or(0.0);
    s.t_m_ferro = temp_query(WitnessQuantity::violation_m, ferro, 0.05, 3.0)
                      .crossing.value_or(0.0);
    s.t_c_ferro = temp_query(WitnessQuantity::concurrence, ferro, 0.05, 3.0)
                      .crossing.value_or(0.0);

    const double t_cold = 0.05;
    const auto bm = find_threshold({WitnessQuantity::violation_m, SweepAxis::field,
                                    0.01, 8.0,
                                    ModelParams{2, -1.0, 0.0, 0.0, 1.0 / t_cold},
                                    1e-6, 0.0});
    s.b_m_n2 = bm.crossing.value_or(0.0);

    s.b_c_floors = {1e-2, 1e-3, 1e-6};
    for (const double floor : s.b_c_floors) {
        std::vector<double> row;
        for (const int n : {2, 3, 6}) {
            const auto r = find_threshold(
                {WitnessQuantity::concurrence, SweepAxis::field, 0.01, 8.0,
                 ModelParams{n, -1.0, 0.0, 0.0, 1.0 / t_cold}, 1e-6, floor});
            row.push_back(r.crossing.value_or(0.0));
        }
        s.b_c_by_n.push_back(row);
    }
    return s;
}

inline SuiteResult threshold_ordering_suite() {
    SuiteResult res;
    res.name = "threshold-ordering";
    const ThresholdSummary s = compute_threshold_summary();
    const double t_c_exact = 2.0 / std::log(3.0);

    bool ok = true;
    ok = ok && std::abs(s.t_c_value - t_c_exact) <= 1e-4;
    ok = ok && s.t_c_spread <= 1e-5;
    // T_M exists for B in {0, 1}, is strictly decreasing, and sits below T_C;
    // at B = 2 the violation region is empty (threshold below any T > 0)
    ok = ok && s.t_m_by_b.size() == 2 && s.t_m_by_b[0] > s.t_m_by_b[1] &&
         s.t_m_by_b[1] > 0.0 && s.b2_never_violates;
    ok = ok && s.t_m_by_b[0] < s.t_c_value && s.t_m_by_b[1] < s.t_c_value;
    ok = ok && s.t_d_ferro > 0.0 && s.t_d_ferro < s.t_m_ferro &&
         s.t_m_ferro < s.t_c_ferro;
    ok = ok && s.b_m_n2 > 0.0;
    for (const auto& row : s.b_c_by_n)
        ok = ok && s.b_m_n2 < row[0] && row[0] < row[1] && row[1] < row[2];

    res.passed = ok;
    res.worst_error = std::abs(s.t_c_value - t_c_exact);
    std::ostringstream os;
    os << "T_C=" << s.t_c_value << " (2/ln3=" << t_c_exact << ", spread over B "
       << s.t_c_spread << "); T_M(B=0,1)=" << s.t_m_by_b[0] << ","
       << s.t_m_by_b[1] << ", B=2 never violates; ferro T_D<T_M<T_C: "
       << s.t_d_ferro << "<" << s.t_m_ferro << "<" << s.t_c_ferro
       << "; B_M=" << s.b_m_n2 << ", B_C(N=2,3,6)@floor1e-3=" << s.b_c_by_n[1][0]
       << "," << s.b_c_by_n[1][1] << "," << s.b_c_by_n[1][2];
    res.detail = os.str();
    return res;
}

} // namespace thermal_bell
