#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace thermal_bell {

// Physical knobs of the collective Heisenberg model
//
//   H = J (Sx^2 + Sy^2 + Delta Sz^2) + B Sz
//     = J S^2 + J (Delta - 1) Sz^2 + B Sz
//
// with collective spin operators S_a = sum_i sigma_{ia}/2. Energies,
// fields and temperatures share units (k_B = 1), beta = 1/T.
struct ModelParams {
    int n_qubits = 2;
    double coupling = 1.0;            // J
    double anisotropy = 1.0;          // Delta
    double field = 0.0;               // B
    double inverse_temperature = 1.0; // beta
};

inline void validate(const ModelParams& p) {
    if (p.n_qubits < 2)
        throw std::invalid_argument("ModelParams: n_qubits must be >= 2");
    if (!(p.inverse_temperature > 0.0) || !std::isfinite(p.inverse_temperature))
        throw std::invalid_argument(
            "ModelParams: inverse_temperature must be positive and finite");
    if (!std::isfinite(p.coupling) || !std::isfinite(p.anisotropy) ||
        !std::isfinite(p.field))
        throw std::invalid_argument("ModelParams: parameters must be finite");
}

// One (k, m_z) level of the collective spectrum. The total-spin block with
// s = N/2 - k occurs N_k = C(N,k) - C(N,k-1) times, and inside a block the
// magnetization runs m_z = -s ... s.
struct SectorLevel {
    int k = 0;
    long long degeneracy = 0; // N_k
    double spin = 0.0;        // s = N/2 - k
    double m_z = 0.0;
    double energy = 0.0;      // E(s, m_z) = J s(s+1) + J(Delta-1) m_z^2 + B m_z
};

// Levels are ordered by k ascending, then m_z ascending. ground_energy is
// the minimum energy and is subtracted from every Boltzmann exponent so that
// large beta never overflows; the shift cancels in all observables.
struct SectorTable {
    int n_qubits = 0;
    std::vector<SectorLevel> entries;
    double ground_energy = 0.0;
};

// Exact binomial coefficient; inputs are capped by the N <= 20 guard below,
// so the result always fits a long long without rounding.
inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

constexpr int kMaxSectorQubits = 20;

inline SectorTable build_sector_table(const ModelParams& p) {
    validate(p);
    if (p.n_qubits > kMaxSectorQubits)
        throw std::invalid_argument(
            "build_sector_table: n_qubits beyond exact-degeneracy range (max 20)");

    const int n = p.n_qubits;
    const double j = p.coupling;
    const double aniso = j * (p.anisotropy - 1.0);
    const double b = p.field;

    SectorTable table;
    table.n_qubits = n;
    table.entries.reserve(static_cast<std::size_t>((n + 2) * (n + 2) / 4));

    double e_min = 0.0;
    bool first = true;
    for (int k = 0; k <= n / 2; ++k) {
        const long long nk = binomial(n, k) - binomial(n, k - 1);
        const double s = 0.5 * (n - 2 * k);
        for (int m = 0; m <= n - 2 * k; ++m) {
            const double mz = m - 0.5 * n + k;
            const double energy = j * s * (s + 1.0) + aniso * mz * mz + b * mz;
            table.entries.push_back({k, nk, s, mz, energy});
            if (first || energy < e_min) {
                e_min = energy;
                first = false;
            }
        }
    }
    table.ground_energy = e_min;
    return table;
}

// Shifted partition function Z' = sum_k N_k exp(-beta (E - E_ground)).
// Multiply by exp(-beta * ground_energy) to recover the unshifted sum.
inline double partition_function(const SectorTable& table, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("partition_function: beta must be positive");
    double z = 0.0;
    for (const auto& lv : table.entries)
        z += static_cast<double>(lv.degeneracy) *
             std::exp(-beta * (lv.energy - table.ground_energy));
    return z;
}

// Thermal averages <S_z> and <S_z^2>. The first moment is accumulated over
// (+m_z, -m_z) pairs inside each spin block, so it is exactly zero whenever
// the spectrum is m_z-symmetric (B = 0).
inline std::pair<double, double> expectation_sz_moments(const SectorTable& table,
                                                        double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("expectation_sz_moments: beta must be positive");
    const double e0 = table.ground_energy;
    double z = 0.0, sz2 = 0.0, sz = 0.0;
    std::size_t offset = 0;
    for (int k = 0; k <= table.n_qubits / 2; ++k) {
        const int n_m = table.n_qubits - 2 * k + 1;
        for (int lo = 0, hi = n_m - 1; lo < hi; ++lo, --hi) {
            const auto& a = table.entries[offset + lo]; // m_z = -(s - lo)
            const auto& b = table.entries[offset + hi]; // m_z = +(s - lo)
            const double wa = static_cast<double>(a.degeneracy) *
                              std::exp(-beta * (a.energy - e0));
            const double wb = static_cast<double>(b.degeneracy) *
                              std::exp(-beta * (b.energy - e0));
            sz += b.m_z * (wb - wa);
            sz2 += b.m_z * b.m_z * (wa + wb);
            z += wa + wb;
        }
        if (n_m % 2 == 1) {
            const auto& mid = table.entries[offset + n_m / 2];
            z += static_cast<double>(mid.degeneracy) *
                 std::exp(-beta * (mid.energy - e0));
            // m_z = 0 contributes to neither moment
        }
        offset += static_cast<std::size_t>(n_m);
    }
    return {sz / z, sz2 / z};
}

// Thermal average of Sx^2 + Sy^2 = S^2 - Sz^2, i.e. of s(s+1) - m_z^2.
inline double expectation_transverse(const SectorTable& table, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("expectation_transverse: beta must be positive");
    const double e0 = table.ground_energy;
    double z = 0.0, acc = 0.0;
    for (const auto& lv : table.entries) {
        const double w = static_cast<double>(lv.degeneracy) *
                         std::exp(-beta * (lv.energy - e0));
        acc += (lv.spin * (lv.spin + 1.0) - lv.m_z * lv.m_z) * w;
        z += w;
    }
    return acc / z;
}

} // namespace thermal_bell
