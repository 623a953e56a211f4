#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "thermal_bell/model.hpp"

namespace thermal_bell {

using DensityMatrix2 = Eigen::Matrix2cd;
using DensityMatrix4 = Eigen::Matrix4cd;

// t(n, m) = tr(rho sigma_n x sigma_m), n, m in {x, y, z}
using CorrelationMatrix = Eigen::Matrix3d;

// sigma_1 = sigma_x, sigma_2 = sigma_y, sigma_3 = sigma_z
inline const Eigen::Matrix2cd& pauli(int axis) {
    static const Eigen::Matrix2cd sx =
        (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
    static const Eigen::Matrix2cd sy =
        (Eigen::Matrix2cd() << std::complex<double>(0, 0), std::complex<double>(0, -1),
         std::complex<double>(0, 1), std::complex<double>(0, 0))
            .finished();
    static const Eigen::Matrix2cd sz =
        (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
    switch (axis) {
        case 1: return sx;
        case 2: return sy;
        case 3: return sz;
        default: throw std::out_of_range("pauli: axis must be 1, 2 or 3");
    }
}

// Elements of the permutation-symmetric two-qubit reduced state
//
//   rho_12 = diag(v_plus, w, w, v_minus) + y (|01><10| + |10><01|)
//
// in the product basis {|00>, |01>, |10>, |11>}. Eigenvalues are
// {v_plus, v_minus, w + y, w - y}.
struct XStateElements {
    double v_plus = 0.0;
    double v_minus = 0.0;
    double w = 0.0;
    double y = 0.0;
};

// Trace must close to 1e-12; probabilities may undershoot zero by at most
// 1e-9 of rounding noise (clamped by the callers below); the inner block
// must satisfy w >= |y| up to the same noise.
inline void validate_x_state(const XStateElements& x) {
    if (std::abs(x.v_plus + x.v_minus + 2.0 * x.w - 1.0) > 1e-12)
        throw std::logic_error("XStateElements: trace deviates from 1");
    if (x.v_plus < -1e-9 || x.v_minus < -1e-9 || x.w < -1e-9)
        throw std::logic_error("XStateElements: negative population");
    if (x.w < std::abs(x.y) - 1e-9)
        throw std::logic_error("XStateElements: inner block not positive");
}

namespace detail {
inline double clamp_probability(double p) { return p < 0.0 ? 0.0 : p; }
} // namespace detail

// Reduced-state elements from the collective moments:
//
//   v_pm = [N^2 - 2N + 4<Sz^2> +- 4<Sz>(N-1)] / [4N(N-1)]
//   w    = [N^2 - 4<Sz^2>] / [4N(N-1)]
//   y    = [2<Sx^2+Sy^2> - N] / [2N(N-1)]
inline XStateElements x_state_from_expectations(int n_qubits, double mean_sz,
                                                double mean_sz_squared,
                                                double mean_transverse) {
    if (n_qubits < 2)
        throw std::invalid_argument("x_state_from_expectations: n_qubits must be >= 2");
    const double n = n_qubits;
    const double denom = 4.0 * n * (n - 1.0);
    XStateElements x;
    x.v_plus = (n * n - 2.0 * n + 4.0 * mean_sz_squared + 4.0 * mean_sz * (n - 1.0)) / denom;
    x.v_minus = (n * n - 2.0 * n + 4.0 * mean_sz_squared - 4.0 * mean_sz * (n - 1.0)) / denom;
    x.w = (n * n - 4.0 * mean_sz_squared) / denom;
    x.y = (2.0 * mean_transverse - n) / (2.0 * n * (n - 1.0));
    validate_x_state(x);
    x.v_plus = detail::clamp_probability(x.v_plus);
    x.v_minus = detail::clamp_probability(x.v_minus);
    x.w = detail::clamp_probability(x.w);
    return x;
}

// Same elements evaluated directly from the sector table. Each level enters
// with an exact per-level coefficient, e.g.
//
//   y = sum_k N_k sum_mz [2 s(s+1) - 2 mz^2 - N] e^{-beta (E - E0)} / (2N(N-1) Z')
//
// so no large-term cancellation occurs and exponentially small elements keep
// their correct sign down to the underflow limit. This is the sweep-engine
// hot path; x_state_from_expectations is the literal-moment form.
inline XStateElements x_state_from_sector_table(const SectorTable& table,
                                                double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("x_state_from_sector_table: beta must be positive");
    const double n = table.n_qubits;
    const double e0 = table.ground_energy;
    double z = 0.0, sum_p = 0.0, sum_m = 0.0, sum_w = 0.0, sum_y = 0.0;
    for (const auto& lv : table.entries) {
        const double weight = static_cast<double>(lv.degeneracy) *
                              std::exp(-beta * (lv.energy - e0));
        const double mz2 = lv.m_z * lv.m_z;
        sum_p += (n * n - 2.0 * n + 4.0 * mz2 + 4.0 * lv.m_z * (n - 1.0)) * weight;
        sum_m += (n * n - 2.0 * n + 4.0 * mz2 - 4.0 * lv.m_z * (n - 1.0)) * weight;
        sum_w += (n * n - 4.0 * mz2) * weight;
        sum_y += (2.0 * (lv.spin * (lv.spin + 1.0) - mz2) - n) * weight;
        z += weight;
    }
    const double denom = 4.0 * n * (n - 1.0) * z;
    XStateElements x;
    x.v_plus = sum_p / denom;
    x.v_minus = sum_m / denom;
    x.w = sum_w / denom;
    x.y = 2.0 * sum_y / denom;
    validate_x_state(x);
    x.v_plus = detail::clamp_probability(x.v_plus);
    x.v_minus = detail::clamp_probability(x.v_minus);
    x.w = detail::clamp_probability(x.w);
    return x;
}

inline DensityMatrix4 to_density_matrix(const XStateElements& x) {
    DensityMatrix4 rho = DensityMatrix4::Zero();
    rho(0, 0) = x.v_plus;
    rho(1, 1) = x.w;
    rho(2, 2) = x.w;
    rho(3, 3) = x.v_minus;
    rho(1, 2) = x.y;
    rho(2, 1) = x.y;
    return rho;
}

// Hermitian to 1e-12, trace 1 to 1e-12, eigenvalues >= -1e-9.
inline void validate_density_matrix(const Eigen::MatrixXcd& rho) {
    if (rho.rows() != rho.cols())
        throw std::invalid_argument("validate_density_matrix: matrix must be square");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("validate_density_matrix: not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-12 ||
        std::abs(rho.trace().imag()) > 1e-12)
        throw std::invalid_argument("validate_density_matrix: trace deviates from 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho,
                                                       Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw std::invalid_argument("validate_density_matrix: negative eigenvalue");
}

inline CorrelationMatrix correlation_matrix(const DensityMatrix4& rho) {
    CorrelationMatrix t;
    for (int n = 1; n <= 3; ++n) {
        for (int m = 1; m <= 3; ++m) {
            const Eigen::Matrix4cd op =
                Eigen::kroneckerProduct(pauli(n), pauli(m)).eval();
            t(n - 1, m - 1) = (rho * op).trace().real();
        }
    }
    return t;
}

// Entropy in bits, -sum lambda log2 lambda with 0 log 0 := 0. Eigenvalues in
// [-1e-9, 0) are rounding noise and are clamped; anything more negative is a
// genuinely invalid state.
inline double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho,
                                                       Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double lambda = es.eigenvalues()(i);
        if (lambda < -1e-9)
            throw std::invalid_argument("von_neumann_entropy: negative eigenvalue");
        if (lambda <= 0.0) continue;
        entropy -= lambda * std::log2(lambda);
    }
    return entropy;
}

// Partial trace over the second qubit. The X-state is symmetric under the
// qubit swap, so this equals the reduction onto either qubit.
inline DensityMatrix2 single_qubit_reduction(const DensityMatrix4& rho) {
    DensityMatrix2 a;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            a(r, c) = rho(2 * r, 2 * c) + rho(2 * r + 1, 2 * c + 1);
    return a;
}

} // namespace thermal_bell
