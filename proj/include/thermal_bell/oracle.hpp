#pragma once

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "thermal_bell/linalg.hpp"
#include "thermal_bell/model.hpp"
#include "thermal_bell/reduced_state.hpp"

namespace thermal_bell {

// Full 2^N Hamiltonian of
//
//   H = (J/4) sum_{i != j} (sx_i sx_j + sy_i sy_j + Delta sz_i sz_j)
//       + (B/2) sum_i sz_i
//
// assembled in the computational basis (qubit 0 is the most significant bit,
// bit value 0 means spin up). The ordered sum counts each unordered pair
// twice, so each pair contributes J/2 per Pauli term. The matrix is real
// symmetric and commutes with the total S_z, so it is block diagonal over
// fixed bit-count sectors.
struct FullHamiltonian {
    int n_qubits = 0;
    Eigen::MatrixXd matrix;
};

constexpr int kMaxOracleQubits = 12;

inline FullHamiltonian build_full_hamiltonian(const ModelParams& p) {
    validate(p);
    if (p.n_qubits > kMaxOracleQubits)
        throw std::length_error("build_full_hamiltonian: n_qubits > 12");

    const int n = p.n_qubits;
    const long dim = 1L << n;
    const double j = p.coupling;
    const double delta = p.anisotropy;
    const double b = p.field;

    FullHamiltonian h;
    h.n_qubits = n;
    h.matrix = Eigen::MatrixXd::Zero(dim, dim);

    auto spin_z = [n](long state, int qubit) {
        return ((state >> (n - 1 - qubit)) & 1L) ? -1.0 : 1.0;
    };

    for (long s = 0; s < dim; ++s) {
        double diag = 0.0;
        for (int i = 0; i < n; ++i) {
            diag += 0.5 * b * spin_z(s, i);
            for (int k = i + 1; k < n; ++k) {
                diag += 0.5 * j * delta * spin_z(s, i) * spin_z(s, k);
                if (spin_z(s, i) != spin_z(s, k)) {
                    // sx sx + sy sy flips an antialigned pair with weight 2
                    const long flipped =
                        s ^ (1L << (n - 1 - i)) ^ (1L << (n - 1 - k));
                    h.matrix(s, flipped) += j;
                }
            }
        }
        h.matrix(s, s) += diag;
    }
    return h;
}

// Jacobi eigendecomposition restricted to the oracle's size budget.
inline SpectralDecomposition symmetric_eigendecomposition(
    const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("symmetric_eigendecomposition: not square");
    if (m.rows() > 4096)
        throw std::invalid_argument("symmetric_eigendecomposition: dim > 4096");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-14 * (1.0 + m.norm()))
        throw std::invalid_argument("symmetric_eigendecomposition: not symmetric");
    return jacobi_eigensymmetric(m);
}

// exp(-beta H) / Z via eigendecomposition, diagonalizing each fixed-S_z
// block separately (H never couples different bit counts). Exponents are
// shifted by the global ground energy before exponentiation.
inline Eigen::MatrixXd thermal_state(const FullHamiltonian& h, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("thermal_state: beta must be positive");

    const long dim = h.matrix.rows();
    std::vector<std::vector<long>> sectors(static_cast<std::size_t>(h.n_qubits) + 1);
    for (long s = 0; s < dim; ++s)
        sectors[static_cast<std::size_t>(std::popcount(
                    static_cast<unsigned long>(s)))]
            .push_back(s);

    struct Block {
        std::vector<long> idx;
        SpectralDecomposition dec;
    };
    std::vector<Block> blocks;
    double e_min = 0.0;
    bool first = true;
    for (auto& idx : sectors) {
        if (idx.empty()) continue;
        const long bn = static_cast<long>(idx.size());
        Eigen::MatrixXd sub(bn, bn);
        for (long r = 0; r < bn; ++r)
            for (long c = 0; c < bn; ++c)
                sub(r, c) = h.matrix(idx[static_cast<std::size_t>(r)],
                                     idx[static_cast<std::size_t>(c)]);
        Block blk;
        blk.idx = std::move(idx);
        blk.dec = symmetric_eigendecomposition(sub);
        const double blk_min = blk.dec.eigenvalues(0);
        if (first || blk_min < e_min) {
            e_min = blk_min;
            first = false;
        }
        blocks.push_back(std::move(blk));
    }

    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim, dim);
    double trace = 0.0;
    for (const auto& blk : blocks) {
        const long bn = static_cast<long>(blk.idx.size());
        Eigen::VectorXd weights(bn);
        for (long t = 0; t < bn; ++t) {
            weights(t) = std::exp(-beta * (blk.dec.eigenvalues(t) - e_min));
            trace += weights(t);
        }
        const Eigen::MatrixXd blk_rho = blk.dec.eigenvectors *
                                        weights.asDiagonal() *
                                        blk.dec.eigenvectors.transpose();
        for (long r = 0; r < bn; ++r)
            for (long c = 0; c < bn; ++c)
                rho(blk.idx[static_cast<std::size_t>(r)],
                    blk.idx[static_cast<std::size_t>(c)]) = blk_rho(r, c);
    }
    rho /= trace;
    return rho;
}

// Exact partial trace onto the (qubit_i, qubit_j) pair, output in the
// {|00>, |01>, |10>, |11>} basis of that pair.
inline DensityMatrix4 partial_trace_to_pair(const Eigen::MatrixXd& rho_full,
                                            int n_qubits, int qubit_i,
                                            int qubit_j) {
    if (qubit_i < 0 || qubit_j <= qubit_i || qubit_j >= n_qubits)
        throw std::out_of_range("partial_trace_to_pair: need 0 <= i < j < N");
    const long dim = rho_full.rows();
    if (dim != (1L << n_qubits))
        throw std::invalid_argument("partial_trace_to_pair: dimension mismatch");

    const int shift_i = n_qubits - 1 - qubit_i;
    const int shift_j = n_qubits - 1 - qubit_j;
    const long mask_i = 1L << shift_i;
    const long mask_j = 1L << shift_j;

    // enumerate the 2^(N-2) configurations of the remaining qubits
    std::vector<long> rest;
    rest.reserve(static_cast<std::size_t>(dim >> 2));
    for (long s = 0; s < dim; ++s)
        if (!(s & mask_i) && !(s & mask_j)) rest.push_back(s);

    DensityMatrix4 out = DensityMatrix4::Zero();
    for (int a = 0; a < 4; ++a) {
        const long bits_a = ((a & 2) ? mask_i : 0) | ((a & 1) ? mask_j : 0);
        for (int b = 0; b < 4; ++b) {
            const long bits_b = ((b & 2) ? mask_i : 0) | ((b & 1) ? mask_j : 0);
            double acc = 0.0;
            for (const long r : rest) acc += rho_full(r | bits_a, r | bits_b);
            out(a, b) = acc;
        }
    }
    return out;
}

// Collective operators for cross-checks against the sector path. All are
// parameter independent, so callers can cache them per qubit count.
inline Eigen::VectorXd collective_sz_values(int n_qubits) {
    const long dim = 1L << n_qubits;
    Eigen::VectorXd mz(dim);
    for (long s = 0; s < dim; ++s)
        mz(s) = 0.5 * (n_qubits - 2 * std::popcount(static_cast<unsigned long>(s)));
    return mz;
}

// Sx^2 + Sy^2 as a real matrix: with Sy = i A (A real antisymmetric),
// Sx^2 + Sy^2 = Sx Sx - A A.
inline Eigen::MatrixXd collective_transverse_matrix(int n_qubits) {
    const int n = n_qubits;
    const long dim = 1L << n;
    Eigen::MatrixXd sx = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (long s = 0; s < dim; ++s) {
        for (int i = 0; i < n; ++i) {
            const long mask = 1L << (n - 1 - i);
            const long flipped = s ^ mask;
            sx(flipped, s) += 0.5;
            a(flipped, s) += (s & mask) ? -0.5 : 0.5; // raising vs lowering
        }
    }
    return sx * sx - a * a;
}

} // namespace thermal_bell
