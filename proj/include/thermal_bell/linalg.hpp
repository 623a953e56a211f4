#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace thermal_bell {

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors; // orthonormal columns, same order
};

// Cyclic Jacobi diagonalization of a real symmetric matrix. Sweeps run until
// every off-diagonal magnitude is below 1e-12 * ||A||_F; more than 100 sweeps
// is treated as non-convergence.
inline SpectralDecomposition jacobi_eigensymmetric(Eigen::MatrixXd a) {
    const Eigen::Index n = a.rows();
    if (n != a.cols())
        throw std::invalid_argument("jacobi_eigensymmetric: matrix must be square");

    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    const double tol = 1e-12 * a.norm();

    for (int sweep = 0; n > 1; ++sweep) {
        double off_max = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q)
                off_max = std::max(off_max, std::abs(a(p, q)));
        if (off_max <= tol) break;
        if (sweep >= 100)
            throw std::runtime_error(
                "jacobi_eigensymmetric: no convergence within 100 sweeps");

        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= tol * 1e-2) continue;
                const double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::hypot(theta, 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // A <- G^T A G with the Givens rotation G acting on (p, q)
                for (Eigen::Index r = 0; r < n; ++r) {
                    const double g = a(r, p), h = a(r, q);
                    a(r, p) = c * g - s * h;
                    a(r, q) = s * g + c * h;
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const double g = a(p, r), h = a(q, r);
                    a(p, r) = c * g - s * h;
                    a(q, r) = s * g + c * h;
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const double g = v(r, p), h = v(r, q);
                    v(r, p) = c * g - s * h;
                    v(r, q) = s * g + c * h;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&a](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.eigenvalues(i) = a(order[static_cast<std::size_t>(i)],
                               order[static_cast<std::size_t>(i)]);
        out.eigenvectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
    }
    return out;
}

// Eigenvalues of a symmetric 3x3 matrix, ascending. Uses the trigonometric
// solution of the characteristic cubic; when the cubic is ill-conditioned
// (|r| at the acos boundary) it falls back to the Jacobi path.
inline Eigen::Vector3d sym3_eigenvalues(const Eigen::Matrix3d& m) {
    const double p1 = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2);
    const double q = m.trace() / 3.0;
    const double d0 = m(0, 0) - q, d1 = m(1, 1) - q, d2 = m(2, 2) - q;
    const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;

    const double scale = std::abs(q) + std::sqrt(std::abs(p2));
    if (p2 <= 1e-30 * scale * scale || p2 == 0.0)
        return Eigen::Vector3d::Constant(q);

    const double p = std::sqrt(p2 / 6.0);
    Eigen::Matrix3d b = (m - q * Eigen::Matrix3d::Identity()) / p;
    const double r = 0.5 * b.determinant();

    if (std::abs(r) >= 1.0 - 1e-9) {
        const auto jac = jacobi_eigensymmetric(m);
        return Eigen::Vector3d(jac.eigenvalues(0), jac.eigenvalues(1),
                               jac.eigenvalues(2));
    }

    const double phi = std::acos(r) / 3.0;
    const double two_pi_3 = 2.0 * std::numbers::pi / 3.0;
    const double hi = q + 2.0 * p * std::cos(phi);
    const double lo = q + 2.0 * p * std::cos(phi + two_pi_3);
    const double mid = 3.0 * q - hi - lo;
    return Eigen::Vector3d(lo, mid, hi);
}

} // namespace thermal_bell
