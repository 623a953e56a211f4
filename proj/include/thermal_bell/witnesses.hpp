#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "thermal_bell/linalg.hpp"
#include "thermal_bell/reduced_state.hpp"

namespace thermal_bell {

// All witness quantities at one parameter point. Conventions:
//   u >= u_tilde are the two largest eigenvalues of T T^dagger,
//   chsh_max     = 2 sqrt(u + u_tilde)   (CHSH maximum, up to 2 sqrt 2),
//   violation_m  = u + u_tilde - 1       (positive iff CHSH is violated),
//   concurrence  in [0, 1],
//   disorder_d   = S(A) - S(A,B) in bits (positive iff the local state is
//                  more disordered than the global one),
//   eof_lower    = entanglement of formation from the concurrence; it upper
//                  bounds nothing and is lower-bounded by disorder_d.
struct WitnessReport {
    double violation_m = 0.0;
    double concurrence = 0.0;
    double disorder_d = 0.0;
    double chsh_max = 0.0;
    double u = 0.0;
    double u_tilde = 0.0;
    double eof_lower = 0.0;
};

struct HorodeckiResult {
    double chsh_max = 0.0;
    double u = 0.0;
    double u_tilde = 0.0;
};

// Maximal CHSH value of a state with correlation matrix t: the two largest
// eigenvalues of t t^T enter as chsh_max = 2 sqrt(u + u_tilde).
inline HorodeckiResult horodecki_violation(const CorrelationMatrix& t) {
    const Eigen::Matrix3d tt = t * t.transpose();
    const Eigen::Vector3d eigs = sym3_eigenvalues(tt);
    HorodeckiResult r;
    r.u = std::max(0.0, eigs(2));
    r.u_tilde = std::max(0.0, eigs(1));
    r.chsh_max = 2.0 * std::sqrt(r.u + r.u_tilde);
    return r;
}

// Violation measure for the X-state, M = 8y^2 + (1-4w)^2 - min[4y^2, (1-4w)^2] - 1.
// The two branches are evaluated in regrouped form,
//   min = 4y^2      : M = 4y^2 - 8w + 16w^2
//   min = (1-4w)^2  : M = 8y^2 - 1
// which keeps the sign of M correct when w and y are exponentially small
// (the raw expression rounds (1-4w)^2 - 1 to zero long before w underflows).
inline double violation_measure_from_x(const XStateElements& x) {
    const double y2_4 = 4.0 * x.y * x.y;
    const double q = 1.0 - 4.0 * x.w;
    if (y2_4 <= q * q)
        return y2_4 - 8.0 * x.w + 16.0 * x.w * x.w;
    return 8.0 * x.y * x.y - 1.0;
}

// Two largest eigenvalues of T T^T for the X-state, whose correlation matrix
// is diag(2y, 2y, 1 - 4w).
inline void x_state_tt_eigenvalues(const XStateElements& x, double& u,
                                   double& u_tilde) {
    const double a = 4.0 * x.y * x.y;
    const double q2 = (1.0 - 4.0 * x.w) * (1.0 - 4.0 * x.w);
    if (q2 >= a) {
        u = q2;
        u_tilde = a;
    } else {
        u = a;
        u_tilde = a;
    }
}

// C = 2 max{0, |y| - sqrt(v_plus v_minus)}
inline double concurrence_from_x(const XStateElements& x) {
    const double c = 2.0 * (std::abs(x.y) - std::sqrt(x.v_plus * x.v_minus));
    return c > 0.0 ? c : 0.0;
}

// Concurrence of an arbitrary two-qubit state from the spin-flipped spectrum:
// C = max{0, l1 - l2 - l3 - l4} with l_i the decreasing square roots of the
// eigenvalues of rho (sy x sy) rho^* (sy x sy). Those square roots are
// computed directly as the singular values of the symmetric overlap matrix
// tau_ij = sqrt(p_i p_j) <psi_i| sy x sy |psi_j^*> built on the
// eigendecomposition rho = sum_i p_i |psi_i><psi_i|: tau tau^dagger is
// similar to the product matrix, and the SVD route keeps the small l_i at
// machine precision where the sqrt-of-eigenvalue route only reaches ~1e-8.
// Eigenvalues of rho in [-1e-10, 0) are rounding noise and are clamped.
inline double concurrence_wootters(const DensityMatrix4& rho) {
    static const Eigen::Matrix4cd syy =
        Eigen::kroneckerProduct(pauli(2), pauli(2)).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    Eigen::Vector4d sqrt_p;
    for (int i = 0; i < 4; ++i) {
        const double p = es.eigenvalues()(i);
        if (p < -1e-10)
            throw std::runtime_error("concurrence_wootters: negative spectrum");
        sqrt_p(i) = std::sqrt(std::max(0.0, p));
    }
    const Eigen::Matrix4cd& v = es.eigenvectors();
    const Eigen::Matrix4cd tau = sqrt_p.asDiagonal() *
                                 (v.adjoint() * syy * v.conjugate()) *
                                 sqrt_p.asDiagonal();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
    const auto& l = svd.singularValues(); // descending
    const double c = l(0) - l(1) - l(2) - l(3);
    return c > 0.0 ? c : 0.0;
}

namespace detail {
// x log2 x, continuous at 0
inline double plog2(double v) { return v > 0.0 ? v * std::log2(v) : 0.0; }

// plog2(v) - plog2(v + w) without cancellation: the raw difference of the
// O(1) terms drowns the result in rounding noise once w is exponentially
// small, flipping the sign of D on separable states.
inline double plog2_marginal_gap(double v, double w) {
    if (w <= 0.0) return 0.0;
    if (v <= 0.0) return -plog2(w);
    return -w * std::log2(v) - (v + w) * std::log1p(w / v) / std::numbers::ln2;
}
} // namespace detail

// D = S(A) - S(A,B) evaluated in closed form: the joint spectrum is
// {v_plus, v_minus, w - y, w + y}, the marginals are {v_plus + w, v_minus + w},
// and the sum of the six plog terms is regrouped per marginal so that the
// sign of D survives exponentially small w and y.
inline double disorder_measure(const XStateElements& x) {
    using detail::plog2;
    using detail::plog2_marginal_gap;
    return plog2_marginal_gap(x.v_plus, x.w) +
           plog2_marginal_gap(x.v_minus, x.w) + plog2(x.w - x.y) +
           plog2(x.w + x.y);
}

struct EofLowerResult {
    double eof = 0.0;
    double d = 0.0;
};

// Entanglement of formation from the concurrence via the binary entropy
// h((1 + sqrt(1 - C^2))/2), returned next to D so callers can assert
// eof >= D.
inline EofLowerResult eof_lower_check(const XStateElements& x) {
    using detail::plog2;
    const double c = concurrence_from_x(x);
    const double arg = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
    EofLowerResult r;
    r.eof = -plog2(arg) - plog2(1.0 - arg);
    r.d = disorder_measure(x);
    return r;
}

struct OptimalSettings {
    Eigen::Vector3d a;
    Eigen::Vector3d a_prime;
    Eigen::Vector3d b;
    Eigen::Vector3d b_prime;
};

// Measurement directions achieving the Horodecki maximum. With c, c' the
// singular directions of T for the two largest singular values su >= st:
//   b = cos(th) c + sin(th) c',  b' = cos(th) c - sin(th) c',  tan(th) = st/su,
//   a = T c / |T c|,             a' = T c' / |T c'|.
inline OptimalSettings optimal_settings(const CorrelationMatrix& t) {
    const auto dec = jacobi_eigensymmetric(t.transpose() * t);
    const double su = std::sqrt(std::max(0.0, dec.eigenvalues(2)));
    const double st = std::sqrt(std::max(0.0, dec.eigenvalues(1)));
    if (su <= 1e-12)
        throw std::invalid_argument("optimal_settings: correlation matrix is zero");

    const Eigen::Vector3d c = dec.eigenvectors.col(2);
    const Eigen::Vector3d cp = dec.eigenvectors.col(1);
    const double theta = std::atan2(st, su);

    OptimalSettings s;
    s.a = (t * c) / su;
    if (st > 1e-12) {
        s.a_prime = (t * cp) / st;
    } else {
        // the a' term carries weight sin(th) = 0; any unit vector works
        Eigen::Vector3d probe = Eigen::Vector3d::UnitX();
        if (std::abs(s.a.dot(probe)) > 0.9) probe = Eigen::Vector3d::UnitY();
        s.a_prime = (probe - s.a * s.a.dot(probe)).normalized();
    }
    s.b = std::cos(theta) * c + std::sin(theta) * cp;
    s.b_prime = std::cos(theta) * c - std::sin(theta) * cp;
    return s;
}

// CHSH operator a.sigma x (b + b').sigma + a'.sigma x (b - b').sigma
inline Eigen::Matrix4cd chsh_operator(const OptimalSettings& s) {
    auto dot_sigma = [](const Eigen::Vector3d& v) {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        for (int axis = 1; axis <= 3; ++axis) m += v(axis - 1) * pauli(axis);
        return m;
    };
    const Eigen::Matrix2cd first = dot_sigma(s.a);
    const Eigen::Matrix2cd first_prime = dot_sigma(s.a_prime);
    const Eigen::Matrix2cd plus = dot_sigma(s.b + s.b_prime);
    const Eigen::Matrix2cd minus = dot_sigma(s.b - s.b_prime);
    return Eigen::kroneckerProduct(first, plus).eval() +
           Eigen::kroneckerProduct(first_prime, minus).eval();
}

inline double chsh_expectation(const DensityMatrix4& rho,
                               const OptimalSettings& s) {
    return (rho * chsh_operator(s)).trace().real();
}

struct PureStateRelation {
    double chsh_max = 0.0;
    double from_concurrence = 0.0; // 2 sqrt(1 + C^2)
};

// For a pure two-qubit state the CHSH maximum and the concurrence satisfy
// chsh_max = 2 sqrt(1 + C^2); both sides are computed independently.
inline PureStateRelation pure_state_relation(const Eigen::Vector4cd& psi) {
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-9)
        throw std::invalid_argument("pure_state_relation: state is not normalized");
    const DensityMatrix4 rho = psi * psi.adjoint();
    PureStateRelation r;
    r.chsh_max = horodecki_violation(correlation_matrix(rho)).chsh_max;
    const double c = concurrence_wootters(rho);
    r.from_concurrence = 2.0 * std::sqrt(1.0 + c * c);
    return r;
}

// Full report through the closed-form X-state path.
inline WitnessReport witness_report_from_x(const XStateElements& x) {
    WitnessReport r;
    x_state_tt_eigenvalues(x, r.u, r.u_tilde);
    r.violation_m = violation_measure_from_x(x);
    r.chsh_max = 2.0 * std::sqrt(r.u + r.u_tilde);
    r.concurrence = concurrence_from_x(x);
    r.disorder_d = disorder_measure(x);
    const auto eof = eof_lower_check(x);
    r.eof_lower = eof.eof;
    return r;
}

} // namespace thermal_bell
