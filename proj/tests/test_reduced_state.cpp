#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "thermal_bell/model.hpp"
#include "thermal_bell/oracle.hpp"
#include "thermal_bell/random.hpp"
#include "thermal_bell/reduced_state.hpp"

using namespace thermal_bell;

namespace {

XStateElements random_thermal_x(Rng& rng, int n_min = 2, int n_max = 10) {
    const ModelParams p{rng.uniform_int(n_min, n_max), rng.uniform(-3.0, 3.0),
                        rng.uniform(-2.0, 2.0), rng.uniform(-3.0, 3.0),
                        rng.uniform(0.1, 30.0)};
    return x_state_from_sector_table(build_sector_table(p),
                                     p.inverse_temperature);
}

DensityMatrix2 first_qubit_reduction(const DensityMatrix4& rho) {
    DensityMatrix2 b;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) b(r, c) = rho(r, c) + rho(2 + r, 2 + c);
    return b;
}

} // namespace

TEST_CASE("x-state elements at the infinite-temperature point") {
    const auto x = x_state_from_expectations(2, 0.0, 0.5, 1.0);
    CHECK(x.v_plus == Catch::Approx(0.25).margin(1e-15));
    CHECK(x.v_minus == Catch::Approx(0.25).margin(1e-15));
    CHECK(x.w == Catch::Approx(0.25).margin(1e-15));
    CHECK(x.y == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("x-state elements of the singlet moments") {
    const auto x = x_state_from_expectations(2, 0.0, 0.0, 0.0);
    CHECK(x.v_plus == 0.0);
    CHECK(x.v_minus == 0.0);
    CHECK(x.w == Catch::Approx(0.5).margin(1e-15));
    CHECK(x.y == Catch::Approx(-0.5).margin(1e-15));
}

TEST_CASE("x-state matches the oracle partial trace at N=5") {
    const ModelParams p{5, -1.0, 0.0, 0.0, 10.0};
    const auto x = x_state_from_sector_table(build_sector_table(p), 10.0);
    const auto rho_oracle =
        partial_trace_to_pair(thermal_state(build_full_hamiltonian(p), 10.0), 5, 0, 1);
    CHECK((to_density_matrix(x) - rho_oracle).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("sector-table path agrees with the moment formulas") {
    Rng rng(23);
    for (int d = 0; d < 60; ++d) {
        const ModelParams p{rng.uniform_int(2, 12), rng.uniform(-3.0, 3.0),
                            rng.uniform(-2.0, 2.0), rng.uniform(-3.0, 3.0),
                            rng.uniform(0.1, 10.0)};
        const auto t = build_sector_table(p);
        const double beta = p.inverse_temperature;
        const auto [sz, sz2] = expectation_sz_moments(t, beta);
        const auto a = x_state_from_expectations(p.n_qubits, sz, sz2,
                                                 expectation_transverse(t, beta));
        const auto b = x_state_from_sector_table(t, beta);
        CHECK(std::abs(a.v_plus - b.v_plus) < 1e-12);
        CHECK(std::abs(a.v_minus - b.v_minus) < 1e-12);
        CHECK(std::abs(a.w - b.w) < 1e-12);
        CHECK(std::abs(a.y - b.y) < 1e-12);
    }
}

TEST_CASE("inconsistent moments are rejected") {
    // trace cannot close
    CHECK_THROWS_AS(x_state_from_expectations(2, 10.0, 0.5, 1.0), std::logic_error);
    // <Sz^2> beyond N^2/4 drives w negative
    CHECK_THROWS_AS(x_state_from_expectations(2, 0.0, 1.2, 1.0), std::logic_error);
    // transverse moment too negative drives |y| beyond w
    CHECK_THROWS_AS(x_state_from_expectations(2, 0.0, 0.5, -3.0), std::logic_error);
}

TEST_CASE("to_density_matrix block structure") {
    SECTION("maximally mixed") {
        const auto rho = to_density_matrix({0.25, 0.25, 0.25, 0.0});
        CHECK((rho - DensityMatrix4::Identity() / 4.0).cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("singlet is pure") {
        const auto rho = to_density_matrix({0.0, 0.0, 0.5, -0.5});
        Eigen::SelfAdjointEigenSolver<DensityMatrix4> es(rho);
        CHECK(es.eigenvalues()(3) == Catch::Approx(1.0).margin(1e-14));
        for (int i = 0; i < 3; ++i)
            CHECK(es.eigenvalues()(i) == Catch::Approx(0.0).margin(1e-14));
    }
    SECTION("eigenvalues are {v+, v-, w+y, w-y} for thermal states") {
        Rng rng(5);
        for (int d = 0; d < 25; ++d) {
            const auto x = random_thermal_x(rng);
            const auto rho = to_density_matrix(x);
            validate_density_matrix(rho);
            Eigen::SelfAdjointEigenSolver<DensityMatrix4> es(rho);
            std::array<double, 4> expected{x.v_plus, x.v_minus, x.w + x.y,
                                           x.w - x.y};
            std::sort(expected.begin(), expected.end());
            for (int i = 0; i < 4; ++i)
                CHECK(std::abs(es.eigenvalues()(i) - expected[static_cast<std::size_t>(i)]) < 1e-12);
        }
    }
}

TEST_CASE("correlation matrix") {
    SECTION("maximally mixed state has no correlations") {
        const auto t = correlation_matrix(DensityMatrix4::Identity() / 4.0);
        CHECK(t.cwiseAbs().maxCoeff() < 1e-15);
    }
    SECTION("singlet correlations are diag(-1, -1, -1)") {
        const auto t = correlation_matrix(to_density_matrix({0.0, 0.0, 0.5, -0.5}));
        CHECK((t - Eigen::Matrix3d(Eigen::Vector3d(-1, -1, -1).asDiagonal()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-14);
    }
    SECTION("X state gives diag(2y, 2y, 1-4w)") {
        const auto t = correlation_matrix(to_density_matrix({0.3, 0.3, 0.2, 0.1}));
        CHECK(t(0, 0) == Catch::Approx(0.2).margin(1e-14));
        CHECK(t(1, 1) == Catch::Approx(0.2).margin(1e-14));
        CHECK(t(2, 2) == Catch::Approx(0.2).margin(1e-14));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                if (r != c) CHECK(std::abs(t(r, c)) < 1e-12);
    }
    SECTION("thermal X states stay diagonal with entries in [-1, 1]") {
        Rng rng(17);
        for (int d = 0; d < 25; ++d) {
            const auto t =
                correlation_matrix(to_density_matrix(random_thermal_x(rng)));
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) {
                    if (r != c) CHECK(std::abs(t(r, c)) < 1e-12);
                    CHECK(t(r, c) <= 1.0 + 1e-12);
                    CHECK(t(r, c) >= -1.0 - 1e-12);
                }
        }
    }
}

TEST_CASE("von Neumann entropy") {
    CHECK(von_neumann_entropy(Eigen::MatrixXcd(DensityMatrix4::Identity() / 4.0)) ==
          Catch::Approx(2.0).margin(1e-12));
    CHECK(von_neumann_entropy(Eigen::MatrixXcd(
              to_density_matrix({0.0, 0.0, 0.5, -0.5}))) ==
          Catch::Approx(0.0).margin(1e-9));
    Eigen::MatrixXcd half = Eigen::MatrixXcd::Zero(4, 4);
    half(0, 0) = half(1, 1) = 0.5;
    CHECK(von_neumann_entropy(half) == Catch::Approx(1.0).margin(1e-14));

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    CHECK_THROWS_AS(von_neumann_entropy(bad), std::invalid_argument);
}

TEST_CASE("entropy is invariant under the qubit swap") {
    Rng rng(29);
    for (int d = 0; d < 20; ++d) {
        const auto rho = to_density_matrix(random_thermal_x(rng));
        DensityMatrix4 swapped;
        // swap basis order |01> <-> |10|
        const std::array<int, 4> perm{0, 2, 1, 3};
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                swapped(r, c) = rho(perm[static_cast<std::size_t>(r)],
                                    perm[static_cast<std::size_t>(c)]);
        CHECK(std::abs(von_neumann_entropy(Eigen::MatrixXcd(rho)) -
                       von_neumann_entropy(Eigen::MatrixXcd(swapped))) < 1e-12);
    }
}

TEST_CASE("single-qubit reduction") {
    CHECK((single_qubit_reduction(to_density_matrix({0.0, 0.0, 0.5, -0.5})) -
           DensityMatrix2::Identity() / 2.0)
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    CHECK((single_qubit_reduction(DensityMatrix4::Identity() / 4.0) -
           DensityMatrix2::Identity() / 2.0)
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    const auto a = single_qubit_reduction(to_density_matrix({0.3, 0.3, 0.2, 0.05}));
    CHECK(a(0, 0).real() == Catch::Approx(0.5).margin(1e-14));
    CHECK(a(1, 1).real() == Catch::Approx(0.5).margin(1e-14));
    CHECK(std::abs(a(0, 1)) < 1e-15);

    SECTION("S(A) equals S(B) for the symmetric X states") {
        Rng rng(31);
        for (int d = 0; d < 20; ++d) {
            const auto rho = to_density_matrix(random_thermal_x(rng));
            const auto a2 = single_qubit_reduction(rho);
            const auto b2 = first_qubit_reduction(rho);
            CHECK((a2 - b2).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}

TEST_CASE("pauli constants") {
    CHECK((pauli(1) * pauli(1) - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((pauli(2) * pauli(2) - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((pauli(3) * pauli(3) - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() == 0.0);
    // sigma_x sigma_y = i sigma_z
    CHECK((pauli(1) * pauli(2) - std::complex<double>(0, 1) * pauli(3))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK_THROWS_AS(pauli(0), std::out_of_range);
}
