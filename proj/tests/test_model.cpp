#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "thermal_bell/model.hpp"
#include "thermal_bell/oracle.hpp"
#include "thermal_bell/random.hpp"

using namespace thermal_bell;

namespace {

double unshifted_partition(const SectorTable& t, double beta) {
    return partition_function(t, beta) * std::exp(-beta * t.ground_energy);
}

// The full Hamiltonian drops the constant -(J/4) N (2 + Delta) relative to
// the collective form, so collective energies = full eigenvalues + shift.
double collective_shift(const ModelParams& p) {
    return 0.25 * p.coupling * p.n_qubits * (2.0 + p.anisotropy);
}

} // namespace

TEST_CASE("sector table reproduces the two-qubit triplet/singlet split") {
    const auto t = build_sector_table({2, 1.0, 1.0, 0.0, 1.0});
    REQUIRE(t.entries.size() == 4);
    // k = 0: s = 1, m_z in {-1, 0, 1}; k = 1: s = 0
    CHECK(t.entries[0].k == 0);
    CHECK(t.entries[0].degeneracy == 1);
    CHECK(t.entries[0].spin == 1.0);
    CHECK(t.entries[0].m_z == -1.0);
    CHECK(t.entries[2].m_z == 1.0);
    CHECK(t.entries[3].k == 1);
    CHECK(t.entries[3].degeneracy == 1);
    CHECK(t.entries[3].spin == 0.0);
    CHECK(t.entries[3].m_z == 0.0);
    // J = Delta = 1, B = 0: triplet at 2J, singlet at 0
    CHECK(t.entries[0].energy == Catch::Approx(2.0));
    CHECK(t.entries[3].energy == Catch::Approx(0.0));
    CHECK(t.ground_energy == Catch::Approx(0.0));
}

TEST_CASE("sector table N=3 gives 1*4 + 2*2 = 8 states") {
    const auto t = build_sector_table({3, 1.0, 1.0, 0.0, 1.0});
    long long dim = 0;
    for (const auto& lv : t.entries) dim += lv.degeneracy;
    CHECK(dim == 8);
    CHECK(t.entries.front().spin == 1.5);
    CHECK(t.entries.front().degeneracy == 1);
    CHECK(t.entries.back().spin == 0.5);
    CHECK(t.entries.back().degeneracy == 2);
}

TEST_CASE("N=6 degeneracies match a brute-force count of S^2 eigenspaces") {
    // At J = 1, Delta = 1, B = 0 the collective energy is s(s+1), so each
    // distinct full-spectrum eigenvalue identifies one total-spin s, with
    // multiplicity N_k (2s+1).
    const ModelParams p{6, 1.0, 1.0, 0.0, 1.0};
    const auto h = build_full_hamiltonian(p);
    const auto dec = symmetric_eigendecomposition(h.matrix);
    const double shift = collective_shift(p);

    std::map<long, int> multiplicity; // round(2 * collective energy) -> count
    for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i) {
        const double coll = dec.eigenvalues(i) + shift;
        multiplicity[std::lround(2.0 * coll)]++;
    }
    // s = 3, 2, 1, 0 -> energies 12, 6, 2, 0
    REQUIRE(multiplicity.size() == 4);
    std::map<long, long long> expected; // from N_k (2s+1)
    const auto table = build_sector_table(p);
    for (const auto& lv : table.entries)
        expected[std::lround(2.0 * lv.energy)] += lv.degeneracy;
    for (const auto& [key, count] : multiplicity) CHECK(expected[key] == count);

    // N_k = degeneracy / (2s+1) must be (1, 5, 9, 5) for k = 0..3
    CHECK(multiplicity[24] / 7 == 1);
    CHECK(multiplicity[12] / 5 == 5);
    CHECK(multiplicity[4] / 3 == 9);
    CHECK(multiplicity[0] / 1 == 5);
}

TEST_CASE("dimension closure holds for all supported N") {
    for (int n = 2; n <= 20; ++n) {
        const auto t = build_sector_table({n, 0.7, -0.3, 0.2, 1.0});
        long long dim = 0;
        for (const auto& lv : t.entries) dim += lv.degeneracy;
        CHECK(dim == (1LL << n));
    }
}

TEST_CASE("partition function matches the 4x4 oracle trace at N=2") {
    SECTION("J = Delta = 1, B = 0, beta = 1: Z = 3 e^-2 + 1") {
        const ModelParams p{2, 1.0, 1.0, 0.0, 1.0};
        const auto t = build_sector_table(p);
        const double z = unshifted_partition(t, 1.0);
        CHECK(z == Catch::Approx(3.0 * std::exp(-2.0) + 1.0).epsilon(1e-14));

        const auto dec = symmetric_eigendecomposition(build_full_hamiltonian(p).matrix);
        double z_oracle = 0.0;
        for (Eigen::Index i = 0; i < 4; ++i)
            z_oracle += std::exp(-(dec.eigenvalues(i) + collective_shift(p)));
        CHECK(z == Catch::Approx(z_oracle).epsilon(1e-12));
    }
    SECTION("J = Delta = 1, B = 2, beta = 1: Z = e^-2 (e^2 + e^-2 + 1) + 1") {
        const ModelParams p{2, 1.0, 1.0, 2.0, 1.0};
        const auto t = build_sector_table(p);
        const double z = unshifted_partition(t, 1.0);
        const double expected = std::exp(-2.0) * (std::exp(2.0) + std::exp(-2.0) + 1.0) + 1.0;
        CHECK(z == Catch::Approx(expected).epsilon(1e-14));

        const auto dec = symmetric_eigendecomposition(build_full_hamiltonian(p).matrix);
        double z_oracle = 0.0;
        for (Eigen::Index i = 0; i < 4; ++i)
            z_oracle += std::exp(-(dec.eigenvalues(i) + collective_shift(p)));
        CHECK(z == Catch::Approx(z_oracle).epsilon(1e-12));
    }
}

TEST_CASE("infinite-temperature partition function approaches 2^N") {
    for (const int n : {2, 5, 11}) {
        const ModelParams p{n, 1.3, -0.7, 0.4, 1e-8};
        const auto t = build_sector_table(p);
        const double z = unshifted_partition(t, 1e-8);
        CHECK(z == Catch::Approx(std::pow(2.0, n)).epsilon(1e-6));
    }
}

TEST_CASE("<S_z> vanishes identically at B = 0") {
    for (const int n : {2, 3, 7, 12}) {
        const auto t = build_sector_table({n, -1.4, 0.9, 0.0, 1.0});
        for (const double beta : {0.07, 1.0, 25.0}) {
            const auto [sz, sz2] = expectation_sz_moments(t, beta);
            CHECK(sz == 0.0); // exact, by paired accumulation
            CHECK(sz2 >= 0.0);
        }
    }
}

TEST_CASE("infinite-temperature moments at N=2") {
    const auto t = build_sector_table({2, 1.0, 1.0, 0.0, 1.0});
    const auto [sz, sz2] = expectation_sz_moments(t, 1e-10);
    CHECK(sz == 0.0);
    CHECK(sz2 == Catch::Approx(0.5).epsilon(1e-8));
    CHECK(expectation_transverse(t, 1e-10) == Catch::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("transverse expectation vanishes in the singlet ground state") {
    const auto t = build_sector_table({2, 1.0, 1.0, 0.0, 1.0});
    CHECK(expectation_transverse(t, 500.0) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("moments match the oracle thermal state") {
    SECTION("<S_z> at N=2, J = Delta = 1, B = 2, beta = 2") {
        const ModelParams p{2, 1.0, 1.0, 2.0, 2.0};
        const auto [sz, sz2] = expectation_sz_moments(build_sector_table(p), 2.0);
        const auto rho = thermal_state(build_full_hamiltonian(p), 2.0);
        const auto mz = collective_sz_values(2);
        CHECK(std::abs(sz - rho.diagonal().dot(mz)) < 1e-12);
        CHECK(std::abs(sz2 - rho.diagonal().dot(mz.cwiseProduct(mz))) < 1e-12);
    }
    SECTION("<Sx^2+Sy^2> at N=3, J=-1, Delta=0, B=0, beta=1") {
        const ModelParams p{3, -1.0, 0.0, 0.0, 1.0};
        const double trans = expectation_transverse(build_sector_table(p), 1.0);
        const auto rho = thermal_state(build_full_hamiltonian(p), 1.0);
        const double oracle = rho.cwiseProduct(collective_transverse_matrix(3)).sum();
        CHECK(std::abs(trans - oracle) < 1e-12);
    }
}

TEST_CASE("observables are invariant under a constant energy shift") {
    const ModelParams p{5, -0.8, 1.7, 0.6, 3.0};
    auto t = build_sector_table(p);
    const double z_ref = partition_function(t, 3.0);
    const auto moments_ref = expectation_sz_moments(t, 3.0);
    const double trans_ref = expectation_transverse(t, 3.0);

    for (auto& lv : t.entries) lv.energy += 7.3;
    t.ground_energy += 7.3;

    CHECK(partition_function(t, 3.0) == z_ref); // bit for bit
    const auto moments = expectation_sz_moments(t, 3.0);
    CHECK(moments.first == moments_ref.first);
    CHECK(moments.second == moments_ref.second);
    CHECK(expectation_transverse(t, 3.0) == trans_ref);
}

TEST_CASE("oracle equivalence of moments over random draws") {
    Rng rng(91);
    for (int n = 2; n <= 6; ++n) {
        for (int d = 0; d < 8; ++d) {
            const ModelParams p{n, rng.uniform(-3.0, 3.0), rng.uniform(-2.0, 2.0),
                                rng.uniform(-3.0, 3.0), rng.uniform(0.1, 30.0)};
            const auto t = build_sector_table(p);
            const auto [sz, sz2] =
                expectation_sz_moments(t, p.inverse_temperature);
            const double trans = expectation_transverse(t, p.inverse_temperature);
            const auto rho =
                thermal_state(build_full_hamiltonian(p), p.inverse_temperature);
            const auto mz = collective_sz_values(n);
            CHECK(std::abs(sz - rho.diagonal().dot(mz)) < 1e-10);
            CHECK(std::abs(sz2 - rho.diagonal().dot(mz.cwiseProduct(mz))) < 1e-10);
            const double trans_o =
                rho.cwiseProduct(collective_transverse_matrix(n)).sum();
            CHECK(std::abs(trans - trans_o) < 1e-10);
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(build_sector_table({1, 1.0, 1.0, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_sector_table({21, 1.0, 1.0, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_sector_table({4, 1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_sector_table({4, 1.0, 1.0, 0.0, -2.0}), std::invalid_argument);
    const auto t = build_sector_table({2, 1.0, 1.0, 0.0, 1.0});
    CHECK_THROWS_AS(partition_function(t, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(expectation_sz_moments(t, -1.0), std::invalid_argument);
}
