#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spinrot/two_spin.hpp"

using namespace spinrot;

namespace {

StateVector random_state(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    StateVector v(dim);
    for (int k = 0; k < dim; ++k) v(k) = {g(rng), g(rng)};
    return v.normalized();
}

}  // namespace

TEST_CASE("J = 1/2 |dd> energy") {
    const ComplexMatrix h = build_hrot({SpinJ(1), 3.0, 0.0, 0.0});
    const StateVector dd = TwoSpinState::product(SpinJ(1), 0, 0).amplitudes;
    CHECK((h * dd + 3.5 * dd).norm() < 1e-15);
}

TEST_CASE("J = 1, Delta = 0 M = 0 sector energies are 1 +- sqrt 3") {
    const auto es = eig_hermitian<double>(build_hrot_symmetric({SpinJ(2), 0.0, 0.0, 0.0}));
    int hits = 0;
    for (int k = 0; k < es.values.size(); ++k)
        for (double e : {1 + std::sqrt(3.0), 1 - std::sqrt(3.0)}) hits += std::abs(es.values(k) - e) < 1e-12;
    CHECK(hits == 2);
}

TEST_CASE("exchange symmetry and the symmetric sector") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-2, 4), pos(0, 3);
    for (int two_j : {1, 2, 3, 4, 6}) {
        const SpinJ j(two_j);
        const int d = j.dim();
        const TwoSpinConfig cfg{j, u(rng), pos(rng), u(rng)};
        const ComplexMatrix h = build_hrot(cfg), p = build_swap(j), v = symmetric_sector_isometry(j);
        CHECK(max_asymmetry(h) < 1e-14);
        CHECK((h * p - p * h).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((p * p - ComplexMatrix::Identity(d * d, d * d)).cwiseAbs().maxCoeff() == 0.0);
        CHECK(v.cols() == d * (d + 1) / 2);
        CHECK((v.adjoint() * v - ComplexMatrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff() < 1e-15);
        CHECK((p * v - v).cwiseAbs().maxCoeff() == 0.0);
        CHECK(std::abs(v(pair_index(j, 0, 0), 0) - 1.0) == 0.0);

        // symmetric spectrum is the P = +1 part of the full one
        const auto full = eig_hermitian<double>(h);
        const auto sym = eig_hermitian<double>(build_hrot_symmetric(cfg));
        std::vector<double> expected;
        for (int k = 0; k < full.values.size(); ++k) {
            const StateVector c = full.vectors.col(k);
            if ((p * c - c).norm() < 1e-8) expected.push_back(full.values(k));
        }
        if (static_cast<Eigen::Index>(expected.size()) == sym.values.size())
            for (std::size_t k = 0; k < expected.size(); ++k) CHECK(sym.values(k) == doctest::Approx(expected[k]).epsilon(1e-10));
        // degenerate levels can mix sectors; the traces still agree
        CHECK(build_hrot_symmetric(cfg).trace().real() == doctest::Approx((h * (ComplexMatrix::Identity(d * d, d * d) + p) / 2).trace().real()).epsilon(1e-10));
    }
}

TEST_CASE("reduced density and entropy against loop oracle") {
    std::mt19937_64 rng(9);
    for (int two_j : {1, 2, 3, 5}) {
        const SpinJ j(two_j);
        const int d = j.dim();
        for (int rep = 0; rep < 5; ++rep) {
            const StateVector psi = random_state(d * d, rng);
            const auto red = reduce_and_entropy(psi, j);
            CHECK((red.rho - oracle::partial_trace_b(psi, d)).cwiseAbs().maxCoeff() < 1e-14);
            CHECK(red.entropy == doctest::Approx(oracle::entropy(red.rho, d)).epsilon(1e-10));
            CHECK(red.spectrum.minCoeff() > -1e-14);
            CHECK(red.rho.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(max_asymmetry(red.rho) < 1e-15);
        }
        StateVector maxent = StateVector::Zero(d * d);
        for (int a = 0; a < d; ++a) maxent(pair_index(j, a, d - 1 - a)) = 1 / std::sqrt(double(d));
        CHECK(entanglement_entropy(maxent, j) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(entanglement_entropy(TwoSpinState::product(j, 1, 0).amplitudes, j) == 0.0);
    }
    CHECK(entanglement_entropy(plus_state(SpinJ(1)), SpinJ(1)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(reduce(StateVector::Ones(5), SpinJ(1)), ValidationError);
}

TEST_CASE("ground state") {
    CHECK_THROWS_AS(ground_state({SpinJ(1), 1.0, 1.0, 0.5}), ValidationError);
    const GroundState zero = ground_state({SpinJ(1), 0.0, 0.0, 0.0});
    CHECK(zero.degenerate);
    CHECK(zero.energy == doctest::Approx(-0.5));
    const GroundState gs = ground_state({SpinJ(2), 0.3, 1.2, 0.0});
    CHECK(!gs.degenerate);
    CHECK(gs.gap > kDegeneracyGap);
    const ComplexMatrix h = build_hrot({SpinJ(2), 0.3, 1.2, 0.0});
    CHECK((h * gs.state.amplitudes - gs.energy * gs.state.amplitudes).norm() < 1e-12);
    CHECK(gs.state.exchange_symmetric());
}

TEST_CASE("two-spin evolution channels") {
    const SpinJ j(2);
    const TwoSpinConfig cfg{j, 0.4, 0.3, 1.1};
    const auto times = linspace(0, 30, 61);
    const TimeSeries ts = evolve_two_spin(cfg, TwoSpinState::product(j, 0, 0), times, {true});
    ts.validate();
    CHECK(ts.channel("P_init")[0] == doctest::Approx(1.0));
    CHECK(ts.channel("S_A")[0] < 1e-12);
    const auto es = eig_hermitian<double>(build_hrot(cfg));
    for (std::size_t k = 0; k < times.size(); ++k) {
        CHECK(ts.channel("norm")[k] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ts.channel("energy")[k] == doctest::Approx(ts.channel("energy")[0]).epsilon(1e-12));
        double total = 0;
        for (int a = 0; a < j.dim(); ++a)
            for (int b = 0; b < j.dim(); ++b) {
                const std::string m1 = std::to_string(a - 1), m2 = std::to_string(b - 1);
                total += ts.channel("P(" + m1 + "," + m2 + ")")[k];
            }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        const StateVector psi = apply_propagator(es, TwoSpinState::product(j, 0, 0).amplitudes, times[k]);
        CHECK(ts.channel("S_A")[k] == doctest::Approx(oracle::entropy(oracle::partial_trace_b(psi, 3), 3)).epsilon(1e-10));
        CHECK(ts.channel("P_plus")[k] == doctest::Approx(std::norm(plus_state(j).dot(psi))).epsilon(1e-12));
    }
    CHECK_THROWS_AS(evolve_two_spin(cfg, TwoSpinState::product(SpinJ(1), 0, 0), times), ValidationError);
    TwoSpinState bad = TwoSpinState::product(j, 0, 0);
    bad.amplitudes *= 2;
    CHECK_THROWS_AS(evolve_two_spin(cfg, bad, times), ValidationError);
    CHECK_THROWS_AS(evolve_two_spin(cfg, TwoSpinState::product(j, 0, 0), {1.0, 0.5}), ValidationError);
    CHECK_THROWS_AS(TwoSpinState::product(j, 3, 0), ValidationError);
    CHECK_THROWS_AS(build_hrot({j, 0.0, -0.1, 0.0}), ValidationError);
}

TEST_CASE("phase maps are independent of the worker count") {
    const auto bz = linspace(0, 1, 7), bp = linspace(0, 3, 9);
    const auto a = gs_phase_maps(SpinJ(2), bz, bp, 1);
    const auto b = gs_phase_maps(SpinJ(2), bz, bp, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].beta_z == b[k].beta_z);
        CHECK(a[k].beta_perp == b[k].beta_perp);
        CHECK(a[k].s_a == b[k].s_a);
        CHECK(a[k].jx_over_2j == b[k].jx_over_2j);
    }
    CHECK(a[1].beta_perp == bp[1]);
    CHECK(a[bp.size()].beta_z == bz[1]);
    CHECK_THROWS_AS(gs_phase_maps(SpinJ(1), {}, bp, 1), ValidationError);
}
