#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spinrot/kink.hpp"
#include "spinrot/resonance.hpp"
#include "spinrot/two_spin.hpp"

using namespace spinrot;

TEST_CASE("closed-form point") {
    const KinkSolution k = kink_eigensystem(kKinkBetaZ, kKinkOmega);
    CHECK(k.beta_perp == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(k.alpha == doctest::Approx(std::sqrt(7.0)).epsilon(1e-15));
    CHECK(!k.boundary);
    const double t = kPi / std::sqrt(7.0);
    const KinkPopulations p = kink_populations(t);
    CHECK(p.p_dd == doctest::Approx(1.0 / 49).epsilon(1e-13));
    CHECK(p.p_plus == doctest::Approx(32.0 / 49).epsilon(1e-13));
    CHECK(p.p_uu == doctest::Approx(16.0 / 49).epsilon(1e-13));
    for (double s : {0.0, 0.3, 1.7, 5.2}) {
        CHECK((k.amplitudes(s) - kink_state(s)).norm() < 1e-13);
        const Eigen::Vector3cd a = kink_state(s);
        const KinkPopulations q = kink_populations(s);
        CHECK(q.p_dd == doctest::Approx(std::norm(a(0))).epsilon(1e-13));
        CHECK(q.p_plus == doctest::Approx(std::norm(a(1))).epsilon(1e-13));
        CHECK(q.p_uu == doctest::Approx(std::norm(a(2))).epsilon(1e-13));
        const auto [lp, lm] = kink_lambdas(s);
        const auto [ap, am] = lambdas_from_amplitudes(a(0), a(1), a(2));
        CHECK(lp == doctest::Approx(ap).epsilon(1e-12));
        CHECK(lm == doctest::Approx(am).epsilon(1e-12));
    }
}

TEST_CASE("analytic trace matches diagonalization over two periods") {
    const TwoSpinConfig cfg{SpinJ(1), kKinkBetaZ, kKinkBetaPerp, kKinkOmega};
    const auto es = eig_hermitian<double>(build_hrot(cfg));
    const StateVector dd = TwoSpinState::product(SpinJ(1), 0, 0).amplitudes;
    const double period = 2 * kPi / std::sqrt(7.0);
    for (int n = 0; n <= 400; ++n) {
        const double t = 2 * period * n / 400;
        const StateVector psi = apply_propagator(es, dd, t);
        CHECK((psi - kink_eigensystem(kKinkBetaZ, kKinkOmega).state(t)).norm() < 1e-10);
        const auto red = reduce_and_entropy(psi, SpinJ(1));
        CHECK(red.entropy == doctest::Approx(kink_entropy(t)).epsilon(1e-9));
    }
}

TEST_CASE("populations carry a single frequency") {
    const int n = 1024;
    const double period = 2 * kPi / std::sqrt(7.0);
    std::vector<double> pdd(n), puu(n);
    for (int k = 0; k < n; ++k) {
        const KinkPopulations p = kink_populations(4 * period * k / n);
        pdd[k] = p.p_dd;
        puu[k] = p.p_uu;
    }
    CHECK(oracle::harmonic_power_fraction(pdd, 4) > 0.999);
    CHECK(oracle::harmonic_power_fraction(puu, 4) > 0.999);
}

TEST_CASE("equal gaps at random criterion points") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-3, 3);
    int tried = 0;
    while (tried < 30) {
        const double bz = u(rng), om = u(rng);
        if (!kink_criterion(bz, om)) continue;
        ++tried;
        const KinkSolution k = kink_eigensystem(bz, om);
        const auto es = eig_hermitian<double>(build_hrot_symmetric({SpinJ(1), bz, k.beta_perp, om}));
        CHECK(std::abs((es.values(1) - es.values(0)) - (es.values(2) - es.values(1))) < 1e-10);
        CHECK(es.values(0) == doctest::Approx(k.e1).epsilon(1e-10));
        CHECK(es.values(2) == doctest::Approx(k.e4).epsilon(1e-10));
        const auto full = eig_hermitian<double>(build_hrot({SpinJ(1), bz, k.beta_perp, om}));
        const StateVector dd = TwoSpinState::product(SpinJ(1), 0, 0).amplitudes;
        for (double t : {0.4, 2.5, 9.0}) CHECK((apply_propagator(full, dd, t) - k.state(t)).norm() < 1e-9);
    }
}

TEST_CASE("boundary 4 delta^2 = 1 uses basis states") {
    for (double om : {2.5, 3.5}) {
        const KinkSolution k = kink_eigensystem(3.0, om);
        CHECK(k.boundary);
        CHECK(k.beta_perp == 0.0);
        const auto es = eig_hermitian<double>(build_hrot({SpinJ(1), 3.0, 0.0, om}));
        const StateVector dd = TwoSpinState::product(SpinJ(1), 0, 0).amplitudes;
        for (double t : {0.0, 1.0, 7.5}) CHECK((apply_propagator(es, dd, t) - k.state(t)).norm() < 1e-12);
    }
}

TEST_CASE("rejections") {
    CHECK_THROWS_AS(kink_eigensystem(3.0, 3.1), ValidationError);
    CHECK_THROWS_AS(kink_eigensystem(3.0, 4.5, 1.9), ValidationError);
    CHECK_NOTHROW(kink_eigensystem(3.0, 4.5, 2.0));
    CHECK_THROWS_AS(kink_eigensystem(NAN, 4.5), ValidationError);
}
