#include "spinrot/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spinrot/kink.hpp"
#include "spinrot/propagator.hpp"
#include "spinrot/resonance.hpp"
#include "spinrot/single_analytic.hpp"
#include "spinrot/two_spin.hpp"

namespace spinrot {

namespace {

const int kTwoJs[] = {1, 2, 3, 4, 16};

double norm_inf(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

StateVector random_state(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    StateVector v(dim);
    for (int k = 0; k < dim; ++k) v(k) = {g(rng), g(rng)};
    return v.normalized();
}

FieldConfig random_field(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.05, 2.0);
    return {u(rng), pos(rng), u(rng)};
}

TwoSpinConfig random_pair(SpinJ j, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 4.0), pos(0.05, 2.0);
    return {j, u(rng), pos(rng), u(rng)};
}

// exp(-i Omega t (J1z + J2z)) psi
StateVector pair_to_lab(const StateVector& psi, SpinJ j, double omega, double t) {
    StateVector out = psi;
    const int d = j.dim();
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) out(a * d + b) *= std::polar(1.0, -omega * t * (j.m(a) + j.m(b)));
    return out;
}

}  // namespace

std::vector<CheckResult> invariant_checks(unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ut(0.0, 20.0);
    double comm = 0, casimir = 0, unitary = 0, norm_spec = 0, norm_rk4 = 0, psd = 0, trace = 0, swap = 0, frame = 0,
           energy = 0;

    for (int two_j : kTwoJs) {
        const SpinJ j(two_j);
        const ComplexMatrix jx = build_jx(j), jy = build_jy(j), jz = build_jz(j);
        const cplx i(0, 1);
        comm = std::max({comm, norm_inf(jx * jy - jy * jx - i * jz), norm_inf(jy * jz - jz * jy - i * jx),
                         norm_inf(jz * jx - jx * jz - i * jy)});
        const ComplexMatrix c = jx * jx + jy * jy + jz * jz;
        casimir = std::max(casimir, norm_inf(c - j.value() * (j.value() + 1) * ComplexMatrix::Identity(j.dim(), j.dim())));

        for (int rep = 0; rep < 4; ++rep) {
            const FieldConfig f = random_field(rng);
            const auto es = eig_hermitian<double>(rotating_hamiltonian(j, f));
            const ComplexMatrix u = propagator(es, ut(rng));
            unitary = std::max(unitary, norm_inf(u.adjoint() * u - ComplexMatrix::Identity(j.dim(), j.dim())));
            const StateVector psi = random_state(j.dim(), rng);
            const double t = ut(rng);
            norm_spec = std::max(norm_spec, std::abs(evolve(j, f, psi, {Frame::rotating, Method::spectral}, t).norm() - 1));
        }
    }

    {
        // rk4 at a step far below the accepted maximum, over a few periods
        const SpinJ j(4);
        const FieldConfig f{1.0, 0.3, 0.9};
        const double dt = rk4_max_step(f) / 50;
        const StateVector psi = random_state(j.dim(), rng);
        norm_rk4 = std::abs(evolve(j, f, psi, {Frame::lab, Method::rk4, dt}, 4 * 2 * kPi / f.omega_prime()).norm() - 1);
    }

    for (int two_j : {1, 2, 3, 4}) {
        const SpinJ j(two_j);
        const ComplexMatrix p = build_swap(j);
        for (int rep = 0; rep < 3; ++rep) {
            const TwoSpinConfig cfg = random_pair(j, rng);
            const ComplexMatrix h = build_hrot(cfg);
            swap = std::max(swap, norm_inf(h * p - p * h));
            const auto es = eig_hermitian<double>(h);
            StateVector psi = random_state(j.dim() * j.dim(), rng);
            psi = (psi + p * psi).normalized();
            const double e0 = expectation(h, psi);
            for (int k = 0; k < 5; ++k) {
                const double t = ut(rng);
                const StateVector phi = apply_propagator(es, psi, t);
                swap = std::max(swap, (p * phi - phi).norm());
                energy = std::max(energy, std::abs(expectation(h, phi) - e0));
                const auto red = reduce_and_entropy(phi, j);
                psd = std::max(psd, -std::min(0.0, red.spectrum.minCoeff()));
                trace = std::max(trace, std::abs(red.rho.trace() - 1.0));
                const StateVector lab = pair_to_lab(phi, j, cfg.omega_over_gd, t);
                frame = std::max(frame, std::abs(entanglement_entropy(lab, j) - red.entropy));
            }
        }
    }

    return {{"invariants", "commutators [J_a, J_b] = i eps J_c", comm, 1e-12},
            {"invariants", "Casimir J^2 = J(J+1)", casimir, 1e-10},
            {"invariants", "propagator unitarity", unitary, 1e-12},
            {"invariants", "norm conservation (spectral)", norm_spec, 1e-12},
            {"invariants", "norm conservation (rk4)", norm_rk4, 1e-9},
            {"invariants", "reduced density PSD", psd, 1e-12},
            {"invariants", "reduced density trace", trace, 1e-12},
            {"invariants", "exchange symmetry preserved", swap, 1e-12},
            {"invariants", "S_A frame independence", frame, 1e-12},
            {"invariants", "energy conservation (rotating frame)", energy, 1e-9}};
}

std::vector<CheckResult> oracle_checks(unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ut(0.0, 30.0);
    double pops = 0, ground = 0, p2j = 0, spin = 0;

    for (int two_j : {1, 2, 4, 16}) {
        const SpinJ j(two_j);
        for (int rep = 0; rep < 5; ++rep) {
            const FieldConfig f = random_field(rng);
            const SpectralPropagator prop(j, f);
            const StateVector down = basis_state<double>(j.dim(), 0);
            const StateVector g = initial_state(j, InitialSpec::ground_of_initial(), f);
            const ComplexMatrix jx = build_jx(j), jy = build_jy(j), jz = build_jz(j);
            for (int k = 0; k < 4; ++k) {
                const double t = ut(rng);
                const StateVector a = prop.lab(down, t);
                const auto analytic = populations_stretched(j, f, t);
                for (int m = 0; m < j.dim(); ++m) pops = std::max(pops, std::abs(std::norm(a(m)) - analytic[m]));
                const StateVector b = prop.lab(g, t);
                ground = std::max(ground, std::abs(std::norm(g.dot(prop.rotating(g, t))) - pgs(j, f, t)));
                p2j = std::max(p2j, std::abs(std::norm(b(j.dim() - 1)) - p2j_ground_init(j, f, t)));
                const Eigen::Vector3d mean = angular_momentum(j, InitialSpec::z_sublevel(0), f, t);
                const Eigen::Vector3d num(expectation(jx, a), expectation(jy, a), expectation(jz, a));
                spin = std::max(spin, (mean - num).cwiseAbs().maxCoeff());
            }
        }
    }

    double kink = 0;
    {
        const TwoSpinConfig cfg{SpinJ(1), kKinkBetaZ, kKinkBetaPerp, kKinkOmega};
        const auto es = eig_hermitian<double>(build_hrot(cfg));
        const StateVector dd = TwoSpinState::product(SpinJ(1), 0, 0).amplitudes;
        const StateVector plus = plus_state(SpinJ(1));
        const double period = 2 * kPi / std::sqrt(7.0);
        for (int k = 0; k <= 200; ++k) {
            const double t = 2 * period * k / 200;
            const StateVector psi = apply_propagator(es, dd, t);
            const KinkPopulations kp = kink_populations(t);
            const auto [lp, lm] = kink_lambdas(t);
            const auto red = reduce_and_entropy(psi, SpinJ(1));
            kink = std::max({kink, std::abs(std::norm(psi(0)) - kp.p_dd), std::abs(std::norm(plus.dot(psi)) - kp.p_plus),
                             std::abs(std::norm(psi(3)) - kp.p_uu), std::abs(red.spectrum.maxCoeff() - std::max(lp, lm)),
                             std::abs(red.spectrum.minCoeff() - std::min(lp, lm))});
        }
    }

    double catalog = 0;
    for (int two_j : {1, 2, 3, 4, 6}) {
        const SpinJ j(two_j);
        std::uniform_real_distribution<double> ub(-2.0, 4.0);
        const double bz = ub(rng);
        for (const auto& item : resonance_catalog(j, bz)) {
            const ComplexMatrix h = build_hrot({j, bz, 0.0, item.omega_over_gd});
            const StateVector ref = TwoSpinState::product(j, 0, 0).amplitudes;
            const StateVector hv = h * item.target_state;
            const double e_target = item.target_state.dot(hv).real();
            catalog = std::max({catalog, std::abs(e_target - expectation(h, ref)), (hv - e_target * item.target_state).norm()});
        }
    }

    return {{"oracles", "populations |m_j=-J> analytic vs spectral", pops, 1e-9},
            {"oracles", "P_GS analytic vs spectral", ground, 1e-9},
            {"oracles", "P_2J from ground analytic vs spectral", p2j, 1e-9},
            {"oracles", "<J> analytic vs spectral", spin, 1e-9},
            {"oracles", "kink closed form vs diagonalization", kink, 1e-10},
            {"oracles", "resonance catalog degeneracies", catalog, 1e-10}};
}

std::vector<CheckResult> run_selftest(unsigned seed) {
    auto out = invariant_checks(seed);
    auto more = oracle_checks(seed + 4);
    out.insert(out.end(), more.begin(), more.end());
    return out;
}

}  // namespace spinrot
