// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance            all criteria
//   acceptance --only N   criterion N

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "spinrot/kink.hpp"
#include "spinrot/propagator.hpp"
#include "spinrot/resonance.hpp"
#include "spinrot/selftest.hpp"
#include "spinrot/single_analytic.hpp"
#include "spinrot/two_spin.hpp"
#include "spinrot/weak_ddi.hpp"

using namespace spinrot;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1
Outcome single_spin_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> wz(-2, 2), wp(0.01, 2), om(-2, 2), ut(0, 50), ang(0, kPi);
    double worst = 0;
    std::string where;
    auto rec = [&](double err, const char* what) {
        if (err > worst) {
            worst = err;
            where = what;
        }
    };
    for (int two_j : {1, 2, 4, 16}) {
        const SpinJ j(two_j);
        const ComplexMatrix jx = build_jx(j), jy = build_jy(j), jz = build_jz(j);
        for (int c = 0; c < 50; ++c) {
            const FieldConfig f{wz(rng), wp(rng), om(rng)};
            const double theta0 = ang(rng);
            const SpectralPropagator prop(j, f);
            const StateVector down = basis_state<double>(j.dim(), 0);
            const StateVector tilted = initial_state(j, InitialSpec::tilted(theta0, 0), f);
            const StateVector ground = initial_state(j, InitialSpec::ground_of_initial(), f);
            for (int k = 0; k < 20; ++k) {
                const double t = ut(rng);
                const StateVector a = prop.lab(down, t);
                const auto pops = populations_stretched(j, f, t);
                for (int m = 0; m < j.dim(); ++m) rec(std::abs(pops[m] - std::norm(a(m))), "populations");
                const Eigen::Vector3d ja = angular_momentum(j, InitialSpec::z_sublevel(0), f, t);
                rec((ja - Eigen::Vector3d(expectation(jx, a), expectation(jy, a), expectation(jz, a))).cwiseAbs().maxCoeff(),
                    "<J_a>");

                const StateVector b = prop.lab(tilted, t);
                rec(std::abs(survival_general(j, theta0, f, t) - std::norm(tilted.dot(b))), "survival");

                const StateVector g = prop.lab(ground, t);
                rec(std::abs(pgs(j, f, t) - std::norm(ground.dot(prop.rotating(ground, t)))), "P_GS");
                rec(std::abs(p2j_ground_init(j, f, t) - std::norm(g(j.dim() - 1))), "P_2J");
                const double ez = expectation(jz, g);
                const double var = std::max(0.0, expectation<double>(jz * jz, g) - ez * ez);
                rec(std::abs(spread_mj(j, f, t) - std::sqrt(var)), "spread");
                const Eigen::Vector3d jg = angular_momentum(j, InitialSpec::ground_of_initial(), f, t);
                rec((jg - Eigen::Vector3d(expectation(jx, g), expectation(jy, g), expectation(jz, g))).cwiseAbs().maxCoeff(),
                    "<J_a> ground");
            }
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-9 && secs < 30,
            "max |analytic - numeric| = " + fmt(worst) + " (" + where + "), " + fmt(secs) + " s"};
}

// 2
Outcome resonant_transfer() {
    const SpinJ j(16);
    const FieldConfig f{1.0, 0.1, 1.0};
    const StateVector psi = SpectralPropagator(j, f).lab(basis_state<double>(j.dim(), 0), kPi / 0.1);
    const double top = std::norm(psi(j.dim() - 1));
    const double smin = survival_min_stretched(j, f);
    return {top >= 1 - 1e-8 && std::abs(smin) <= 1e-12,
            "P(m=+8) at t=pi/omega_perp = " + fmt(top) + ", 1-P = " + fmt(1 - top) + ", S_min = " + fmt(smin)};
}

// 3
Outcome ground_init_transfer() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto omegas = linspace(0, 10, 60);
    const double cell = omegas[1] - omegas[0];
    double worst_p2j = 1, worst_pgs = 0, worst_shift = 0;
    for (int two_j : {2, 8}) {
        const SpinJ j(two_j);
        for (int row = 1; row <= 60; ++row) {
            const double b = 3.0 * row / 60;
            const double btot = std::sqrt(1 + b * b);
            const FieldConfig on_p2j{1.0, b, btot};
            const FieldConfig on_pgs{1.0, b, btot * btot};
            const SpectralPropagator prop_p2j(j, on_p2j), prop_pgs(j, on_pgs);
            const StateVector g = initial_state(j, InitialSpec::ground_of_initial(), on_p2j);
            const double per1 = 2 * kPi / on_p2j.omega_prime(), per2 = 2 * kPi / on_pgs.omega_prime();
            double p2j_num = 0, pgs_num = 1;
            for (int k = 0; k < 2001; ++k) {
                p2j_num = std::max(p2j_num, std::norm(prop_p2j.lab(g, per1 * k / 2000)(j.dim() - 1)));
                const StateVector r = prop_pgs.rotating(g, per2 * k / 2000);
                pgs_num = std::min(pgs_num, std::norm(g.dot(r)));
            }
            worst_p2j = std::min({worst_p2j, p2j_num, p2j_ground_init_max(j, on_p2j)});
            worst_pgs = std::max({worst_pgs, pgs_num, pgs_min(j, on_pgs)});

            // grid argmax / argmin of the row lands within one cell of the line
            double best = -1, best_w = 0, low = 2, low_w = 0;
            for (double w : omegas) {
                const double p = p2j_ground_init_max(j, {1.0, b, w});
                if (p > best) best = p, best_w = w;
                const double q = pgs_min(j, {1.0, b, w});
                if (q < low) low = q, low_w = w;
            }
            worst_shift = std::max({worst_shift, std::abs(best_w - btot) / cell, std::abs(low_w - btot * btot) / cell});
        }
    }
    const double secs = seconds_since(t0);
    return {worst_p2j >= 0.999 && worst_pgs <= 1e-3 && worst_shift <= 1.0 && secs < 60,
            "min P_2J,max on line = " + fmt(worst_p2j) + ", max P_GS,min on line = " + fmt(worst_pgs) +
                ", worst grid offset = " + fmt(worst_shift) + " cells, " + fmt(secs) + " s"};
}

// 4
Outcome two_spin_resonances() {
    const SpinJ j(1);
    const auto times = linspace(0, 100, 4001);
    auto maxof = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
    const TimeSeries a = evolve_two_spin({j, 3.0, 0.5, 3.0}, TwoSpinState::product(j, 0, 0), times);
    const TimeSeries b = evolve_two_spin({j, 3.0, 0.5, 4.5}, TwoSpinState::product(j, 0, 0), times);
    const double puu = maxof(a.channel("P_up_up")), sa3 = maxof(a.channel("S_A"));
    const double pplus = maxof(b.channel("P_plus")), sa45 = maxof(b.channel("S_A"));
    return {puu >= 0.99 && sa3 >= 0.99 && pplus >= 0.99 && sa45 >= 0.99,
            "Omega=3: max P_uu = " + fmt(puu) + ", max S_A = " + fmt(sa3) + "; Omega=4.5: max P_+ = " + fmt(pplus) +
                ", max S_A = " + fmt(sa45)};
}

// 5
Outcome kink_trace() {
    const SpinJ j(1);
    const auto es = eig_hermitian<double>(build_hrot({j, kKinkBetaZ, kKinkBetaPerp, kKinkOmega}));
    const StateVector dd = TwoSpinState::product(j, 0, 0).amplitudes;
    const StateVector plus = plus_state(j);
    const double period = 2 * kPi / std::sqrt(7.0);
    double worst = 0;
    for (int k = 0; k <= 2000; ++k) {
        const double t = 2 * period * k / 2000;
        const StateVector psi = apply_propagator(es, dd, t);
        const KinkPopulations p = kink_populations(t);
        const auto [lp, lm] = kink_lambdas(t);
        const auto red = reduce_and_entropy(psi, j);
        worst = std::max({worst, std::abs(std::norm(psi(0)) - p.p_dd), std::abs(std::norm(plus.dot(psi)) - p.p_plus),
                          std::abs(std::norm(psi(3)) - p.p_uu), std::abs(red.spectrum(1) - lp),
                          std::abs(red.spectrum(0) - lm)});
    }
    // 4 periods, 1024 samples: the fundamental sits in bin 4
    const int n = 1024;
    std::vector<double> pdd(n), pp(n), puu(n);
    for (int k = 0; k < n; ++k) {
        const StateVector psi = apply_propagator(es, dd, 4 * period * k / n);
        pdd[k] = std::norm(psi(0));
        pp[k] = std::norm(plus.dot(psi));
        puu[k] = std::norm(psi(3));
    }
    const double frac = std::min({oracle::harmonic_power_fraction(pdd, 4), oracle::harmonic_power_fraction(pp, 4),
                                  oracle::harmonic_power_fraction(puu, 4)});
    return {worst <= 1e-10 && frac >= 0.999,
            "max |numeric - closed form| = " + fmt(worst) + ", harmonic power fraction = " + fmt(frac)};
}

// 6
Outcome kink_consistency() {
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> u(-5, 5);
    double worst = 0;
    int done = 0;
    while (done < 100) {
        const double bz = u(rng), om = u(rng);
        const auto bp = kink_criterion(bz, om);
        if (!bp || *bp == 0) continue;
        ++done;
        const auto es = eig_hermitian<double>(build_hrot_symmetric({SpinJ(1), bz, *bp, om}));
        worst = std::max(worst, std::abs((es.values(1) - es.values(0)) - (es.values(2) - es.values(1))));
    }
    return {worst <= 1e-10, "max |(E3-E1)-(E4-E3)| over 100 points = " + fmt(worst)};
}

// 7
Outcome catalog_exactness() {
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> u(-5, 5);
    double worst = 0;
    int items = 0;
    for (int two_j : {2, 3, 4, 6}) {
        const SpinJ j(two_j);
        for (int rep = 0; rep < 10; ++rep) {
            const double bz = u(rng);
            for (const auto& r : resonance_catalog(j, bz)) {
                const ComplexMatrix h = build_hrot({j, bz, 0.0, r.omega_over_gd});
                const double e0 = expectation(h, TwoSpinState::product(j, 0, 0).amplitudes);
                const StateVector hv = h * r.target_state;
                worst = std::max({worst, std::abs(r.target_state.dot(hv).real() - e0), (hv - e0 * r.target_state).norm()});
                ++items;
            }
        }
    }
    return {worst <= 1e-10, std::to_string(items) + " items, max degeneracy defect = " + fmt(worst)};
}

// 8
Outcome scan_peaks() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream detail;
    for (int two_j : {2, 4}) {
        const SpinJ j(two_j);
        detail << "J=" << j.str() << ":";
        for (const auto& item : resonance_catalog(j, 0.0)) {
            if (item.id == ResonanceId::i || item.id == ResonanceId::ii) continue;
            ScanSpec spec;
            spec.j = j;
            spec.beta_z = 0;
            spec.beta_perp = 0.1;
            for (int k = -100; k <= 100; ++k) spec.omegas.push_back(item.omega_over_gd + 0.001 * k);
            const auto rows = scan_samax(spec);
            // tallest local maximum >= 0.05 inside +-0.05
            double peak = -1, at = 0, window_max = 0;
            for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
                if (std::abs(rows[k].omega_over_gd - item.omega_over_gd) > 0.05 + 1e-12) continue;
                window_max = std::max(window_max, rows[k].samax);
                if (rows[k].samax >= rows[k - 1].samax && rows[k].samax >= rows[k + 1].samax && rows[k].samax > peak)
                    peak = rows[k].samax, at = rows[k].omega_over_gd;
            }
            const bool found = peak >= 0.05;
            bool height_ok = true;
            if (item.id == ResonanceId::iii) height_ok = std::abs(peak - std::log(2.0) / std::log(double(j.dim()))) <= 0.02;
            ok = ok && found && height_ok;
            detail << " (" << to_string(item.id) << ") " << (found ? "peak " + fmt(peak) + " at " + fmt(at) : "no peak (window max " + fmt(window_max) + ")")
                   << " vs " << fmt(item.omega_over_gd) << (height_ok ? "" : " [height off]") << ";";
        }
    }
    const double secs = seconds_since(t0);
    detail << " " << fmt(secs) << " s";
    return {ok && secs < 300, detail.str()};
}

// 9
Outcome phase_maps() {
    std::vector<double> bp;
    for (int k = 1; k <= 400; ++k) bp.push_back(10.0 * k / 400);
    auto row_max = [&](int two_j, double bz) {
        double best = 0;
        for (const auto& c : gs_phase_maps(SpinJ(two_j), {bz}, bp, 1)) best = std::max(best, c.s_a);
        return best;
    };
    const double bell = row_max(1, 0.0);
    const double s1 = row_max(2, 0.27), s2 = row_max(4, 0.27), s3 = row_max(6, 0.27);
    const double lo = std::min({s1, s2, s3}), hi = std::max({s1, s2, s3});
    return {std::abs(bell - 1) <= 1e-3 && hi - lo <= 0.03 && lo >= 0.21 && hi <= 0.27,
            "J=1/2 beta_z=0 max S_A = " + fmt(bell) + "; beta_z=0.27: J=1 " + fmt(s1) + ", J=2 " + fmt(s2) + ", J=3 " + fmt(s3)};
}

// 10
Outcome weak_ddi() {
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> u(0.2, 2.0), ang(0, kPi), az(0, 2 * kPi);
    std::uniform_int_distribution<int> uj(1, 8);
    double worst = 0, worst_phi = 0;
    int done = 0;
    while (done < 20) {
        const FieldConfig f{u(rng), u(rng), u(rng)};
        const double ratio = f.omega_rot / f.omega_prime();
        bool near = false;
        for (double bad : {0.5, 1.0, 2.0}) near |= std::abs(ratio / bad - 1) < 0.05;
        if (near) continue;
        const SpinJ j(uj(rng));
        std::uniform_int_distribution<int> un(0, std::max(0, j.two_j() / 2 - 1));
        Geometry g;
        g.r = u(rng);
        g.theta_prime = ang(rng);
        g.phi_prime = az(rng);
        g.theta0 = ang(rng);
        g.n = un(rng);
        ++done;
        const double cf = vdd_time_average(j, g, f);
        const double wp = f.omega_prime();
        const double T = 1000 * std::max(2 * kPi / wp, 2 * kPi / f.omega_rot);
        const long n = static_cast<long>(T / (2 * kPi / (2 * (wp + f.omega_rot))) * 20);
        const double num = oracle::hann_average([&](double t) { return vdd_instantaneous(j, g, f, {}, t); }, T, n);
        worst = std::max(worst, std::abs(num - cf) / std::abs(cf));
        for (double phi : {0.0, 1.0, 4.0}) {
            Geometry h = g;
            h.phi_prime = phi;
            worst_phi = std::max(worst_phi, std::abs(vdd_time_average(j, h, f) - cf) / std::abs(cf));
        }
    }
    return {worst <= 1e-3 && worst_phi <= 1e-12,
            "max relative |numeric - closed form| = " + fmt(worst) + ", phi' spread = " + fmt(worst_phi)};
}

// 11
Outcome invariants() {
    int failed = 0;
    std::string first;
    for (const auto& r : run_selftest()) {
        if (!r.passed()) {
            ++failed;
            if (first.empty()) first = r.name + " (" + fmt(r.measured) + " > " + fmt(r.tolerance) + ")";
        }
    }
    return {failed == 0, failed == 0 ? "all selftest checks within tolerance" : std::to_string(failed) + " failing, e.g. " + first};
}

}  // namespace

int main(int argc, char** argv) {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"single-spin analytic vs numeric", single_spin_equivalence},
        {"resonant full transfer, J=8", resonant_transfer},
        {"ground-init transfer lines", ground_init_transfer},
        {"J=1/2 pair resonances", two_spin_resonances},
        {"kink closed-form trace", kink_trace},
        {"kink criterion equal gaps", kink_consistency},
        {"resonance catalog degeneracies", catalog_exactness},
        {"scan peak placement", scan_peaks},
        {"ground-state phase maps", phase_maps},
        {"weak-DDI time average", weak_ddi},
        {"invariant suite", invariants},
    };
    int only = 0;
    for (int a = 1; a < argc; ++a) {
        if (std::strcmp(argv[a], "--only") == 0 && a + 1 < argc) only = std::atoi(argv[++a]);
        else {
            std::fprintf(stderr, "usage: acceptance [--only N]\n");
            return 2;
        }
    }
    if (only < 0 || only > 11) {
        std::fprintf(stderr, "criterion must be 1..11\n");
        return 2;
    }
    int failures = 0;
    for (int k = 1; k <= 11; ++k) {
        if (only && k != only) continue;
        Outcome o;
        try {
            o = criteria[k - 1].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", k, criteria[k - 1].first, o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures ? 1 : 0;
}
