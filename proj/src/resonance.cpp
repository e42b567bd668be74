#include "spinrot/resonance.hpp"

#include <cmath>
#include <sstream>

#include "spinrot/parallel.hpp"

namespace spinrot {

std::string to_string(ResonanceId id) {
    switch (id) {
        case ResonanceId::i: return "i";
        case ResonanceId::ii: return "ii";
        case ResonanceId::iii: return "iii";
        case ResonanceId::iv: return "iv";
        case ResonanceId::v: return "v";
        case ResonanceId::vi: return "vi";
        case ResonanceId::vii: return "vii";
    }
    return "?";
}

double resonance_radical(SpinJ j) {
    const double J = j.value();
    return std::sqrt(64 * std::pow(J, 4) - 64 * std::pow(J, 3) + 36 * J * J - 10 * J + 1);
}

double gamma_j(SpinJ j) {
    const double J = j.value();
    return std::atan(3 * std::sqrt(2 * J * (2 * J - 1)) / (8 * J * J - 4 * J - 1));
}

double lambda_pm(SpinJ j, int sign) {
    const double J = j.value();
    return 0.25 + sign * (4 * J - 1) / (4 * resonance_radical(j));
}

AppendixDEnergies appendix_d_energies(SpinJ j, double delta) {
    const double J = j.value();
    AppendixDEnergies e;
    e.e_plus_2j = 2 * J * delta - 2 * J * J;
    e.e_minus_2j = -2 * J * delta - 2 * J * J;
    e.e_plus_2j_minus_1 = (2 * J - 1) * delta - 2 * J * J + 3 * J;
    e.e_minus_2j_minus_1 = -(2 * J - 1) * delta - 2 * J * J + 3 * J;
    if (j.two_j() >= 2) {
        const double a = (8 * J * J * J - 18 * J * J + 8 * J - 1) / (4 * J - 1);
        const double b = resonance_radical(j) / (4 * J - 1);
        e.e_plus_2j_minus_2_p = (2 * J - 2) * delta - a + b;
        e.e_plus_2j_minus_2_m = (2 * J - 2) * delta - a - b;
        e.e_minus_2j_minus_2_p = -(2 * J - 2) * delta - a + b;
        e.e_minus_2j_minus_2_m = -(2 * J - 2) * delta - a - b;
    }
    return e;
}

StateVector appendix_d_state(SpinJ j, int sign, int branch) {
    if (j.two_j() < 2) throw ValidationError("the M = +-(2J-2) doublet needs J >= 1");
    const double J = j.value();
    const double g = gamma_j(j) / 2, c = std::cos(g), s = std::sin(g);
    const double norm = std::sqrt(2 * (4 * J - 1));
    double pair_coeff, middle_coeff;
    if (branch > 0) {
        pair_coeff = (std::sqrt(2 * J - 1) * c + std::sqrt(2 * J) * s) / norm;
        middle_coeff = (2 * std::sqrt(J) * c - std::sqrt(2 * (2 * J - 1)) * s) / norm;
    } else {
        pair_coeff = (std::sqrt(2 * J - 1) * s - std::sqrt(2 * J) * c) / norm;
        middle_coeff = (2 * std::sqrt(J) * s + std::sqrt(2 * (2 * J - 1)) * c) / norm;
    }
    const int top = j.two_j();
    const int a = sign < 0 ? 0 : top, b = sign < 0 ? 2 : top - 2, mid = sign < 0 ? 1 : top - 1;
    StateVector out = StateVector::Zero(j.dim() * j.dim());
    out(pair_index(j, a, b)) += pair_coeff;
    out(pair_index(j, b, a)) += pair_coeff;
    out(pair_index(j, mid, mid)) += middle_coeff;
    return out;
}

namespace {

double log_base(double x, SpinJ j) { return std::log(x) / std::log(static_cast<double>(j.dim())); }

double doublet_entropy(SpinJ j, double lambda) {
    return -2 * lambda * log_base(lambda, j) - (1 - 2 * lambda) * log_base(1 - 2 * lambda, j);
}

void verify_crossing(const ResonancePrediction& p, SpinJ j, double beta_z) {
    const ComplexMatrix h = build_hrot({j, beta_z, 0.0, p.omega_over_gd});
    const StateVector init = TwoSpinState::product(j, 0, 0).amplitudes;
    const double e_init = expectation(h, init);
    const double e_target = expectation(h, p.target_state);
    const double residual = (h * p.target_state - e_target * p.target_state).norm();
    const double scale = std::max(1.0, std::abs(e_init));
    if (std::abs(p.target_state.norm() - 1) > 1e-10 || residual > 1e-10 * scale ||
        std::abs(e_target - e_init) > 1e-10 * scale) {
        std::ostringstream msg;
        msg << "resonance (" << to_string(p.id) << ") failed its crossing check: |dE|=" << std::abs(e_target - e_init)
            << ", eigen residual=" << residual;
        throw NumericalContractError(msg.str());
    }
}

}  // namespace

std::vector<ResonancePrediction> resonance_catalog(SpinJ j, double beta_z) {
    if (!std::isfinite(beta_z)) throw ValidationError("beta_z must be finite");
    const double J = j.value();
    const int d = j.dim(), top = j.two_j();
    const double ln2 = log_base(2.0, j);
    std::vector<ResonancePrediction> items;

    StateVector upper_plus = StateVector::Zero(d * d);
    upper_plus(pair_index(j, top, top - 1)) = upper_plus(pair_index(j, top - 1, top)) = 1 / std::sqrt(2.0);

    items.push_back({ResonanceId::i, {}, beta_z, TwoSpinState::product(j, top, top).amplitudes,
                     "|J,J>", top, 0.0, 2 * top});
    items.push_back({ResonanceId::ii, {}, beta_z + 3 * J / (4 * J - 1), upper_plus, "|2J;2J-1>", top - 1, ln2,
                     2 * top - 1});
    items.push_back({ResonanceId::iii, {}, beta_z + 3 * J, plus_state(j), "|2J;-2J+1>", -top + 1, ln2, 1});
    if (top >= 2) {
        const double r = resonance_radical(j);
        const double lp = lambda_pm(j, +1), lm = lambda_pm(j, -1);
        items.push_back({ResonanceId::iv, {}, beta_z + (4 * J - 1) / 2 + r / (2 * (4 * J - 1)),
                         appendix_d_state(j, -1, +1), "|-2J+2>_+", -top + 2, doublet_entropy(j, lp), 2});
        items.push_back({ResonanceId::v, {}, beta_z + (4 * J - 1) / 2 - r / (2 * (4 * J - 1)),
                         appendix_d_state(j, -1, -1), "|-2J+2>_-", -top + 2, doublet_entropy(j, lm), 2});
        items.push_back({ResonanceId::vi, {},
                         beta_z + (4 * J - 1) / (2 * (2 * J - 1)) + r / (2 * (2 * J - 1) * (4 * J - 1)),
                         appendix_d_state(j, +1, +1), "|2J-2>_+", top - 2, doublet_entropy(j, lp), 2 * top - 2});
        items.push_back({ResonanceId::vii, {},
                         beta_z + (4 * J - 1) / (2 * (2 * J - 1)) - r / (2 * (2 * J - 1) * (4 * J - 1)),
                         appendix_d_state(j, +1, -1), "|2J-2>_-", top - 2, doublet_entropy(j, lm), 2 * top - 2});
    }

    std::vector<ResonancePrediction> merged;
    for (auto& item : items) {
        verify_crossing(item, j, beta_z);
        bool absorbed = false;
        for (auto& kept : merged) {
            const double scale = std::max(1.0, std::abs(kept.omega_over_gd));
            if (std::abs(kept.omega_over_gd - item.omega_over_gd) <= 1e-12 * scale &&
                std::abs(std::abs(kept.target_state.dot(item.target_state)) - 1) <= 1e-12) {
                kept.coincides_with.push_back(item.id);
                kept.order = std::min(kept.order, item.order);
                absorbed = true;
                break;
            }
        }
        if (!absorbed) merged.push_back(std::move(item));
    }
    return merged;
}

std::optional<double> kink_criterion(double beta_z, double omega_over_gd) {
    const double delta = beta_z - omega_over_gd;
    const double radicand = 2 * delta * delta - 0.5;
    if (!(radicand >= 0)) return std::nullopt;
    return std::sqrt(radicand);
}

std::pair<double, double> kink_omegas(double beta_z, double beta_perp) {
    if (!(beta_perp >= 0)) throw ValidationError("beta_perp must be >= 0");
    const double shift = std::sqrt((beta_perp * beta_perp + 0.5) / 2);
    return {beta_z - shift, beta_z + shift};
}

std::pair<double, double> superposed_entropy(SpinJ j, double p) {
    if (j.two_j() < 2) throw ValidationError("superposed_entropy needs J >= 1");
    if (!(p >= 0 && p <= 1)) throw ValidationError("p must be in [0, 1]");
    auto entropy = [&](double lam) {
        const double mid = p + 2 * (1 - p) * lam;
        const double root = std::sqrt(std::max(0.0, p * p + 4 * p * (1 - p) * lam));
        RealVector l(3);
        l << (mid + root) / 2, (mid - root) / 2, 1 - mid;
        return entropy_from_spectrum(l, j);
    };
    return {entropy(lambda_pm(j, +1)), entropy(lambda_pm(j, -1))};
}

double ScanSpec::resolved_horizon() const { return horizon ? *horizon : 15 * 2 * kPi / beta_perp; }

void ScanSpec::validate() const {
    std::vector<std::string> errors;
    if (!(beta_perp > 0)) errors.push_back("beta_perp must be > 0 for a scan (the default horizon diverges)");
    if (!std::isfinite(beta_z)) errors.push_back("beta_z must be finite");
    if (omegas.empty()) errors.push_back("omega grid is empty");
    if (horizon && !(*horizon > 0)) errors.push_back("horizon must be > 0");
    if (samples < kMinScanSamples) errors.push_back("samples must be >= " + std::to_string(kMinScanSamples));
    if (!errors.empty()) {
        std::string msg = "invalid scan:";
        for (auto& e : errors) msg += "\n  " + e;
        throw ValidationError(msg);
    }
}

std::vector<ScanResult> scan_samax(const ScanSpec& spec, int workers) {
    spec.validate();
    const SpinJ j = spec.j;
    const ComplexMatrix v = symmetric_sector_isometry(j);
    const ComplexMatrix static_part =
        v.adjoint() * build_hrot({j, 0.0, spec.beta_perp, 0.0}) * v;  // Delta = 0
    const int d = j.dim();
    const ComplexMatrix jz_total = kron(build_jz(j), ComplexMatrix::Identity(d, d)) +
                                   kron(ComplexMatrix::Identity(d, d), build_jz(j));
    const ComplexMatrix jz_sym = v.adjoint() * jz_total * v;
    StateVector init = StateVector::Zero(v.cols());
    init(0) = 1;  // |-J,-J>
    const double horizon = spec.resolved_horizon();
    const std::vector<double> times = linspace(0.0, horizon, spec.samples);

    return parallel_map(spec.omegas.size(), workers, [&](std::size_t k) {
        const double omega = spec.omegas[k];
        const Eigensystem<double> es = eig_hermitian<double>(static_part + (spec.beta_z - omega) * jz_sym);
        const StateVector c = es.vectors.adjoint() * init;
        ScanResult best{omega, -1.0, 0.0};
        StateVector phased(c.size());
        for (double t : times) {
            for (Eigen::Index q = 0; q < c.size(); ++q) phased(q) = c(q) * std::polar(1.0, -es.values(q) * t);
            const StateVector psi = v * (es.vectors * phased);
            const double s = entanglement_entropy(psi, j);
            if (s > best.samax) {
                best.samax = s;
                best.t_at_max = t;
            }
        }
        return best;
    });
}

}  // namespace spinrot
