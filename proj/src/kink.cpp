#include "spinrot/kink.hpp"

#include <cmath>
#include <sstream>

#include "spinrot/spin_algebra.hpp"

namespace spinrot {

namespace {

Eigen::Vector3cd normalized(Eigen::Vector3cd v) {
    v.normalize();
    fix_phase(v);
    return v;
}

}  // namespace

KinkSolution kink_eigensystem(double beta_z, double omega_over_gd, std::optional<double> beta_perp) {
    if (!std::isfinite(beta_z) || !std::isfinite(omega_over_gd)) throw ValidationError("beta_z and omega must be finite");
    KinkSolution k{};
    k.beta_z = beta_z;
    k.omega_over_gd = omega_over_gd;
    k.delta = beta_z - omega_over_gd;
    const double d = k.delta;
    const double radicand = 2 * d * d - 0.5;
    if (beta_perp) {
        const double residual = std::abs(*beta_perp * *beta_perp - radicand);
        if (*beta_perp < 0 || residual > 1e-9) {
            std::ostringstream msg;
            msg << "(beta_z, omega, beta_perp) is not an equal-gap point: |beta_perp^2 - 2 delta^2 + 1/2| = " << residual;
            throw ValidationError(msg.str());
        }
        k.beta_perp = *beta_perp;
    } else {
        if (radicand < 0) {
            std::ostringstream msg;
            msg << "no equal-gap point for beta_z=" << beta_z << ", omega=" << omega_over_gd
                << ": 2 delta^2 - 1/2 = " << radicand << " < 0";
            throw ValidationError(msg.str());
        }
        k.beta_perp = std::sqrt(radicand);
    }
    k.alpha = std::sqrt(0.25 + 3 * d * d);
    k.e1 = -k.alpha;
    k.e3 = 0;
    k.e4 = k.alpha;
    k.boundary = std::abs(4 * d * d - 1) <= 1e-12;

    const double b = std::sqrt(2.0) * k.beta_perp, a = k.alpha;
    const Eigen::Vector3cd dd(1, 0, 0), plus(0, 1, 0), uu(0, 0, 1);
    if (k.boundary) {
        // beta_perp = 0: H is diagonal with E(dd) = -delta - 1/2, E(+) = 1, E(uu) = delta - 1/2
        k.v4 = plus;
        k.v1 = d < 0 ? uu : dd;
        k.v3 = d < 0 ? dd : uu;
        return k;
    }
    k.v1 = normalized(b / (2 * (d - a) + 1) * dd + plus - b / (2 * (d + a) - 1) * uu);
    k.v3 = normalized(b * (2 * d - 1) * dd + (4 * d * d - 1) * plus - b * (2 * d + 1) * uu);
    k.v4 = normalized(b / (2 * (d + a) + 1) * dd + plus - b / (2 * (d - a) - 1) * uu);
    return k;
}

Eigen::Vector3cd KinkSolution::amplitudes(double t) const {
    const Eigen::Vector3cd* vs[3] = {&v1, &v3, &v4};
    const double es[3] = {e1, e3, e4};
    Eigen::Vector3cd out = Eigen::Vector3cd::Zero();
    for (int q = 0; q < 3; ++q) out += *vs[q] * (std::conj((*vs[q])(0)) * std::polar(1.0, -es[q] * t));
    return out;
}

StateVector KinkSolution::state(double t) const {
    const Eigen::Vector3cd c = amplitudes(t);
    StateVector out(4);
    const double r = 1 / std::sqrt(2.0);
    out << c(0), r * c(1), r * c(1), c(2);
    return out;
}

Eigen::Vector3cd kink_state(double t) {
    const double s7 = std::sqrt(7.0);
    const double c = std::cos(s7 * t), s = std::sin(s7 * t);
    const cplx i(0, 1);
    return {(4 + 3 * c) / 7 - i * s / s7, 2 * std::sqrt(2.0) * (c - 1) / 7 - i * std::sqrt(2.0) * s / s7,
            cplx(2 * (c - 1) / 7, 0)};
}

KinkPopulations kink_populations(double t) {
    const double c = std::cos(std::sqrt(7.0) * t), s2 = std::pow(std::sin(std::sqrt(7.0) * t), 2);
    return {(9 * c * c + 24 * c + 16) / 49 + s2 / 7, 8 * (c * c - 2 * c + 1) / 49 + 2 * s2 / 7,
            4 * (c * c - 2 * c + 1) / 49};
}

std::pair<double, double> kink_lambdas(double t) {
    const double c = std::cos(std::sqrt(7.0) * t);
    const double root = std::sqrt(std::max(0.0, 2189 + 624 * c - 600 * c * c + 176 * c * c * c + 12 * c * c * c * c));
    return {0.5 + root / 98, 0.5 - root / 98};
}

namespace {

double binary_entropy(std::pair<double, double> l) {
    double s = 0;
    for (double x : {l.first, l.second})
        if (x >= 1e-14) s -= x * std::log2(x);
    return std::clamp(s, 0.0, 1.0);
}

}  // namespace

double kink_entropy(double t) { return binary_entropy(kink_lambdas(t)); }

std::pair<double, double> lambdas_from_amplitudes(cplx c_dd, cplx c_plus, cplx c_uu) {
    const double pdd = std::norm(c_dd), pp = std::norm(c_plus), puu = std::norm(c_uu);
    const double cross = 2 * (c_plus * c_plus * std::conj(c_dd) * std::conj(c_uu)).real();
    const double radicand = (pdd - puu) * (pdd - puu) + 2 * pp * (pdd + puu) + 2 * cross;
    const double root = std::sqrt(std::max(0.0, radicand));
    return {0.5 + root / 2, 0.5 - root / 2};
}

}  // namespace spinrot
