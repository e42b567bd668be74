#include "spinrot/halfspin_gas.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinrot {

double FieldConfig::omega_prime() const { return std::hypot(detuning(), omega_perp); }
double FieldConfig::theta_b() const { return std::atan2(omega_perp, detuning()); }
double FieldConfig::phi0() const { return std::atan2(omega_perp, omega_z); }
double FieldConfig::omega_total() const { return std::hypot(omega_z, omega_perp); }

void FieldConfig::validate() const {
    if (!std::isfinite(omega_z)) throw ValidationError("omega_z must be finite");
    if (!std::isfinite(omega_rot)) throw ValidationError("omega (rotation frequency) must be finite");
    if (!std::isfinite(omega_perp) || omega_perp < 0)
        throw ValidationError("omega_perp must be finite and >= 0 (got " + std::to_string(omega_perp) + ")");
}

HalfSpinAmplitudes HalfSpinAmplitudes::tilted(double theta0) {
    return {cplx(-std::sin(theta0 / 2), 0), cplx(std::cos(theta0 / 2), 0)};
}

HalfSpinAmplitudes propagate_halfspin(const HalfSpinAmplitudes& init, const FieldConfig& f, double t) {
    const double wp = f.omega_prime();
    if (wp == 0) return init;
    const double c = std::cos(wp * t / 2), s = std::sin(wp * t / 2);
    const double nz = f.detuning() / wp, nx = f.omega_perp / wp;
    const cplx i(0, 1);
    return {(c - i * s * nz) * init.up - i * s * nx * init.down,
            -i * s * nx * init.up + (c + i * s * nz) * init.down};
}

HalfSpinAmplitudes to_lab_frame(const HalfSpinAmplitudes& amp, double omega_rot, double t) {
    const double phase = omega_rot * t / 2;
    return {amp.up * std::polar(1.0, -phase), amp.down * std::polar(1.0, phase)};
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t out = 1;
    for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return out;
}

namespace {

cplx ipow(cplx z, int n) {
    cplx out(1, 0);
    for (int i = 0; i < n; ++i) out *= z;
    return out;
}

}  // namespace

StateVector assemble_spinJ_state(const HalfSpinAmplitudes& single, SpinJ j) {
    const int two_j = j.two_j();
    StateVector out(j.dim());
    for (int n = 0; n <= two_j; ++n) {
        const double weight = std::sqrt(static_cast<double>(binomial(two_j, n)));
        out(n) = weight * ipow(single.up, n) * ipow(single.down, two_j - n);
    }
    return out;
}

}  // namespace spinrot
