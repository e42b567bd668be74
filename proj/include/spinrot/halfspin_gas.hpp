#pragma once

#include <cstdint>

#include "spinrot/core.hpp"

namespace spinrot {

// Single-spin drive: B_z along z plus B_perp rotating at omega_rot in the xy plane.
struct FieldConfig {
    double omega_z = 0;
    double omega_perp = 0;
    double omega_rot = 0;

    double detuning() const { return omega_z - omega_rot; }
    double omega_prime() const;   // sqrt(detuning^2 + omega_perp^2)
    double theta_b() const;       // atan2(omega_perp, detuning)
    double phi0() const;          // atan2(omega_perp, omega_z)
    double omega_total() const;   // sqrt(omega_z^2 + omega_perp^2)

    void validate() const;
};

struct HalfSpinAmplitudes {
    cplx up{0, 0};
    cplx down{1, 0};

    double norm2() const { return std::norm(up) + std::norm(down); }
    static HalfSpinAmplitudes tilted(double theta0);  // exp(-i theta0 s_y)|down>
};

// Rotating-frame evolution under (omega_perp/2) sigma_x + (detuning/2) sigma_z.
HalfSpinAmplitudes propagate_halfspin(const HalfSpinAmplitudes& init, const FieldConfig& f, double t);

HalfSpinAmplitudes to_lab_frame(const HalfSpinAmplitudes& amp, double omega_rot, double t);

std::uint64_t binomial(int n, int k);

// c_{-J+n} = sqrt(C(2J,n)) up^n down^(2J-n)
StateVector assemble_spinJ_state(const HalfSpinAmplitudes& single, SpinJ j);

}  // namespace spinrot
