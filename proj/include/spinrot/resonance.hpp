#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinrot/core.hpp"
#include "spinrot/two_spin.hpp"

namespace spinrot {

enum class ResonanceId { i, ii, iii, iv, v, vi, vii };

std::string to_string(ResonanceId id);

struct ResonancePrediction {
    ResonanceId id;
    std::vector<ResonanceId> coincides_with;  // items merged into this one
    double omega_over_gd;
    StateVector target_state;  // full product basis
    std::string target_label;
    int target_m;              // total M_j of the target
    double target_entropy;
    int order;                 // |Delta M| from |-J,-J>
};

// Items (iv)-(vii) need J >= 1. Each Omega is checked internally to be a
// beta_perp = 0 degeneracy of target and |-J,-J> to 1e-10.
std::vector<ResonancePrediction> resonance_catalog(SpinJ j, double beta_z);

double gamma_j(SpinJ j);
double resonance_radical(SpinJ j);  // sqrt(64J^4 - 64J^3 + 36J^2 - 10J + 1)
// lambda_+ (sign=+1) or lambda_- (sign=-1)
double lambda_pm(SpinJ j, int sign);

struct AppendixDEnergies {
    double e_plus_2j, e_minus_2j;                // M = +-2J
    double e_plus_2j_minus_1, e_minus_2j_minus_1; // M = +-(2J-1)
    // M = +-(2J-2), upper/lower root; valid only for J >= 1
    std::optional<double> e_plus_2j_minus_2_p, e_plus_2j_minus_2_m;
    std::optional<double> e_minus_2j_minus_2_p, e_minus_2j_minus_2_m;
};

AppendixDEnergies appendix_d_energies(SpinJ j, double delta);

// |M = sign*(2J-2)>_branch, branch = +1 (cos-first) or -1.
StateVector appendix_d_state(SpinJ j, int sign, int branch);

// beta_perp at which E3 - E1 = E4 - E3 (J = 1/2), if it exists.
std::optional<double> kink_criterion(double beta_z, double omega_over_gd);
// Omega values at which a kink sits for the given fields: beta_z -+ sqrt((beta_perp^2 + 1/2)/2).
std::pair<double, double> kink_omegas(double beta_z, double beta_perp);

// Entropy of sqrt(p)|-J,-J> + e^{i phi} sqrt(1-p)|-2J+2>_+- ; independent of phi.
std::pair<double, double> superposed_entropy(SpinJ j, double p);

struct ScanSpec {
    SpinJ j;
    double beta_z = 0;
    double beta_perp = 0.1;
    std::vector<double> omegas;
    std::optional<double> horizon;  // default 15 * 2 pi / beta_perp
    int samples = 4000;

    double resolved_horizon() const;
    void validate() const;
};

struct ScanResult {
    double omega_over_gd;
    double samax;
    double t_at_max;
};

inline constexpr int kMinScanSamples = 4000;

std::vector<ScanResult> scan_samax(const ScanSpec& spec, int workers = 1);

}  // namespace spinrot
