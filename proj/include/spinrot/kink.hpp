#pragma once

#include <optional>
#include <utility>

#include "spinrot/core.hpp"

namespace spinrot {

// J = 1/2 pair at an equal-gap point, in the basis {|dd>, |+>, |uu>}.
struct KinkSolution {
    double beta_z;
    double omega_over_gd;
    double beta_perp;
    double delta;
    double alpha;  // sqrt(1/4 + 3 delta^2)
    double e1, e3, e4;
    Eigen::Vector3cd v1, v3, v4;
    bool boundary;  // 4 delta^2 = 1 (beta_perp = 0): closed forms degenerate, basis-state limit used

    // Rotating-frame state from |dd> at time t, over {|dd>, |+>, |uu>}.
    Eigen::Vector3cd amplitudes(double t) const;
    // Same state in the 4-dim product basis.
    StateVector state(double t) const;
};

KinkSolution kink_eigensystem(double beta_z, double omega_over_gd, std::optional<double> beta_perp = std::nullopt);

// Closed forms at beta_z = 3, beta_perp = 2, Omega/g_d = 4.5 (alpha = sqrt 7).
inline constexpr double kKinkBetaZ = 3.0;
inline constexpr double kKinkBetaPerp = 2.0;
inline constexpr double kKinkOmega = 4.5;

struct KinkPopulations {
    double p_dd, p_plus, p_uu;
};

Eigen::Vector3cd kink_state(double t);
KinkPopulations kink_populations(double t);
std::pair<double, double> kink_lambdas(double t);
double kink_entropy(double t);

// Reduced-density eigenvalues (lambda_+, lambda_-) of c_dd|dd> + c_+|+> + c_uu|uu>.
std::pair<double, double> lambdas_from_amplitudes(cplx c_dd, cplx c_plus, cplx c_uu);

}  // namespace spinrot
