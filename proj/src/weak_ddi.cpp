#include "spinrot/weak_ddi.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "spinrot/single_analytic.hpp"

namespace spinrot {

Eigen::Vector3d Geometry::unit_separation() const {
    return {std::sin(theta_prime) * std::cos(phi_prime), std::sin(theta_prime) * std::sin(phi_prime),
            std::cos(theta_prime)};
}

void Geometry::validate(SpinJ j) const {
    if (!(r > 0) || !std::isfinite(r)) throw ValidationError("separation r must be > 0");
    if (!std::isfinite(theta_prime) || !std::isfinite(phi_prime) || !std::isfinite(theta0))
        throw ValidationError("angles must be finite");
    if (n < 0 || n > j.two_j()) throw ValidationError("sublevel index n must be in [0, 2J]");
}

DipolarCoupling DipolarCoupling::si(double g_j) {
    constexpr double mu0_over_4pi = 1.00000000055e-7;  // T^2 m^3 / J
    constexpr double bohr_magneton = 9.2740100783e-24;  // J / T
    const double m = g_j * bohr_magneton;
    return {mu0_over_4pi * m * m};
}

double vdd_instantaneous(SpinJ j, const Geometry& geom, const FieldConfig& f, const DipolarCoupling& c, double t) {
    geom.validate(j);
    const Eigen::Vector3d mu = dipole_moment(j, InitialSpec::tilted(geom.theta0, geom.n), f, t);
    const double along = mu.dot(geom.unit_separation());
    return c.prefactor * (mu.squaredNorm() - 3 * along * along) / std::pow(geom.r, 3);
}

namespace {

double p2(double x) { return 1.5 * x * x - 0.5; }

}  // namespace

double vdd_time_average(SpinJ j, const Geometry& geom, const FieldConfig& f, const DipolarCoupling& c) {
    geom.validate(j);
    f.validate();
    const double wp = f.omega_prime();
    if (!(f.omega_rot > 0)) throw ValidationError("time average needs a rotating field (omega > 0)");
    if (!(wp > 0)) throw ValidationError("time average needs omega' > 0");
    const double ratio = f.omega_rot / wp;
    for (double bad : {0.5, 1.0, 2.0}) {
        if (std::abs(ratio - bad) <= 1e-6 * bad) {
            std::ostringstream msg;
            msg << "commensurate frequencies: omega/omega' = " << ratio << " (excluded: 1/2, 1, 2)";
            throw ValidationError(msg.str());
        }
    }
    const double mu = j.value() - geom.n;
    const double tb = f.theta_b();
    const double ct = std::cos(geom.theta_prime);
    return c.prefactor * mu * mu / std::pow(geom.r, 3) * p2(std::cos(geom.theta0 - tb)) * (1 - 3 * ct * ct) *
           p2(std::cos(tb));
}

}  // namespace spinrot
