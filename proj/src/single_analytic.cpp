#include "spinrot/single_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinrot/spin_algebra.hpp"

namespace spinrot {

namespace {

double sq(double x) { return x * x; }

// omega_perp^2 / omega'^2, 0 in the undriven limit
double transverse_fraction(const FieldConfig& f) {
    const double wp2 = sq(f.detuning()) + sq(f.omega_perp);
    return wp2 == 0 ? 0.0 : sq(f.omega_perp) / wp2;
}

// Omega omega sin^2(phi0) / omega'^2
double ground_transfer_amplitude(const FieldConfig& f) {
    const double wp2 = sq(f.detuning()) + sq(f.omega_perp);
    if (wp2 == 0) return 0.0;
    return f.omega_rot * f.omega_total() * sq(std::sin(f.phi0())) / wp2;
}

std::vector<double> binomial_populations(SpinJ j, double p) {
    const int two_j = j.two_j();
    std::vector<double> out(two_j + 1);
    for (int n = 0; n <= two_j; ++n)
        out[n] = static_cast<double>(binomial(two_j, n)) * std::pow(p, n) * std::pow(1 - p, two_j - n);
    return out;
}

// <sigma_a> of one spin-1/2 started in |down'> (axis tilted by theta0)
Eigen::Vector3d sigma_down_prime(double theta0, const FieldConfig& f, double t) {
    const double tb = f.theta_b(), wt = f.omega_prime() * t, ot = f.omega_rot * t;
    const double c = std::cos(theta0 - tb), s = std::sin(theta0 - tb);
    return {-c * std::sin(tb) * std::cos(ot) - s * (std::cos(wt) * std::cos(tb) * std::cos(ot) - std::sin(wt) * std::sin(ot)),
            -c * std::sin(tb) * std::sin(ot) - s * (std::cos(wt) * std::cos(tb) * std::sin(ot) + std::sin(wt) * std::cos(ot)),
            -c * std::cos(tb) + s * std::sin(tb) * std::cos(wt)};
}

}  // namespace

double InitialSpec::tilt(const FieldConfig& f) const {
    switch (kind) {
        case Kind::ZSublevel: return 0.0;
        case Kind::TiltedSublevel: return theta0;
        case Kind::GroundOfInitialH: return f.phi0();
    }
    return 0.0;
}

void InitialSpec::validate(SpinJ j) const {
    if (n < 0 || n > j.two_j())
        throw ValidationError("sublevel index n must be in [0, 2J] = [0, " + std::to_string(j.two_j()) +
                              "] (got " + std::to_string(n) + ")");
    if (kind == Kind::GroundOfInitialH && n != 0) throw ValidationError("ground-state initial condition has n = 0");
    if (!std::isfinite(theta0)) throw ValidationError("theta0 must be finite");
}

StateVector initial_state(SpinJ j, const InitialSpec& init, const FieldConfig& f) {
    init.validate(j);
    StateVector base = basis_state<double>(j.dim(), init.n);
    const double tilt = init.tilt(f);
    if (tilt == 0) return base;
    return rotate_about_y<double>(base, tilt, j);
}

std::vector<double> populations_stretched(SpinJ j, const FieldConfig& f, double t) {
    return binomial_populations(j, transverse_fraction(f) * sq(std::sin(f.omega_prime() * t / 2)));
}

double survival_min_stretched(SpinJ j, const FieldConfig& f) {
    return std::pow(1 - transverse_fraction(f), j.two_j());
}

double p2j_max(SpinJ j, const FieldConfig& f) { return std::pow(transverse_fraction(f), j.two_j()); }

double pn_max(SpinJ j, int n, const FieldConfig& f) {
    if (n < 0 || n > j.two_j()) throw ValidationError("pn_max: n must be in [0, 2J]");
    const int two_j = j.two_j();
    const double frac = transverse_fraction(f);
    const double target = static_cast<double>(n) / two_j;
    const double p = frac <= target ? frac : target;
    return static_cast<double>(binomial(two_j, n)) * std::pow(p, n) * std::pow(1 - p, two_j - n);
}

double survival_general(SpinJ j, double theta0, const FieldConfig& f, double t) {
    const double tb = f.theta_b(), wt = f.omega_prime() * t, ot = f.omega_rot * t;
    const double bracket =
        1 + 0.5 * (std::cos(theta0) * std::cos(theta0 - tb) - std::cos(tb)) * std::sin(wt) * std::sin(ot) -
        sq(std::sin(theta0)) * sq(std::cos(wt / 2)) * sq(std::sin(ot / 2)) -
        sq(std::sin(wt / 2)) * (sq(std::sin(tb)) * sq(std::sin(ot / 2)) + sq(std::sin(theta0 - tb)) * sq(std::cos(ot / 2)));
    return std::pow(std::clamp(bracket, 0.0, 1.0), j.two_j());
}

double survival_rotating_frame(SpinJ j, double theta0, const FieldConfig& f, double t) {
    const double bracket = 1 - sq(std::sin(theta0 - f.theta_b())) * sq(std::sin(f.omega_prime() * t / 2));
    return std::pow(bracket, j.two_j());
}

double up_probability(double theta0, const FieldConfig& f, double t) {
    const double s = sq(std::sin(f.omega_prime() * t / 2));
    return sq(std::sin(theta0 / 2)) * (1 - s) + s * sq(std::sin(f.theta_b() - theta0 / 2));
}

std::vector<double> populations_tilted(SpinJ j, double theta0, const FieldConfig& f, double t) {
    return binomial_populations(j, up_probability(theta0, f, t));
}

double survival_ground_init(SpinJ j, const FieldConfig& f, double t) {
    return survival_general(j, f.phi0(), f, t);
}

double pgs(SpinJ j, const FieldConfig& f, double t) {
    const double wp2 = sq(f.detuning()) + sq(f.omega_perp);
    if (wp2 == 0) return 1.0;
    const double amp = sq(f.omega_rot * std::sin(f.phi0())) / wp2;
    return std::pow(1 - amp * sq(std::sin(f.omega_prime() * t / 2)), j.two_j());
}

double pgs_min(SpinJ j, const FieldConfig& f) {
    const double wp2 = sq(f.detuning()) + sq(f.omega_perp);
    if (wp2 == 0) return 1.0;
    return std::pow(std::max(0.0, 1 - sq(f.omega_rot * std::sin(f.phi0())) / wp2), j.two_j());
}

double p2j_ground_init(SpinJ j, const FieldConfig& f, double t) {
    const double p = sq(std::sin(f.phi0() / 2)) + ground_transfer_amplitude(f) * sq(std::sin(f.omega_prime() * t / 2));
    return std::pow(p, j.two_j());
}

double p2j_ground_init_max(SpinJ j, const FieldConfig& f) {
    const double base = sq(std::sin(f.phi0() / 2));
    return std::pow(std::min(1.0, base + std::max(0.0, ground_transfer_amplitude(f))), j.two_j());
}

double spread_mj(SpinJ j, const FieldConfig& f, double t) {
    const double wp2 = sq(f.detuning()) + sq(f.omega_perp);
    double bracket = 1;
    if (wp2 > 0) {
        const double x = 1 - std::cos(f.omega_prime() * t);
        bracket = 1 - sq(f.omega_perp * f.omega_rot) / sq(wp2) * x * x + 2 * f.omega_z * f.omega_rot / wp2 * x;
    }
    return std::sqrt(j.value() / 2) * std::abs(std::sin(f.phi0())) * std::sqrt(std::max(0.0, bracket));
}

Eigen::Vector3d angular_momentum(SpinJ j, const InitialSpec& init, const FieldConfig& f, double t) {
    return (j.value() - init.n) * sigma_down_prime(init.tilt(f), f, t);
}

Eigen::Vector3d dipole_moment(SpinJ j, const InitialSpec& init, const FieldConfig& f, double t) {
    const double mu = j.value() - init.n;
    const double tb = f.theta_b(), ot = f.omega_rot * t, wt = f.omega_prime() * t;
    const double d = init.tilt(f) - tb;
    const Eigen::Vector3d e(std::sin(tb) * std::cos(ot), std::sin(tb) * std::sin(ot), std::cos(tb));
    const Eigen::Vector3d th(std::cos(tb) * std::cos(ot), std::cos(tb) * std::sin(ot), -std::sin(tb));
    const Eigen::Vector3d ph(-std::sin(ot), std::cos(ot), 0);
    return mu * std::cos(d) * e + mu * std::sin(d) * (std::cos(wt) * th + std::sin(wt) * ph);
}

std::vector<DipoleTrajectoryPoint> dipole_trajectory(SpinJ j, const InitialSpec& init, const FieldConfig& f,
                                                     const std::vector<double>& t_grid) {
    init.validate(j);
    std::vector<DipoleTrajectoryPoint> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) out.push_back({t, dipole_moment(j, init, f, t)});
    return out;
}

RotatedFrameCoeffs rotated_frame_hamiltonian_coeffs(const FieldConfig& f) {
    if (f.omega_z == 0) throw ValidationError("rotated-frame coefficients need omega_z != 0 (cos(phi0) = 0)");
    const double phi0 = f.phi0();
    return {f.detuning() * std::cos(phi0) + f.omega_z * sq(std::sin(phi0)) / std::cos(phi0),
            f.omega_rot * std::sin(phi0)};
}

}  // namespace spinrot
