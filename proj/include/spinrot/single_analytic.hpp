#pragma once

#include <vector>

#include "spinrot/core.hpp"
#include "spinrot/halfspin_gas.hpp"

namespace spinrot {

struct InitialSpec {
    enum class Kind { ZSublevel, TiltedSublevel, GroundOfInitialH };

    Kind kind = Kind::ZSublevel;
    int n = 0;
    double theta0 = 0;

    static InitialSpec z_sublevel(int n) { return {Kind::ZSublevel, n, 0}; }
    static InitialSpec tilted(double theta0, int n) { return {Kind::TiltedSublevel, n, theta0}; }
    static InitialSpec ground_of_initial() { return {Kind::GroundOfInitialH, 0, 0}; }

    double tilt(const FieldConfig& f) const;
    void validate(SpinJ j) const;
};

// exp(-i theta0 J_y) |m_j = -J + n>
StateVector initial_state(SpinJ j, const InitialSpec& init, const FieldConfig& f);

// Stretched initial state |m_j = -J>.
std::vector<double> populations_stretched(SpinJ j, const FieldConfig& f, double t);
double survival_min_stretched(SpinJ j, const FieldConfig& f);
double p2j_max(SpinJ j, const FieldConfig& f);
double pn_max(SpinJ j, int n, const FieldConfig& f);

// Lowest sublevel along an axis tilted by theta0 in the xz plane.
double survival_general(SpinJ j, double theta0, const FieldConfig& f, double t);
double survival_rotating_frame(SpinJ j, double theta0, const FieldConfig& f, double t);
double up_probability(double theta0, const FieldConfig& f, double t);
std::vector<double> populations_tilted(SpinJ j, double theta0, const FieldConfig& f, double t);

// Ground state of the t=0 Hamiltonian (theta0 = phi0).
double survival_ground_init(SpinJ j, const FieldConfig& f, double t);
double pgs(SpinJ j, const FieldConfig& f, double t);
double pgs_min(SpinJ j, const FieldConfig& f);
double p2j_ground_init(SpinJ j, const FieldConfig& f, double t);
double p2j_ground_init_max(SpinJ j, const FieldConfig& f);
double spread_mj(SpinJ j, const FieldConfig& f, double t);

// <J>(t) in the lab frame for a tilted sublevel (z sublevels: theta0 = 0).
Eigen::Vector3d angular_momentum(SpinJ j, const InitialSpec& init, const FieldConfig& f, double t);

struct DipoleTrajectoryPoint {
    double t;
    Eigen::Vector3d mu;  // units of g_J mu_B, lab frame
};

Eigen::Vector3d dipole_moment(SpinJ j, const InitialSpec& init, const FieldConfig& f, double t);
std::vector<DipoleTrajectoryPoint> dipole_trajectory(SpinJ j, const InitialSpec& init, const FieldConfig& f,
                                                     const std::vector<double>& t_grid);

struct RotatedFrameCoeffs {
    double coeff_z;
    double coeff_x;
};

// H' written along the t=0 field direction z'. Requires omega_z != 0.
RotatedFrameCoeffs rotated_frame_hamiltonian_coeffs(const FieldConfig& f);

}  // namespace spinrot
