#pragma once

#include "spinrot/core.hpp"
#include "spinrot/halfspin_gas.hpp"

namespace spinrot {

struct Geometry {
    double r = 1;
    double theta_prime = 0;  // polar angle of the separation vector
    double phi_prime = 0;    // its azimuth
    double theta0 = 0;       // initial tilt of both moments
    int n = 0;               // sublevel index of both spins

    Eigen::Vector3d unit_separation() const;
    void validate(SpinJ j) const;
};

// Energies come out in units of prefactor = mu0/(4 pi) (g_J mu_B)^2 over the length unit of r cubed.
struct DipolarCoupling {
    double prefactor = 1;

    // mu0/(4 pi) (g_J mu_B)^2 in J m^3; r then in metres.
    static DipolarCoupling si(double g_j);
};

// Two identical, parallel precessing moments.
double vdd_instantaneous(SpinJ j, const Geometry& geom, const FieldConfig& f, const DipolarCoupling& c, double t);

// Long-time average. Rejects Omega <= 0, omega' = 0, and Omega / omega' within 1e-6 of 1/2, 1 or 2.
double vdd_time_average(SpinJ j, const Geometry& geom, const FieldConfig& f, const DipolarCoupling& c = {});

}  // namespace spinrot
