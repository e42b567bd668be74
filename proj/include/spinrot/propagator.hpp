#pragma once

#include "spinrot/core.hpp"
#include "spinrot/halfspin_gas.hpp"
#include "spinrot/spin_algebra.hpp"

namespace spinrot {

enum class Frame { rotating, lab };
enum class Method { spectral, rk4 };
enum class FrameDirection { to_lab, to_rotating };

struct PropagatorPlan {
    Frame frame = Frame::rotating;
    Method method = Method::spectral;
    double dt = 0;  // rk4 only
};

// H' = (omega_z - Omega) J_z + omega_perp J_x
ComplexMatrix rotating_hamiltonian(SpinJ j, const FieldConfig& f);
// H(t) = omega_z J_z + omega_perp (cos(Omega t) J_x + sin(Omega t) J_y)
ComplexMatrix lab_hamiltonian(SpinJ j, const FieldConfig& f, double t);

// Largest dt accepted by rk4 for this drive.
double rk4_max_step(const FieldConfig& f);

// Lab plans return the lab-frame state; rotating plans the rotating-frame state.
// Both frames coincide at t = 0, so init is shared.
StateVector evolve(SpinJ j, const FieldConfig& f, const StateVector& init, const PropagatorPlan& plan, double t);

StateVector frame_transform(const StateVector& state, SpinJ j, double omega_rot, double t, FrameDirection dir);

// Eigensystem of H' computed once, for many evaluation times.
class SpectralPropagator {
public:
    SpectralPropagator(SpinJ j, const FieldConfig& f);

    StateVector rotating(const StateVector& init, double t) const;
    StateVector lab(const StateVector& init, double t) const;
    const Eigensystem<double>& eigensystem() const { return es_; }

private:
    SpinJ j_;
    FieldConfig f_;
    Eigensystem<double> es_;
};

}  // namespace spinrot
