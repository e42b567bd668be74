#include "spinrot/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spinrot {

ComplexMatrix rotating_hamiltonian(SpinJ j, const FieldConfig& f) {
    return f.detuning() * build_jz(j) + f.omega_perp * build_jx(j);
}

ComplexMatrix lab_hamiltonian(SpinJ j, const FieldConfig& f, double t) {
    const double ot = f.omega_rot * t;
    return f.omega_z * build_jz(j) + f.omega_perp * (std::cos(ot) * build_jx(j) + std::sin(ot) * build_jy(j));
}

double rk4_max_step(const FieldConfig& f) {
    const double fastest = std::max({f.omega_prime(), std::abs(f.omega_rot), std::abs(f.omega_z), f.omega_perp});
    return fastest == 0 ? INFINITY : 2 * kPi / (100 * fastest);
}

namespace {

void check_init(SpinJ j, const StateVector& init) {
    if (init.size() != j.dim()) throw ValidationError("initial state dimension does not match 2J+1");
    if (std::abs(init.norm() - 1) > 1e-10) throw ValidationError("initial state is not normalized");
}

template <typename RHS>
StateVector rk4(const StateVector& init, double t, double dt, RHS&& rhs) {
    const long steps = static_cast<long>(std::ceil(t / dt - 1e-12));
    if (steps <= 0) return init;
    const double h = t / steps;
    StateVector y = init;
    const cplx mi(0, -1);
    for (long k = 0; k < steps; ++k) {
        const double s = k * h;
        StateVector k1 = mi * rhs(s, y);
        StateVector k2 = mi * rhs(s + h / 2, y + (h / 2) * k1);
        StateVector k3 = mi * rhs(s + h / 2, y + (h / 2) * k2);
        StateVector k4 = mi * rhs(s + h, y + h * k3);
        y += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
}

}  // namespace

StateVector evolve(SpinJ j, const FieldConfig& f, const StateVector& init, const PropagatorPlan& plan, double t) {
    f.validate();
    check_init(j, init);
    if (!(t >= 0)) throw ValidationError("evolution time must be >= 0");
    if (plan.method == Method::spectral) {
        if (plan.frame == Frame::lab)
            throw ValidationError("spectral propagation needs the time-independent rotating-frame Hamiltonian; "
                                  "use frame=rotating and frame_transform, or method=rk4");
        return SpectralPropagator(j, f).rotating(init, t);
    }
    const double limit = rk4_max_step(f);
    if (!(plan.dt > 0) || plan.dt > limit) {
        std::ostringstream msg;
        msg << "rk4 dt must be in (0, " << limit << "] for this drive (got " << plan.dt << ")";
        throw ValidationError(msg.str());
    }
    if (plan.frame == Frame::rotating) {
        const ComplexMatrix h = rotating_hamiltonian(j, f);
        return rk4(init, t, plan.dt, [&](double, const StateVector& y) -> StateVector { return h * y; });
    }
    const ComplexMatrix jz = build_jz(j), jx = build_jx(j), jy = build_jy(j);
    return rk4(init, t, plan.dt, [&](double s, const StateVector& y) -> StateVector {
        const double ot = f.omega_rot * s;
        return f.omega_z * (jz * y) + f.omega_perp * (std::cos(ot) * (jx * y) + std::sin(ot) * (jy * y));
    });
}

StateVector frame_transform(const StateVector& state, SpinJ j, double omega_rot, double t, FrameDirection dir) {
    if (state.size() != j.dim()) throw ValidationError("frame_transform: state dimension does not match 2J+1");
    const double sign = dir == FrameDirection::to_lab ? -1.0 : 1.0;
    StateVector out = state;
    for (int k = 0; k < j.dim(); ++k) out(k) *= std::polar(1.0, sign * omega_rot * t * j.m(k));
    return out;
}

SpectralPropagator::SpectralPropagator(SpinJ j, const FieldConfig& f)
    : j_(j), f_(f), es_(eig_hermitian(rotating_hamiltonian(j, f))) {}

StateVector SpectralPropagator::rotating(const StateVector& init, double t) const {
    return apply_propagator(es_, init, t);
}

StateVector SpectralPropagator::lab(const StateVector& init, double t) const {
    return frame_transform(rotating(init, t), j_, f_.omega_rot, t, FrameDirection::to_lab);
}

}  // namespace spinrot
