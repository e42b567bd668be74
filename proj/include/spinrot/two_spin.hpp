#pragma once

#include <vector>

#include "spinrot/core.hpp"
#include "spinrot/spin_algebra.hpp"
#include "spinrot/time_series.hpp"

namespace spinrot {

// Energies in units of the dipolar strength g_d.
struct TwoSpinConfig {
    SpinJ j;
    double beta_z = 0;
    double beta_perp = 0;
    double omega_over_gd = 0;

    double delta() const { return beta_z - omega_over_gd; }
    void validate() const;
};

struct TwoSpinState {
    SpinJ j;
    StateVector amplitudes;  // index (m1+J)(2J+1) + (m2+J)

    static TwoSpinState product(SpinJ j, int n1, int n2);  // |-J+n1, -J+n2>
    bool exchange_symmetric(double tol = 1e-10) const;
};

int pair_index(SpinJ j, int n1, int n2);

ComplexMatrix build_swap(SpinJ j);
// Orthonormal basis of the exchange-symmetric subspace, ordered by (n1 <= n2).
ComplexMatrix symmetric_sector_isometry(SpinJ j);

// (beta_z - Omega)(J1z+J2z) + beta_perp (J1x+J2x) - 2 J1z J2z + J1x J2x + J1y J2y
ComplexMatrix build_hrot(const TwoSpinConfig& cfg);
// Static part of H_rot with the Zeeman terms dropped.
ComplexMatrix build_ddi(SpinJ j);
// H_rot restricted to the symmetric subspace: V^dagger H V.
ComplexMatrix build_hrot_symmetric(const TwoSpinConfig& cfg);

struct GroundState {
    double energy;
    TwoSpinState state;
    bool degenerate;
    double gap;
};

inline constexpr double kDegeneracyGap = 1e-9;

GroundState ground_state(const TwoSpinConfig& cfg);

struct ReducedDensity {
    ComplexMatrix rho;
    RealVector spectrum;  // ascending
    double entropy;       // log base 2J+1, clamped to [0, 1]
};

ComplexMatrix reduce(const StateVector& psi, SpinJ j);
double entropy_from_spectrum(const RealVector& lambdas, SpinJ j);
ReducedDensity reduce_and_entropy(const StateVector& psi, SpinJ j);
double entanglement_entropy(const StateVector& psi, SpinJ j);

struct EvolveOptions {
    bool product_populations = false;  // add P(m1,m2) channels
};

// Channels: S_A, P_init, P_down_down, P_plus, P_up_up, norm, energy
// (+ lab_S_A check and optional product populations).
TimeSeries evolve_two_spin(const TwoSpinConfig& cfg, const TwoSpinState& init, const std::vector<double>& t_grid,
                           const EvolveOptions& options = {});

// |2J; -2J+1> = (|-J,-J+1> + |-J+1,-J>)/sqrt(2)
StateVector plus_state(SpinJ j);

struct GsCell {
    double beta_z;
    double beta_perp;
    double jx_over_2j;
    double s_a;
    double energy;
    bool degenerate;
};

std::vector<GsCell> gs_phase_maps(SpinJ j, const std::vector<double>& beta_z_grid,
                                  const std::vector<double>& beta_perp_grid, int workers = 1);

}  // namespace spinrot
