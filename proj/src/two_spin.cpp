#include "spinrot/two_spin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spinrot/parallel.hpp"

namespace spinrot {

void TwoSpinConfig::validate() const {
    if (!std::isfinite(beta_z)) throw ValidationError("beta_z must be finite");
    if (!std::isfinite(omega_over_gd)) throw ValidationError("omega must be finite");
    if (!std::isfinite(beta_perp) || beta_perp < 0) {
        std::ostringstream msg;
        msg << "beta_perp must be finite and >= 0 (got " << beta_perp << ")";
        throw ValidationError(msg.str());
    }
}

int pair_index(SpinJ j, int n1, int n2) { return n1 * j.dim() + n2; }

TwoSpinState TwoSpinState::product(SpinJ j, int n1, int n2) {
    if (n1 < 0 || n2 < 0 || n1 >= j.dim() || n2 >= j.dim()) throw ValidationError("sublevel index out of range");
    return {j, basis_state<double>(j.dim() * j.dim(), pair_index(j, n1, n2))};
}

bool TwoSpinState::exchange_symmetric(double tol) const {
    return (build_swap(j) * amplitudes - amplitudes).norm() <= tol;
}

ComplexMatrix build_swap(SpinJ j) {
    const int d = j.dim();
    ComplexMatrix p = ComplexMatrix::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) p(pair_index(j, b, a), pair_index(j, a, b)) = 1;
    return p;
}

ComplexMatrix symmetric_sector_isometry(SpinJ j) {
    const int d = j.dim();
    ComplexMatrix v = ComplexMatrix::Zero(d * d, d * (d + 1) / 2);
    int col = 0;
    const double r = 1 / std::sqrt(2.0);
    for (int a = 0; a < d; ++a) {
        for (int b = a; b < d; ++b, ++col) {
            if (a == b) {
                v(pair_index(j, a, a), col) = 1;
            } else {
                v(pair_index(j, a, b), col) = r;
                v(pair_index(j, b, a), col) = r;
            }
        }
    }
    return v;
}

namespace {

struct PairOperators {
    ComplexMatrix jz_total, jx_total, ddi;
};

PairOperators pair_operators(SpinJ j) {
    const ComplexMatrix jz = build_jz(j), jx = build_jx(j), jy = build_jy(j);
    const ComplexMatrix id = ComplexMatrix::Identity(j.dim(), j.dim());
    PairOperators ops;
    ops.jz_total = kron(jz, id) + kron(id, jz);
    ops.jx_total = kron(jx, id) + kron(id, jx);
    ops.ddi = -2.0 * kron(jz, jz) + kron(jx, jx) + kron(jy, jy);
    return ops;
}

}  // namespace

ComplexMatrix build_ddi(SpinJ j) { return pair_operators(j).ddi; }

ComplexMatrix build_hrot(const TwoSpinConfig& cfg) {
    cfg.validate();
    const PairOperators ops = pair_operators(cfg.j);
    return cfg.delta() * ops.jz_total + cfg.beta_perp * ops.jx_total + ops.ddi;
}

ComplexMatrix build_hrot_symmetric(const TwoSpinConfig& cfg) {
    const ComplexMatrix v = symmetric_sector_isometry(cfg.j);
    return v.adjoint() * build_hrot(cfg) * v;
}

GroundState ground_state(const TwoSpinConfig& cfg) {
    if (cfg.omega_over_gd != 0) throw ValidationError("ground_state is defined for the static problem (omega = 0)");
    const Eigensystem<double> es = eig_hermitian(build_hrot(cfg));
    const double gap = es.values.size() > 1 ? es.values(1) - es.values(0) : INFINITY;
    return {es.values(0), {cfg.j, es.vectors.col(0)}, gap < kDegeneracyGap, gap};
}

ComplexMatrix reduce(const StateVector& psi, SpinJ j) {
    const int d = j.dim();
    if (psi.size() != d * d) throw ValidationError("two-spin state dimension must be (2J+1)^2");
    using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMajor> m(psi.data(), d, d);
    return m * m.adjoint();
}

double entropy_from_spectrum(const RealVector& lambdas, SpinJ j) {
    double s = 0;
    for (double l : lambdas)
        if (l >= 1e-14) s -= l * std::log(l);
    return std::clamp(s / std::log(static_cast<double>(j.dim())), 0.0, 1.0);
}

ReducedDensity reduce_and_entropy(const StateVector& psi, SpinJ j) {
    ReducedDensity out;
    out.rho = reduce(psi, j);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(out.rho, Eigen::EigenvaluesOnly);
    out.spectrum = es.eigenvalues();
    out.entropy = entropy_from_spectrum(out.spectrum, j);
    return out;
}

double entanglement_entropy(const StateVector& psi, SpinJ j) { return reduce_and_entropy(psi, j).entropy; }

StateVector plus_state(SpinJ j) {
    StateVector out = StateVector::Zero(j.dim() * j.dim());
    out(pair_index(j, 0, 1)) = 1 / std::sqrt(2.0);
    out(pair_index(j, 1, 0)) = 1 / std::sqrt(2.0);
    return out;
}

namespace {

std::string m_label(SpinJ j, int n) {
    const int twice = 2 * n - j.two_j();
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

}  // namespace

TimeSeries evolve_two_spin(const TwoSpinConfig& cfg, const TwoSpinState& init, const std::vector<double>& t_grid,
                           const EvolveOptions& options) {
    cfg.validate();
    const SpinJ j = cfg.j;
    const int d = j.dim(), dd = d * d;
    if (!(init.j == j) || init.amplitudes.size() != dd) throw ValidationError("initial state does not match J");
    if (std::abs(init.amplitudes.norm() - 1) > 1e-12) throw ValidationError("initial state is not normalized");
    for (std::size_t k = 1; k < t_grid.size(); ++k)
        if (!(t_grid[k] > t_grid[k - 1])) throw ValidationError("time grid must be strictly increasing");

    const ComplexMatrix h = build_hrot(cfg);
    const Eigensystem<double> es = eig_hermitian(h);
    const StateVector plus = plus_state(j);
    const ComplexMatrix jz_total = kron(build_jz(j), ComplexMatrix::Identity(d, d)) +
                                   kron(ComplexMatrix::Identity(d, d), build_jz(j));

    TimeSeries ts;
    ts.t = t_grid;
    auto& s_a = ts.add_channel("S_A");
    auto& p_init = ts.add_channel("P_init");
    auto& p_dd = ts.add_channel("P_down_down");
    auto& p_plus = ts.add_channel("P_plus");
    auto& p_uu = ts.add_channel("P_up_up");
    auto& norm = ts.add_channel("norm");
    auto& energy = ts.add_channel("energy");
    std::vector<std::vector<double>*> prod;
    if (options.product_populations)
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) prod.push_back(&ts.add_channel("P(" + m_label(j, a) + "," + m_label(j, b) + ")"));

    for (double t : t_grid) {
        const StateVector psi = apply_propagator(es, init.amplitudes, t);
        StateVector lab = psi;
        for (int k = 0; k < dd; ++k) lab(k) *= std::polar(1.0, -cfg.omega_over_gd * t * jz_total(k, k).real());

        const double s_rot = entanglement_entropy(psi, j);
        const double s_lab = entanglement_entropy(lab, j);
        const double pop_gap = (psi.cwiseAbs2() - lab.cwiseAbs2()).cwiseAbs().maxCoeff();
        if (std::abs(s_rot - s_lab) > 1e-12 || pop_gap > 1e-12) {
            std::ostringstream msg;
            msg << "rotating/lab frame mismatch at t=" << t << " (dS=" << std::abs(s_rot - s_lab)
                << ", dP=" << pop_gap << ")";
            throw NumericalContractError(msg.str());
        }
        s_a.push_back(s_rot);
        p_init.push_back(std::norm(init.amplitudes.dot(psi)));
        p_dd.push_back(std::norm(psi(pair_index(j, 0, 0))));
        p_plus.push_back(std::norm(plus.dot(psi)));
        p_uu.push_back(std::norm(psi(pair_index(j, d - 1, d - 1))));
        norm.push_back(psi.norm());
        energy.push_back(psi.dot(h * psi).real());
        for (int k = 0; k < static_cast<int>(prod.size()); ++k) prod[k]->push_back(std::norm(psi(k)));
    }
    return ts;
}

std::vector<GsCell> gs_phase_maps(SpinJ j, const std::vector<double>& beta_z_grid,
                                  const std::vector<double>& beta_perp_grid, int workers) {
    if (beta_z_grid.empty() || beta_perp_grid.empty()) throw ValidationError("ground-state map grids must be non-empty");
    const int d = j.dim();
    const ComplexMatrix jx_total = kron(build_jx(j), ComplexMatrix::Identity(d, d)) +
                                   kron(ComplexMatrix::Identity(d, d), build_jx(j));
    const std::size_t nz = beta_z_grid.size(), np = beta_perp_grid.size();
    return parallel_map(nz * np, workers, [&](std::size_t idx) {
        const double bz = beta_z_grid[idx / np], bp = beta_perp_grid[idx % np];
        const GroundState gs = ground_state({j, bz, bp, 0.0});
        GsCell cell;
        cell.beta_z = bz;
        cell.beta_perp = bp;
        cell.jx_over_2j = expectation(jx_total, gs.state.amplitudes) / j.two_j();
        cell.s_a = entanglement_entropy(gs.state.amplitudes, j);
        cell.energy = gs.energy;
        cell.degenerate = gs.degenerate;
        return cell;
    });
}

}  // namespace spinrot
