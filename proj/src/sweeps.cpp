#include "spinrot/sweeps.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "spinrot/parallel.hpp"
#include "spinrot/resonance.hpp"
#include "spinrot/single_analytic.hpp"
#include "spinrot/two_spin.hpp"

namespace spinrot {

namespace {

enum class Kind { real, positive, count, spin, reals, positives, spins };

struct Param {
    std::string value;
    Kind kind;
};

using Defaults = std::map<std::string, Param>;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        out.push_back(item);
    }
    return out;
}

bool parse_real(const std::string& s, double& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size() && std::isfinite(out);
}

std::string check_value(const std::string& key, const Param& p) {
    auto bad = [&](const std::string& what) { return "parameter '" + key + "' = '" + p.value + "': " + what; };
    auto real_ok = [&](const std::string& s, bool positive) {
        double v;
        return parse_real(s, v) && (!positive || v > 0);
    };
    switch (p.kind) {
        case Kind::real:
            if (!real_ok(p.value, false)) return bad("expected a finite number");
            break;
        case Kind::positive:
            if (!real_ok(p.value, true)) return bad("expected a number > 0");
            break;
        case Kind::count: {
            double v;
            if (!parse_real(p.value, v) || v < 1 || v != std::floor(v) || v > 1e7)
                return bad("expected an integer in [1, 1e7]");
            break;
        }
        case Kind::spin:
            try {
                SpinJ::parse(p.value);
            } catch (const ValidationError& e) {
                return bad(e.what());
            }
            break;
        case Kind::reals:
        case Kind::positives: {
            auto items = split_list(p.value);
            if (items.empty()) return bad("expected a non-empty comma-separated list");
            for (auto& it : items)
                if (!real_ok(it, p.kind == Kind::positives))
                    return bad(p.kind == Kind::positives ? "every entry must be a number > 0" : "every entry must be a finite number");
            break;
        }
        case Kind::spins: {
            auto items = split_list(p.value);
            if (items.empty()) return bad("expected a non-empty comma-separated list of J values");
            for (auto& it : items) try {
                    SpinJ::parse(it);
                } catch (const ValidationError& e) {
                    return bad(e.what());
                }
            break;
        }
    }
    return {};
}

class Params {
public:
    explicit Params(std::map<std::string, Param> values) : values_(std::move(values)) {}

    double num(const std::string& k) const {
        double v = 0;
        parse_real(values_.at(k).value, v);
        return v;
    }
    int count(const std::string& k) const { return static_cast<int>(num(k)); }
    SpinJ spin(const std::string& k) const { return SpinJ::parse(values_.at(k).value); }
    std::vector<double> nums(const std::string& k) const {
        std::vector<double> out;
        for (auto& s : split_list(values_.at(k).value)) {
            double v = 0;
            parse_real(s, v);
            out.push_back(v);
        }
        return out;
    }
    std::vector<std::string> raw_list(const std::string& k) const { return split_list(values_.at(k).value); }
    std::vector<SpinJ> spins(const std::string& k) const {
        std::vector<SpinJ> out;
        for (auto& s : split_list(values_.at(k).value)) out.push_back(SpinJ::parse(s));
        return out;
    }
    std::vector<std::pair<std::string, std::string>> meta() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (auto& [k, p] : values_) out.emplace_back(k, p.value);
        return out;
    }

private:
    std::map<std::string, Param> values_;
};

struct Context {
    std::string target;
    Params params;
    int workers;
};

using Runner = std::function<std::vector<Dataset>(const Context&)>;

struct Target {
    Defaults defaults;
    Runner run;
};

std::string jlabel(SpinJ j) { return format_number(j.value()); }

Dataset make_dataset(const Context& ctx, std::string name, std::vector<std::string> columns) {
    Dataset d;
    d.name = std::move(name);
    d.meta.emplace_back("target", ctx.target);
    d.meta.emplace_back("spinrot_version", kVersion);
    for (auto& kv : ctx.params.meta()) d.meta.push_back(kv);
    d.columns = std::move(columns);
    return d;
}

// (0, hi] in n equal steps
std::vector<double> open_grid(double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) out[static_cast<std::size_t>(k - 1)] = hi * k / n;
    return out;
}

std::vector<double> grid(const Params& p, const std::string& prefix) {
    return linspace(p.num(prefix + "_min"), p.num(prefix + "_max"), p.count(prefix + "_points"));
}

// ---- single spin (omega_z = 1 sets the unit) ----

Defaults single_map_defaults() {
    return {{"j", {"1", Kind::spin}},
            {"omega_min", {"0", Kind::real}},
            {"omega_max", {"10", Kind::real}},
            {"omega_points", {"60", Kind::count}},
            {"bperp_max", {"3", Kind::positive}},
            {"bperp_points", {"60", Kind::count}}};
}

double ground_survival_min(SpinJ j, const FieldConfig& f, double periods, int per_period) {
    const double slow = std::min(f.omega_prime(), std::abs(f.omega_rot));
    const double fast = std::max(f.omega_prime(), std::abs(f.omega_rot));
    if (slow == 0) {
        if (fast == 0) return 1.0;
        double best = 1.0;
        for (int k = 0; k <= per_period; ++k)
            best = std::min(best, survival_ground_init(j, f, 2 * kPi / fast * k / per_period));
        return best;
    }
    const double horizon = periods * 2 * kPi / slow;
    const double dt = 2 * kPi / (fast * per_period);
    const long n = std::min<long>(static_cast<long>(std::ceil(horizon / dt)), 4000000L);
    double best = 1.0;
    for (long k = 0; k <= n; ++k) best = std::min(best, survival_ground_init(j, f, horizon * k / n));
    return best;
}

std::vector<Dataset> run_ground_map(const Context& ctx, const std::string& which) {
    const Params& p = ctx.params;
    const SpinJ j = p.spin("j");
    const auto omegas = grid(p, "omega");
    const auto bperps = open_grid(p.num("bperp_max"), p.count("bperp_points"));
    const double periods = which == "smin" ? p.num("periods") : 0;
    const int per_period = which == "smin" ? p.count("samples_per_period") : 0;
    const std::string column = which + "_pow";
    auto cells = parallel_map(omegas.size() * bperps.size(), ctx.workers, [&](std::size_t idx) {
        const FieldConfig f{1.0, bperps[idx % bperps.size()], omegas[idx / bperps.size()]};
        double v = 0;
        if (which == "smin") v = ground_survival_min(j, f, periods, per_period);
        else if (which == "p2j_max") v = p2j_ground_init_max(j, f);
        else v = pgs_min(j, f);
        return std::pow(v, 1.0 / j.two_j());
    });
    Dataset d = make_dataset(ctx, ctx.target, {"omega_ratio", "bperp_ratio", column});
    d.meta.emplace_back("initial_state", "ground state of H(t=0)");
    d.meta.emplace_back("bperp_grid", "(0, bperp_max] in bperp_points equal steps");
    if (which == "smin")
        d.meta.emplace_back("t_grid", "periods x 2pi/min(omega', Omega), samples_per_period per 2pi/max(omega', Omega)");
    for (std::size_t idx = 0; idx < cells.size(); ++idx)
        d.rows.push_back({omegas[idx / bperps.size()], bperps[idx % bperps.size()], cells[idx]});
    return {d};
}

Target fig1a() {
    return {{{"j", {"1", Kind::spin}},
             {"omega_min", {"0", Kind::real}},
             {"omega_max", {"3", Kind::real}},
             {"omega_points", {"50", Kind::count}},
             {"bperp_min", {"0", Kind::real}},
             {"bperp_max", {"1", Kind::real}},
             {"bperp_points", {"50", Kind::count}}},
            [](const Context& ctx) {
                const Params& p = ctx.params;
                const SpinJ j = p.spin("j");
                Dataset d = make_dataset(ctx, ctx.target, {"omega_ratio", "bperp_ratio", "smin_pow"});
                d.meta.emplace_back("initial_state", "|m_j=-J>");
                for (double w : grid(p, "omega"))
                    for (double b : grid(p, "bperp")) {
                        const FieldConfig f{1.0, b, w};
                        d.rows.push_back({w, b, std::pow(survival_min_stretched(j, f), 1.0 / j.two_j())});
                    }
                return std::vector<Dataset>{d};
            }};
}

Target fig1b() {
    return {{{"js", {"0.5,1,2,4", Kind::spins}},
             {"bperp_ratio", {"0.1", Kind::positive}},
             {"omega_min", {"0", Kind::real}},
             {"omega_max", {"2", Kind::real}},
             {"omega_points", {"401", Kind::count}}},
            [](const Context& ctx) {
                const Params& p = ctx.params;
                const auto js = p.spins("js");
                std::vector<std::string> cols{"omega_ratio"};
                for (auto j : js) cols.push_back("p2j_max_J" + jlabel(j));
                Dataset d = make_dataset(ctx, ctx.target, cols);
                d.meta.emplace_back("initial_state", "|m_j=-J>");
                for (double w : grid(p, "omega")) {
                    std::vector<double> row{w};
                    for (auto j : js) row.push_back(p2j_max(j, {1.0, p.num("bperp_ratio"), w}));
                    d.rows.push_back(row);
                }
                return std::vector<Dataset>{d};
            }};
}

Target ground_map_target(const std::string& which) {
    Defaults defs = single_map_defaults();
    if (which == "smin") {
        defs["periods"] = {"40", Kind::positive};
        defs["samples_per_period"] = {"32", Kind::count};
    }
    return {defs, [which](const Context& ctx) { return run_ground_map(ctx, which); }};
}

Target fig2_all() {
    Defaults defs = single_map_defaults();
    defs["periods"] = {"40", Kind::positive};
    defs["samples_per_period"] = {"32", Kind::count};
    return {defs, [](const Context& ctx) {
                std::vector<Dataset> out;
                const char* names[3] = {"fig2a", "fig2b", "fig2c"};
                const char* kinds[3] = {"smin", "p2j_max", "pgs_min"};
                for (int k = 0; k < 3; ++k) {
                    auto ds = run_ground_map(ctx, kinds[k]);
                    ds[0].name = names[k];
                    out.push_back(ds[0]);
                }
                return out;
            }};
}

Target fig3() {
    return {{{"j", {"1", Kind::spin}},
             {"bperp_ratio", {"1", Kind::positive}},
             {"omegas", {"0.5,2,4", Kind::reals}},
             {"t_max", {"20", Kind::positive}},
             {"samples", {"2001", Kind::count}}},
            [](const Context& ctx) {
                const Params& p = ctx.params;
                const SpinJ j = p.spin("j");
                const auto omegas = p.nums("omegas");
                std::vector<std::string> cols{"t"};
                for (auto& s : p.raw_list("omegas")) cols.push_back("s_pow_omega" + s);
                Dataset d = make_dataset(ctx, ctx.target, cols);
                d.meta.emplace_back("initial_state", "ground state of H(t=0)");
                for (double t : linspace(0, p.num("t_max"), p.count("samples"))) {
                    std::vector<double> row{t};
                    for (double w : omegas)
                        row.push_back(std::pow(survival_ground_init(j, {1.0, p.num("bperp_ratio"), w}, t), 1.0 / j.two_j()));
                    d.rows.push_back(row);
                }
                return std::vector<Dataset>{d};
            }};
}

// ---- two spins ----

Target fig4() {
    return {{{"js", {"0.5,1,2", Kind::spins}},
             {"beta_z_min", {"0", Kind::real}},
             {"beta_z_max", {"3", Kind::real}},
             {"beta_z_points", {"61", Kind::count}},
             {"beta_perp_min", {"0", Kind::real}},
             {"beta_perp_max", {"10", Kind::real}},
             {"beta_perp_points", {"101", Kind::count}}},
            [](const Context& ctx) {
                const Params& p = ctx.params;
                std::vector<Dataset> out;
                for (auto j : p.spins("js")) {
                    auto cells = gs_phase_maps(j, grid(p, "beta_z"), grid(p, "beta_perp"), ctx.workers);
                    Dataset d = make_dataset(ctx, ctx.target + "_J" + jlabel(j),
                                             {"beta_z", "beta_perp", "jx_over_2j", "s_a", "degenerate"});
                    d.meta.emplace_back("j", j.str());
                    d.meta.emplace_back("degenerate", "1 where the ground-state gap is below 1e-9");
                    for (auto& c : cells)
                        d.rows.push_back({c.beta_z, c.beta_perp, c.jx_over_2j, c.s_a, c.degenerate ? 1.0 : 0.0});
                    out.push_back(d);
                }
                return out;
            }};
}

Target fig5() {
    return {{{"js", {"0.5,1,2,3", Kind::spins}},
             {"beta_z_min", {"0", Kind::real}},
             {"beta_z_max", {"1", Kind::real}},
             {"beta_z_points", {"101", Kind::count}},
             {"beta_perp_max", {"10", Kind::positive}},
             {"beta_perp_points", {"400", Kind::count}}},
            [](const Context& ctx) {
                const Params& p = ctx.params;
                const auto js = p.spins("js");
                const auto bz = grid(p, "beta_z");
                const auto bp = open_grid(p.num("beta_perp_max"), p.count("beta_perp_points"));
                std::vector<std::string> cols{"beta_z"};
                for (auto j : js) {
                    cols.push_back("s_a_max_J" + jlabel(j));
                    cols.push_back("beta_perp_at_max_J" + jlabel(j));
                }
                Dataset d = make_dataset(ctx, ctx.target, cols);
                d.meta.emplace_back("beta_perp_grid", "(0, beta_perp_max] in beta_perp_points equal steps");
                std::vector<std::vector<GsCell>> maps;
                for (auto j : js) maps.push_back(gs_phase_maps(j, bz, bp, ctx.workers));
                for (std::size_t iz = 0; iz < bz.size(); ++iz) {
                    std::vector<double> row{bz[iz]};
                    for (auto& m : maps) {
                        const GsCell* best = &m[iz * bp.size()];
                        for (std::size_t ip = 0; ip < bp.size(); ++ip)
                            if (m[iz * bp.size() + ip].s_a > best->s_a) best = &m[iz * bp.size() + ip];
                        row.push_back(best->s_a);
                        row.push_back(best->beta_perp);
                    }
                    d.rows.push_back(row);
                }
                return std::vector<Dataset>{d};
            }};
}

Target dynamics_target(const std::string& j, const std::string& bz, const std::string& bp, const std::string& omegas,
                       const std::string& t_max, const std::string& samples) {
    return {{{"j", {j, Kind::spin}},
             {"beta_z", {bz, Kind::real}},
             {"beta_perp", {bp, Kind::real}},
             {"omegas", {omegas, Kind::reals}},
             {"t_max", {t_max, Kind::positive}},
             {"samples", {samples, Kind::count}}},
            [](const Context& ctx) {
                const Params& p = ctx.params;
                const SpinJ j = p.spin("j");
                const auto omegas = p.nums("omegas");
                const auto labels = p.raw_list("omegas");
                const auto times = linspace(0, p.num("t_max"), p.count("samples"));
                std::vector<Dataset> out;
                for (std::size_t k = 0; k < omegas.size(); ++k) {
                    const TwoSpinConfig cfg{j, p.num("beta_z"), p.num("beta_perp"), omegas[k]};
                    const TimeSeries ts = evolve_two_spin(cfg, TwoSpinState::product(j, 0, 0), times);
                    Dataset d = Dataset::from_time_series(ctx.target + "_omega" + labels[k], ts,
                                                          {"P_down_down", "P_plus", "P_up_up", "S_A"});
                    Dataset head = make_dataset(ctx, d.name, d.columns);
                    head.rows = std::move(d.rows);
                    head.meta.emplace_back("omega", labels[k]);
                    head.meta.emplace_back("initial_state", "|-J,-J>");
                    head.meta.emplace_back("frame", "rotating (populations and S_A are frame independent)");
                    out.push_back(std::move(head));
                }
                return out;
            }};
}

Target scan_target(const std::string& j, const std::string& bz, const std::string& bps, const std::string& omin,
                   const std::string& omax, const std::string& points) {
    return {{{"j", {j, Kind::spin}},
             {"beta_z", {bz, Kind::real}},
             {"beta_perps", {bps, Kind::positives}},
             {"omega_min", {omin, Kind::real}},
             {"omega_max", {omax, Kind::real}},
             {"omega_points", {points, Kind::count}},
             {"horizon_periods", {"15", Kind::positive}},
             {"samples", {std::to_string(kMinScanSamples), Kind::count}}},
            [](const Context& ctx) {
                const Params& p = ctx.params;
                const SpinJ j = p.spin("j");
                const auto bps = p.nums("beta_perps");
                const auto labels = p.raw_list("beta_perps");
                std::vector<Dataset> out;
                for (std::size_t k = 0; k < bps.size(); ++k) {
                    ScanSpec spec;
                    spec.j = j;
                    spec.beta_z = p.num("beta_z");
                    spec.beta_perp = bps[k];
                    spec.omegas = grid(p, "omega");
                    spec.horizon = p.num("horizon_periods") * 2 * kPi / bps[k];
                    spec.samples = p.count("samples");
                    const auto res = scan_samax(spec, ctx.workers);
                    Dataset d = make_dataset(ctx, ctx.target + "_bperp" + labels[k], {"omega", "samax", "t_at_max"});
                    d.meta.emplace_back("beta_perp", labels[k]);
                    d.meta.emplace_back("horizon", format_number(*spec.horizon));
                    d.meta.emplace_back("horizon_rule", "horizon_periods * 2pi / beta_perp");
                    d.meta.emplace_back("t_grid", "samples points spanning [0, horizon] inclusive");
                    d.meta.emplace_back("initial_state", "|-J,-J>");
                    for (auto& r : resonance_catalog(j, spec.beta_z))
                        d.meta.emplace_back("resonance_" + to_string(r.id), format_number(r.omega_over_gd));
                    for (auto& r : res) d.rows.push_back({r.omega_over_gd, r.samax, r.t_at_max});
                    out.push_back(std::move(d));
                }
                return out;
            }};
}

Target scan_panel(Target base, const std::string& bp) {
    base.defaults["beta_perps"].value = bp;
    return base;
}

Target fig9() {
    return {{{"beta_z", {"3", Kind::real}},
             {"beta_perp", {"2", Kind::real}},
             {"omega_min", {"0", Kind::real}},
             {"omega_max", {"8", Kind::real}},
             {"omega_points", {"801", Kind::count}}},
            [](const Context& ctx) {
                const Params& p = ctx.params;
                const SpinJ half(1);
                const ComplexMatrix v = symmetric_sector_isometry(half);
                StateVector singlet = StateVector::Zero(4);
                singlet(1) = 1 / std::sqrt(2.0);
                singlet(2) = -1 / std::sqrt(2.0);
                Dataset d = make_dataset(ctx, ctx.target,
                                         {"omega", "E1", "E2", "E3", "E4", "overlap1", "overlap2", "overlap3", "overlap4",
                                          "gap31", "gap43"});
                d.meta.emplace_back("j", "1/2");
                d.meta.emplace_back("labels", "E1<E3<E4 exchange-symmetric, E2 the singlet; overlap_k = |<k|dd>|^2");
                for (double w : grid(p, "omega")) {
                    const TwoSpinConfig cfg{half, p.num("beta_z"), p.num("beta_perp"), w};
                    const ComplexMatrix h = build_hrot(cfg);
                    const auto es = eig_hermitian<double>(v.adjoint() * h * v);
                    const StateVector dd = TwoSpinState::product(half, 0, 0).amplitudes;
                    double ov[3];
                    for (int q = 0; q < 3; ++q) ov[q] = std::norm((v * es.vectors.col(q)).dot(dd));
                    const double e2 = expectation(h, singlet);
                    d.rows.push_back({w, es.values(0), e2, es.values(1), es.values(2), ov[0], 0.0, ov[1], ov[2],
                                      es.values(1) - es.values(0), es.values(2) - es.values(1)});
                }
                return std::vector<Dataset>{d};
            }};
}

const std::map<std::string, Target>& registry() {
    static const std::map<std::string, Target> targets = [] {
        std::map<std::string, Target> t;
        t["fig1a"] = fig1a();
        t["fig1b"] = fig1b();
        t["fig2"] = fig2_all();
        t["fig2a"] = ground_map_target("smin");
        t["fig2b"] = ground_map_target("p2j_max");
        t["fig2c"] = ground_map_target("pgs_min");
        t["fig3"] = fig3();
        t["fig4"] = fig4();
        t["fig5"] = fig5();
        t["fig6"] = dynamics_target("0.5", "3", "0.5", "3,4.5", "100", "4001");
        t["fig8"] = dynamics_target("0.5", "3", "2", "4.4,4.5,4.6", "5", "1001");
        t["fig9"] = fig9();
        const Target f7 = scan_target("0.5", "3", "0.1,0.5,1,2", "0", "8", "801");
        t["fig7"] = f7;
        t["fig7a"] = scan_panel(f7, "0.1");
        t["fig7b"] = scan_panel(f7, "0.5");
        t["fig7c"] = scan_panel(f7, "1");
        t["fig7d"] = scan_panel(f7, "2");
        const Target f10 = scan_target("1", "0", "0.1,0.5", "-1", "5", "1201");
        t["fig10"] = f10;
        t["fig10a"] = scan_panel(f10, "0.1");
        t["fig10b"] = scan_panel(f10, "0.5");
        const Target f11 = scan_target("2", "0", "0.1,0.5", "-1", "7", "1601");
        t["fig11"] = f11;
        t["fig11a"] = scan_panel(f11, "0.1");
        t["fig11b"] = scan_panel(f11, "0.5");
        return t;
    }();
    return targets;
}

std::map<std::string, Param> resolve(const SweepSpec& spec, std::vector<std::string>& errors) {
    std::map<std::string, Param> values;
    auto it = registry().find(spec.target);
    if (it == registry().end()) {
        std::string names;
        for (auto& n : sweep_targets()) names += (names.empty() ? "" : ", ") + n;
        errors.push_back("unknown target '" + spec.target + "' (valid: " + names + ")");
        return values;
    }
    values = it->second.defaults;
    for (auto& [k, v] : spec.params) {
        auto found = values.find(k);
        if (found == values.end()) {
            std::string keys;
            for (auto& [dk, dv] : it->second.defaults) keys += (keys.empty() ? "" : ", ") + dk;
            errors.push_back("parameter '" + k + "' is not used by " + spec.target + " (valid: " + keys + ")");
            continue;
        }
        found->second.value = v;
    }
    for (auto& [k, p] : values)
        if (auto e = check_value(k, p); !e.empty()) errors.push_back(e);
    for (const char* prefix : {"omega", "bperp", "beta_z", "beta_perp"}) {
        const std::string lo = std::string(prefix) + "_min", hi = std::string(prefix) + "_max";
        if (values.count(lo) && values.count(hi) && check_value(lo, values[lo]).empty() &&
            check_value(hi, values[hi]).empty()) {
            double a = 0, b = 0;
            parse_real(values[lo].value, a);
            parse_real(values[hi].value, b);
            if (a > b) errors.push_back(lo + " must not exceed " + hi);
        }
    }
    if (values.count("horizon_periods") && values.count("samples")) {
        double s = 0;
        if (parse_real(values["samples"].value, s) && s < kMinScanSamples)
            errors.push_back("samples must be >= " + std::to_string(kMinScanSamples) + " for an Omega scan");
    }
    if (values.count("beta_perp")) {
        double b = 0;
        if (parse_real(values["beta_perp"].value, b) && b < 0) errors.push_back("beta_perp must be >= 0");
    }
    if (spec.workers < 1) errors.push_back("workers must be >= 1");
    return values;
}

}  // namespace

Dataset Dataset::from_time_series(std::string name, const TimeSeries& ts, const std::vector<std::string>& channels) {
    ts.validate();
    Dataset d;
    d.name = std::move(name);
    d.columns.push_back("t");
    std::vector<const std::vector<double>*> cols;
    for (auto& c : channels) {
        d.columns.push_back(c);
        cols.push_back(&ts.channel(c));
    }
    for (std::size_t k = 0; k < ts.t.size(); ++k) {
        std::vector<double> row{ts.t[k]};
        for (auto* c : cols) row.push_back((*c)[k]);
        d.rows.push_back(std::move(row));
    }
    return d;
}

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ValidationError("format must be csv or json (got '" + text + "')");
}

std::vector<std::string> sweep_targets() {
    std::vector<std::string> out;
    for (auto& [k, v] : registry()) out.push_back(k);
    return out;
}

std::map<std::string, std::string> sweep_defaults(const std::string& target) {
    auto it = registry().find(target);
    if (it == registry().end()) throw ValidationError("unknown target '" + target + "'");
    std::map<std::string, std::string> out;
    for (auto& [k, p] : it->second.defaults) out[k] = p.value;
    return out;
}

void validate_sweep(const SweepSpec& spec) {
    std::vector<std::string> errors;
    resolve(spec, errors);
    if (!errors.empty()) {
        std::string msg = "invalid sweep specification:";
        for (auto& e : errors) msg += "\n  " + e;
        throw ValidationError(msg);
    }
}

std::vector<Dataset> compute_sweep(const SweepSpec& spec) {
    std::vector<std::string> errors;
    auto values = resolve(spec, errors);
    if (!errors.empty()) {
        std::string msg = "invalid sweep specification:";
        for (auto& e : errors) msg += "\n  " + e;
        throw ValidationError(msg);
    }
    const Context ctx{spec.target, Params(std::move(values)), spec.workers};
    return registry().at(spec.target).run(ctx);
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0) return "0";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, p);
}

std::string format_csv(const Dataset& d) {
    std::string out;
    for (auto& [k, v] : d.meta) out += "# " + k + "=" + v + "\n";
    for (std::size_t c = 0; c < d.columns.size(); ++c) out += (c ? "," : "") + d.columns[c];
    out += "\n";
    for (auto& row : d.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_number(row[c]);
        }
        out += "\n";
    }
    return out;
}

std::string format_json(const Dataset& d) {
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (auto& [k, v] : d.meta) meta[k] = v;
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < d.columns.size(); ++c) {
        nlohmann::ordered_json col = nlohmann::ordered_json::array();
        for (auto& row : d.rows) col.push_back(row[c]);
        data[d.columns[c]] = std::move(col);
    }
    nlohmann::ordered_json doc;
    doc["name"] = d.name;
    doc["meta"] = std::move(meta);
    doc["data"] = std::move(data);
    return doc.dump(1) + "\n";
}

void write_dataset(const Dataset& d, OutputFormat format, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file " + path.string());
    out << (format == OutputFormat::csv ? format_csv(d) : format_json(d));
    if (!out) throw ValidationError("failed writing " + path.string());
}

std::vector<std::filesystem::path> run_sweep(const SweepSpec& spec) {
    validate_sweep(spec);
    std::error_code ec;
    std::filesystem::create_directories(spec.out_dir, ec);
    if (ec) throw ValidationError("cannot create output directory " + spec.out_dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> written;
    for (auto& d : compute_sweep(spec)) {
        auto path = spec.out_dir / (d.name + (spec.format == OutputFormat::csv ? ".csv" : ".json"));
        write_dataset(d, spec.format, path);
        written.push_back(path);
    }
    return written;
}

}  // namespace spinrot
