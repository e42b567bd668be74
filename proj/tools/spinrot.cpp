#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "spinrot/kink.hpp"
#include "spinrot/parallel.hpp"
#include "spinrot/propagator.hpp"
#include "spinrot/resonance.hpp"
#include "spinrot/selftest.hpp"
#include "spinrot/single_analytic.hpp"
#include "spinrot/sweeps.hpp"
#include "spinrot/two_spin.hpp"
#include "spinrot/weak_ddi.hpp"

using namespace spinrot;

namespace {

struct Common {
    std::string j = "1/2";
    std::string out = "-";
    std::string format = "csv";
    int workers = default_workers();
};

// "lo:hi:n" or a single value
std::vector<double> parse_grid(const std::string& flag, const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    auto num = [&](const std::string& s) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != s.size() || s.empty() || !std::isfinite(v))
            throw ValidationError(flag + ": '" + text + "' is not a number or lo:hi:n grid");
        return v;
    };
    if (parts.size() == 1) return {num(parts[0])};
    if (parts.size() != 3) throw ValidationError(flag + ": expected a value or lo:hi:n (got '" + text + "')");
    const double lo = num(parts[0]), hi = num(parts[1]), n = num(parts[2]);
    if (n < 1 || n != std::floor(n) || n > 1e6) throw ValidationError(flag + ": grid point count must be an integer in [1, 1e6]");
    if (lo > hi) throw ValidationError(flag + ": grid lower end exceeds upper end");
    return linspace(lo, hi, static_cast<int>(n));
}

SpinJ parse_j(const std::string& text) {
    try {
        return SpinJ::parse(text);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("--j: ") + e.what());
    }
}

void emit(const Dataset& d, const Common& c) {
    const OutputFormat fmt = parse_format(c.format);
    if (c.out == "-") {
        std::cout << (fmt == OutputFormat::csv ? format_csv(d) : format_json(d));
        return;
    }
    write_dataset(d, fmt, c.out);
    std::cerr << "wrote " << c.out << "\n";
}

Dataset header(const std::string& name, std::vector<std::string> columns,
               std::vector<std::pair<std::string, std::string>> meta) {
    Dataset d;
    d.name = name;
    d.meta.emplace_back("command", name);
    d.meta.emplace_back("spinrot_version", kVersion);
    for (auto& kv : meta) d.meta.push_back(std::move(kv));
    d.columns = std::move(columns);
    return d;
}

std::string num(double x) { return format_number(x); }

void add_common(CLI::App* app, Common& c, bool with_j = true) {
    if (with_j) app->add_option("--j", c.j, "spin quantum number, 0.5 or 1/2 style, 1/2..16")->capture_default_str();
    app->add_option("--out", c.out, "output file, - for stdout")->capture_default_str();
    app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app->add_option("--workers", c.workers, "worker threads (default $SPINROT_WORKERS or all cores)")
        ->check(CLI::Range(1, 1024));
    app->add_option("--config", "flat key=value file; flags given on the command line win");
}

bool given(const std::vector<std::string>& args, const std::string& flag) {
    for (const auto& a : args)
        if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
}

bool param_given(const std::vector<std::string>& args, const std::string& key) {
    for (std::size_t k = 0; k + 1 < args.size(); ++k)
        if (args[k] == "--param" && args[k + 1].rfind(key + "=", 0) == 0) return true;
    for (const auto& a : args)
        if (a.rfind("--param=" + key + "=", 0) == 0) return true;
    return false;
}

// Splice a --config file into the argument list as ordinary flags, skipping keys already on the command line.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
        else if (args[k].rfind("--config=", 0) == 0) path = args[k].substr(9);
    }
    if (path.empty()) return args;
    const bool figure = !args.empty() && args[0] == "figure";
    std::vector<std::string> extra;
    for (const auto& item : CLI::ConfigINI().from_file(path)) {
        if (!item.parents.empty())
            throw ValidationError("--config: sections are not supported (key '" + item.fullname() + "')");
        if (item.inputs.size() != 1) throw ValidationError("--config: '" + item.name + "' needs exactly one value");
        const std::string flag = "--" + item.name;
        const bool as_param = figure && item.name != "out" && item.name != "format" && item.name != "workers";
        if (as_param) {
            if (!param_given(args, item.name)) extra.insert(extra.end(), {"--param", item.name + "=" + item.inputs[0]});
        } else if (!given(args, flag)) {
            extra.push_back(flag + "=" + item.inputs[0]);
        }
    }
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

int run_selftest_cmd() {
    int failed = 0;
    for (const auto& r : run_selftest()) {
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << ": " << r.name << std::scientific
                  << std::setprecision(2) << "  measured=" << r.measured << " tol=" << r.tolerance << "\n";
        failed += !r.passed();
    }
    std::cout << (failed ? "selftest FAILED (" + std::to_string(failed) + ")" : std::string("selftest passed")) << "\n";
    return failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinrot: large-spin and dipolar spin-pair dynamics in rotating fields"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    Common common;

    // single
    auto* single = app.add_subcommand("single", "single-spin time series (analytic or numeric)");
    double omega_z = 1, omega_perp = 0.1, omega = 1, t_max = 20, theta0 = 0, dt = 0;
    int samples = 401, level = 0;
    std::string method = "analytic", frame = "lab";
    add_common(single, common);
    single->add_option("--omega-z", omega_z, "static field frequency")->capture_default_str();
    single->add_option("--omega-perp", omega_perp, "rotating field amplitude")->capture_default_str();
    single->add_option("--omega", omega, "rotation frequency")->capture_default_str();
    single->add_option("--t-max", t_max, "end time")->check(CLI::PositiveNumber)->capture_default_str();
    single->add_option("--samples", samples, "time points")->check(CLI::Range(2, 10000000))->capture_default_str();
    single->add_option("--level", level, "initial sublevel index n (m_j = -J + n)")->capture_default_str();
    single->add_option("--theta0", theta0, "initial tilt about y")->capture_default_str();
    single->add_option("--method", method, "analytic, spectral or rk4")
        ->check(CLI::IsMember({"analytic", "spectral", "rk4"}))
        ->capture_default_str();
    single->add_option("--frame", frame, "lab or rotating (numeric methods)")
        ->check(CLI::IsMember({"lab", "rotating"}))
        ->capture_default_str();
    single->add_option("--dt", dt, "rk4 step (default: 1/50 of the largest accepted step)");

    // two-spin-gs
    auto* gs = app.add_subcommand("two-spin-gs", "ground-state <J_x>/2J and S_A maps at Omega = 0");
    std::string beta_z_grid = "0:3:61", beta_perp_grid = "0:10:101";
    add_common(gs, common);
    gs->add_option("--beta-z", beta_z_grid, "value or lo:hi:n")->capture_default_str();
    gs->add_option("--beta-perp", beta_perp_grid, "value or lo:hi:n")->capture_default_str();

    // two-spin-dyn
    auto* dyn = app.add_subcommand("two-spin-dyn", "two-spin populations and S_A from |-J,-J>");
    double beta_z = 3, beta_perp = 0.5;
    bool product_pops = false;
    add_common(dyn, common);
    dyn->add_option("--beta-z", beta_z, "B_z over g_d")->capture_default_str();
    dyn->add_option("--beta-perp", beta_perp, "B_perp over g_d")->check(CLI::NonNegativeNumber)->capture_default_str();
    dyn->add_option("--omega", omega, "Omega over g_d")->capture_default_str();
    dyn->add_option("--t-max", t_max, "end time in 1/g_d")->check(CLI::PositiveNumber)->capture_default_str();
    dyn->add_option("--samples", samples, "time points")->check(CLI::Range(2, 10000000))->capture_default_str();
    dyn->add_flag("--product-populations", product_pops, "add P(m1,m2) columns");

    // scan
    auto* scan = app.add_subcommand("scan", "Omega scan of max-over-t S_A from |-J,-J>");
    std::string omega_grid = "0:8:801";
    std::optional<double> horizon;
    int scan_samples = kMinScanSamples;
    add_common(scan, common);
    scan->add_option("--beta-z", beta_z, "B_z over g_d")->capture_default_str();
    scan->add_option("--beta-perp", beta_perp, "B_perp over g_d, > 0")->check(CLI::PositiveNumber)->capture_default_str();
    scan->add_option("--omega", omega_grid, "value or lo:hi:n")->capture_default_str();
    scan->add_option("--t-max", horizon, "horizon (default 15 * 2pi / beta_perp)")->check(CLI::PositiveNumber);
    scan->add_option("--samples", scan_samples, "time points per Omega")
        ->check(CLI::Range(kMinScanSamples, 100000000))
        ->capture_default_str();

    // resonances
    auto* res = app.add_subcommand("resonances", "catalog of entanglement resonances");
    add_common(res, common);
    res->add_option("--beta-z", beta_z, "B_z over g_d")->capture_default_str();

    // kink
    auto* kink = app.add_subcommand("kink", "J = 1/2 equal-gap criterion and analytic trace");
    std::optional<double> kink_perp;
    double kink_omega = kKinkOmega, kink_bz = kKinkBetaZ;
    int kink_samples = 0;
    add_common(kink, common, false);
    kink->add_option("--beta-z", kink_bz, "B_z over g_d")->capture_default_str();
    kink->add_option("--omega", kink_omega, "Omega over g_d")->capture_default_str();
    kink->add_option("--beta-perp", kink_perp, "override the criterion value (must satisfy it)");
    kink->add_option("--t-max", t_max, "trace end time")->check(CLI::PositiveNumber);
    kink->add_option("--samples", kink_samples, "trace points; 0 prints the solution only")->check(CLI::NonNegativeNumber);

    // ddi-avg
    auto* ddi = app.add_subcommand("ddi-avg", "time-averaged dipolar energy of two precessing moments");
    Geometry geom;
    std::optional<double> g_j;
    add_common(ddi, common);
    ddi->add_option("--omega-z", omega_z, "static field frequency")->capture_default_str();
    ddi->add_option("--omega-perp", omega_perp, "rotating field amplitude")->capture_default_str();
    ddi->add_option("--omega", omega, "rotation frequency")->capture_default_str();
    ddi->add_option("--r", geom.r, "separation")->check(CLI::PositiveNumber)->capture_default_str();
    ddi->add_option("--theta-prime", geom.theta_prime, "polar angle of the separation")->capture_default_str();
    ddi->add_option("--phi-prime", geom.phi_prime, "azimuth of the separation")->capture_default_str();
    ddi->add_option("--theta0", geom.theta0, "initial tilt")->capture_default_str();
    ddi->add_option("--level", geom.n, "sublevel index n of both moments")->capture_default_str();
    ddi->add_option("--g-j", g_j, "Lande factor; switches to SI units (r in metres, energy in J)");

    // figure
    auto* fig = app.add_subcommand("figure", "reproduce the data behind a figure");
    std::string fig_name;
    std::vector<std::string> fig_params;
    std::string fig_out = ".";
    bool list_params = false;
    fig->add_option("name", fig_name, "target")->required();
    fig->add_option("--param", fig_params, "key=value override (repeatable)");
    fig->add_option("--out", fig_out, "output directory")->capture_default_str();
    fig->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    fig->add_option("--workers", common.workers, "worker threads")->check(CLI::Range(1, 1024));
    fig->add_flag("--list-params", list_params, "print the defaults and exit");
    fig->add_option("--config", "flat key=value file: target parameters plus out, format, workers");

    auto* self = app.add_subcommand("selftest", "invariant and analytic-vs-numeric oracle suite");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*self) return run_selftest_cmd();

        if (*single) {
            const SpinJ j = parse_j(common.j);
            const FieldConfig f{omega_z, omega_perp, omega};
            f.validate();
            const InitialSpec init = theta0 == 0 ? InitialSpec::z_sublevel(level) : InitialSpec::tilted(theta0, level);
            init.validate(j);
            std::vector<std::string> cols{"t"};
            for (int k = 0; k < j.dim(); ++k) cols.push_back("P_" + num(j.m(k)));
            for (const char* c : {"Jx", "Jy", "Jz"}) cols.emplace_back(c);
            Dataset d = header("single", cols,
                               {{"j", j.str()}, {"omega_z", num(omega_z)}, {"omega_perp", num(omega_perp)},
                                {"omega", num(omega)}, {"level", std::to_string(level)}, {"theta0", num(theta0)},
                                {"method", method}, {"frame", method == "analytic" ? "lab" : frame}});
            const ComplexMatrix jx = build_jx(j), jy = build_jy(j), jz = build_jz(j);
            const StateVector psi0 = initial_state(j, init, f);
            PropagatorPlan plan{frame == "lab" ? Frame::lab : Frame::rotating,
                                method == "rk4" ? Method::rk4 : Method::spectral, 0};
            if (method == "rk4") {
                plan.dt = dt > 0 ? dt : rk4_max_step(f) / 50;
                d.meta.emplace_back("dt", num(plan.dt));
            }
            std::optional<SpectralPropagator> spectral;
            if (method == "spectral") spectral.emplace(j, f);
            for (double t : linspace(0, t_max, samples)) {
                std::vector<double> row{t};
                if (method == "analytic") {
                    for (double p : populations_tilted(j, init.tilt(f), f, t)) row.push_back(p);
                    const Eigen::Vector3d m = angular_momentum(j, init, f, t);
                    row.insert(row.end(), {m.x(), m.y(), m.z()});
                } else {
                    StateVector psi;
                    if (spectral) psi = plan.frame == Frame::lab ? spectral->lab(psi0, t) : spectral->rotating(psi0, t);
                    else psi = evolve(j, f, psi0, plan, t);
                    for (int k = 0; k < j.dim(); ++k) row.push_back(std::norm(psi(k)));
                    row.insert(row.end(), {expectation(jx, psi), expectation(jy, psi), expectation(jz, psi)});
                }
                d.rows.push_back(std::move(row));
            }
            emit(d, common);
            return 0;
        }

        if (*gs) {
            const SpinJ j = parse_j(common.j);
            const auto cells = gs_phase_maps(j, parse_grid("--beta-z", beta_z_grid), parse_grid("--beta-perp", beta_perp_grid),
                                             common.workers);
            Dataset d = header("two-spin-gs", {"beta_z", "beta_perp", "jx_over_2j", "s_a", "degenerate", "energy"},
                               {{"j", j.str()}, {"beta_z", beta_z_grid}, {"beta_perp", beta_perp_grid}, {"omega", "0"}});
            for (const auto& c : cells)
                d.rows.push_back({c.beta_z, c.beta_perp, c.jx_over_2j, c.s_a, c.degenerate ? 1.0 : 0.0, c.energy});
            emit(d, common);
            return 0;
        }

        if (*dyn) {
            const SpinJ j = parse_j(common.j);
            const TwoSpinConfig cfg{j, beta_z, beta_perp, omega};
            cfg.validate();
            const TimeSeries ts = evolve_two_spin(cfg, TwoSpinState::product(j, 0, 0), linspace(0, t_max, samples),
                                                  {product_pops});
            Dataset d = Dataset::from_time_series("two-spin-dyn", ts, ts.names);
            Dataset h = header("two-spin-dyn", d.columns,
                               {{"j", j.str()}, {"beta_z", num(beta_z)}, {"beta_perp", num(beta_perp)},
                                {"omega", num(omega)}, {"initial_state", "|-J,-J>"}, {"frame", "rotating"}});
            h.rows = std::move(d.rows);
            emit(h, common);
            return 0;
        }

        if (*scan) {
            ScanSpec spec;
            spec.j = parse_j(common.j);
            spec.beta_z = beta_z;
            spec.beta_perp = beta_perp;
            spec.omegas = parse_grid("--omega", omega_grid);
            spec.horizon = horizon;
            spec.samples = scan_samples;
            spec.validate();
            const auto rows = scan_samax(spec, common.workers);
            Dataset d = header("scan", {"omega", "samax", "t_at_max"},
                               {{"j", spec.j.str()}, {"beta_z", num(beta_z)}, {"beta_perp", num(beta_perp)},
                                {"omega", omega_grid}, {"horizon", num(spec.resolved_horizon())},
                                {"samples", std::to_string(spec.samples)}, {"initial_state", "|-J,-J>"}});
            for (const auto& r : rows) d.rows.push_back({r.omega_over_gd, r.samax, r.t_at_max});
            emit(d, common);
            return 0;
        }

        if (*res) {
            const SpinJ j = parse_j(common.j);
            const auto items = resonance_catalog(j, beta_z);
            if (common.format == "json" || common.out != "-") {
                Dataset d = header("resonances", {"omega", "target_m", "target_entropy", "order"},
                                   {{"j", j.str()}, {"beta_z", num(beta_z)}});
                for (const auto& r : items) {
                    std::string merged;
                    for (auto id : r.coincides_with) merged += "," + to_string(id);
                    d.meta.emplace_back("item_" + to_string(r.id), r.target_label + merged);
                    d.rows.push_back({r.omega_over_gd, double(r.target_m), r.target_entropy, double(r.order)});
                }
                emit(d, common);
                return 0;
            }
            std::cout << "J = " << j.str() << ", beta_z = " << num(beta_z) << "\n";
            for (const auto& r : items) {
                std::cout << "(" << to_string(r.id) << ") Omega/g_d = " << num(r.omega_over_gd) << "  target " << r.target_label
                          << "  M = " << r.target_m << "  S = " << num(r.target_entropy) << "  order " << r.order;
                for (auto id : r.coincides_with) std::cout << "  [coincides with (" << to_string(id) << ")]";
                std::cout << "\n";
            }
            return 0;
        }

        if (*kink) {
            const KinkSolution s = kink_eigensystem(kink_bz, kink_omega, kink_perp);
            if (kink_samples == 0) {
                std::cout << "beta_perp = " << num(s.beta_perp) << "\nalpha = " << num(s.alpha) << "\nE1 = " << num(s.e1)
                          << "\nE3 = " << num(s.e3) << "\nE4 = " << num(s.e4) << "\nE3 - E1 = " << num(s.e3 - s.e1)
                          << "\nE4 - E3 = " << num(s.e4 - s.e3) << "\n";
                return 0;
            }
            const double end = kink->count("--t-max") ? t_max : 2 * 2 * kPi / s.alpha;
            Dataset d = header("kink", {"t", "P_down_down", "P_plus", "P_up_up", "lambda_plus", "lambda_minus", "S_A"},
                               {{"j", "1/2"}, {"beta_z", num(kink_bz)}, {"omega", num(kink_omega)},
                                {"beta_perp", num(s.beta_perp)}, {"alpha", num(s.alpha)}});
            for (double t : linspace(0, end, kink_samples)) {
                const Eigen::Vector3cd a = s.amplitudes(t);
                const auto [lp, lm] = lambdas_from_amplitudes(a(0), a(1), a(2));
                auto h2 = [](double x) { return x > 0 ? -x * std::log2(x) : 0.0; };
                d.rows.push_back({t, std::norm(a(0)), std::norm(a(1)), std::norm(a(2)), lp, lm,
                                  std::clamp(h2(lp) + h2(lm), 0.0, 1.0)});
            }
            emit(d, common);
            return 0;
        }

        if (*ddi) {
            const SpinJ j = parse_j(common.j);
            const FieldConfig f{omega_z, omega_perp, omega};
            const DipolarCoupling c = g_j ? DipolarCoupling::si(*g_j) : DipolarCoupling{};
            std::cout << format_number(vdd_time_average(j, geom, f, c)) << "\n";
            return 0;
        }

        if (*fig) {
            SweepSpec spec;
            spec.target = fig_name;
            spec.workers = common.workers;
            spec.format = parse_format(common.format);
            spec.out_dir = fig_out;
            for (const auto& kv : fig_params) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw ValidationError("--param: expected key=value (got '" + kv + "')");
                spec.params[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            if (list_params) {
                for (const auto& [k, v] : sweep_defaults(fig_name)) std::cout << k << " = " << v << "\n";
                return 0;
            }
            for (const auto& p : run_sweep(spec)) std::cerr << "wrote " << p.string() << "\n";
            return 0;
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalContractError& e) {
        std::cerr << "numerical contract violated: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
