#include "inlsc/run.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "inlsc/functionals.hpp"
#include "inlsc/ground_state.hpp"
#include "inlsc/virial.hpp"

namespace inlsc {

namespace fs = std::filesystem;

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::params_check: return "params-check";
        case Scenario::groundstate: return "groundstate";
        case Scenario::evolve: return "evolve";
        case Scenario::classify: return "classify";
        case Scenario::virial_check: return "virial-check";
        case Scenario::sweep: return "sweep";
    }
    return "unknown";
}

Scenario parse_scenario(const std::string& s) {
    for (auto k : {Scenario::params_check, Scenario::groundstate, Scenario::evolve, Scenario::classify,
                   Scenario::virial_check, Scenario::sweep})
        if (s == to_string(k)) return k;
    throw std::invalid_argument("unknown scenario '" + s + "'");
}

ParamSet ModelConfig::param_set() const {
    const Rational bq = parse_rational(b);
    const double cv = to_double(parse_rational(c));
    if (sigma.empty()) return ParamSet::energy_critical(d, bq, lambda, cv);
    return ParamSet(d, bq, parse_rational(sigma), lambda, cv);
}

GridPtr GridConfig::make(int d) const {
    if (!(r_max > 0.0) || !std::isfinite(r_max)) throw std::invalid_argument("grid.r_max must be positive");
    if (n < 3) throw std::invalid_argument("grid.n must be at least 3");
    return std::make_shared<const RadialGrid>(d, n, h());
}

void RunConfig::validate() const {
    const ParamSet p = params.param_set();
    (void)grid.make(p.d());
    if (!(output.sample_interval > 0.0)) throw std::invalid_argument("output.sample_interval must be positive");
    SolverConfig s = solver;
    s.output_interval = output.sample_interval;
    s.validate();
    initial.validate();
    if (initial.kind == InitialKind::file && !fs::exists(initial.path))
        throw std::invalid_argument("initial data file '" + initial.path + "' does not exist");
    if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
    switch (scenario) {
        case Scenario::classify:
            if (p.lambda() != -1) throw std::invalid_argument("classify needs the focusing sign lambda = -1");
            if (!p.is_energy_critical()) throw std::invalid_argument("classify needs sigma = sigma*");
            break;
        case Scenario::virial_check:
            if (p.lambda() != -1) throw std::invalid_argument("virial-check needs the focusing sign lambda = -1");
            if (virial_radii.empty()) throw std::invalid_argument("virial-check needs at least one radius");
            for (double R : virial_radii) (void)CutoffSpec(R);
            break;
        case Scenario::groundstate:
            if (!p.is_energy_critical()) throw std::invalid_argument("groundstate needs sigma = sigma*");
            if (minimize_iters < 1) throw std::invalid_argument("groundstate.max_iters must be positive");
            break;
        case Scenario::sweep:
            if (sweep_amplitudes.empty()) throw std::invalid_argument("sweep needs sweep.amplitudes");
            break;
        default: break;
    }
}

void Summary::add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
void Summary::add(const std::string& key, double value) { add(key, format_number(value)); }
void Summary::add(const std::string& key, long value) { add(key, std::to_string(value)); }
void Summary::add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }

std::string Summary::get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    return "";
}

void Summary::write(std::ostream& out) const {
    for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
}

void Summary::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write(out);
}

namespace {

std::string path_in(const RunConfig& cfg, const std::string& name) {
    return (fs::path(cfg.output.directory) / name).string();
}

void add_model(Summary& s, const RunConfig& cfg, const ParamSet& p) {
    s.add("scenario", to_string(cfg.scenario));
    s.add("d", p.d());
    s.add("b", to_string(p.b()));
    s.add("sigma", to_string(p.sigma()));
    s.add("lambda", p.lambda());
    s.add("c", p.c());
}

void add_grid(Summary& s, const GridConfig& g) {
    s.add("r_max", g.r_max);
    s.add("n", g.n);
    s.add("h", g.h());
}

void add_verdict(Summary& s, const Verdict& v) {
    s.add("branch", to_string(v.branch));
    s.add("data_class", to_string(v.data_class));
    s.add("energy_u0", v.energy_u0);
    s.add("norm_u0", v.norm_u0);
    s.add("c_bar", v.threshold.c_bar);
    s.add("energy_W", v.threshold.energy_W);
    s.add("norm_W", v.threshold.norm_W);
    s.add("hs_constant", v.threshold.hs_constant);
    s.add("predicts_blowup", v.predicts_blowup);
    s.add("mixed_norms", v.mixed_norms);
}

bool can_classify(const ParamSet& p) {
    return p.lambda() == -1 && p.is_energy_critical() && p.c() > -to_double(hardy_constant(p.d()));
}

int params_check(const RunConfig& cfg, Summary& s, std::ostream& log) {
    const ParamSet p = cfg.params.param_set();
    add_model(s, cfg, p);
    const auto ex = derive(p);
    auto row = [&](const std::string& k, const std::string& v) {
        s.add(k, v);
        log << k << " = " << v << '\n';
    };
    row("c_d", to_string(ex.c_d));
    row("sigma_star", to_string(ex.sigma_star));
    row("sigma_mass", to_string(ex.sigma_mass));
    row("s_c", to_string(ex.s_c));
    row("rho", format_number(ex.rho));
    row("beta", format_number(ex.beta));
    row("r", to_string(ex.r));
    row("r_bar", to_string(ex.r_bar));
    row("gamma_r", to_string(ex.gamma_r));
    row("c_equiv_threshold", to_string(ex.c_equiv_threshold));
    const auto pair = admissible_pair_for(p.d(), ex.r);
    row("admissible_r", is_admissible(p.d(), pair) ? "true" : "false");

    const auto wp = validate_wellposed(p);
    for (const auto& c : wp.checks) row("check." + c.name, std::string(c.pass ? "pass" : "fail") + " (" + c.detail + ")");
    row("wellposed", wp.all_pass() ? "true" : "false");

    if (p.b() > 0 && p.b() < Rational(4, p.d())) {
        const auto rep = exponent_identities(p.d(), p.b());
        for (const auto& id : rep.identities)
            row("identity." + id.name, to_string(id.lhs) + (id.holds() ? " == " : " != ") + to_string(id.rhs));
        row("identities_hold", rep.all_hold() ? "true" : "false");
    } else if (p.b() > 0 && p.b() < 2) {
        const auto id = time_exponent_identity(p.d(), p.b());
        row("identity." + id.name, to_string(id.lhs) + (id.holds() ? " == " : " != ") + to_string(id.rhs));
        row("identities_hold", id.holds() ? "true" : "false");
    }
    return exit_code::ok;
}

int groundstate(const RunConfig& cfg, Summary& s, std::ostream& log) {
    const ParamSet p = cfg.params.param_set();
    add_model(s, cfg, p);
    add_grid(s, cfg.grid);
    auto grid = cfg.grid.make(p.d());
    const GroundStateSpec spec(p.d(), p.b(), p.c(), cfg.initial.epsilon);
    s.add("epsilon", spec.epsilon);
    s.add("rho", spec.rho);
    s.add("beta", spec.beta);

    const auto rep = identities_report(spec, grid);
    s.add("kinetic_grid", rep.integrals.kinetic_grid);
    s.add("kinetic_tail", rep.integrals.kinetic_tail);
    s.add("potential_grid", rep.integrals.potential_grid);
    s.add("potential_tail", rep.integrals.potential_tail);
    s.add("kinetic", rep.kinetic);
    s.add("potential", rep.potential);
    s.add("energy", rep.energy);
    s.add("hs_constant", rep.hs_constant);
    s.add("quotient", rep.quotient);
    s.add("energy_factor", to_string(rep.energy_factor));
    s.add("norm_potential_rel", rep.norm_potential_rel);
    s.add("energy_factor_rel", rep.energy_factor_rel);
    s.add("constant_chain_rel", rep.constant_chain_rel);
    const double res = el_residual(spec, *grid);
    s.add("el_residual", res);

    log << "kinetic   = " << format_number(rep.kinetic) << "  (grid " << format_number(rep.integrals.kinetic_grid)
        << " + tail " << format_number(rep.integrals.kinetic_tail) << ")\n"
        << "potential = " << format_number(rep.potential) << "  (grid " << format_number(rep.integrals.potential_grid)
        << " + tail " << format_number(rep.integrals.potential_tail) << ")\n"
        << "energy    = " << format_number(rep.energy) << "  factor " << to_string(rep.energy_factor) << '\n'
        << "C_HS      = " << format_number(rep.hs_constant) << "  quotient " << format_number(rep.quotient) << '\n'
        << "|K-P|/P = " << format_number(rep.norm_potential_rel)
        << "  |E-fK|/|E| = " << format_number(rep.energy_factor_rel)
        << "  chain = " << format_number(rep.constant_chain_rel) << '\n'
        << "EL residual = " << format_number(res) << '\n';
    write_field_csv(path_in(cfg, "ground_state.csv"), sample_W(spec, grid));

    if (cfg.minimize) {
        const double w = cfg.initial.width, a = cfg.initial.amplitude;
        auto seed = RadialField::sample(grid, [&](double r) { return Complex(a * std::exp(-(r / w) * (r / w)), 0.0); });
        MinimizerOptions opts;
        opts.max_iters = cfg.minimize_iters;
        const auto m = minimize_quotient(p, seed, opts);
        s.add("minimizer_quotient", m.quotient);
        s.add("minimizer_iterations", m.iterations);
        s.add("minimizer_converged", m.converged);
        s.add("minimizer_rel_gap", (m.quotient - rep.quotient) / rep.quotient);
        log << "minimizer: Q = " << format_number(m.quotient) << " after " << m.iterations << " iterations\n";
        write_field_csv(path_in(cfg, "minimizer_field.csv"), m.field);
        if (m.diverged) throw std::runtime_error("minimizer diverged");
    }
    return exit_code::ok;
}

int status_exit(RunStatus st) {
    switch (st) {
        case RunStatus::finished: return exit_code::ok;
        case RunStatus::blowup_detected: return exit_code::blowup;
        default: return exit_code::solver;
    }
}

void add_run_stats(Summary& s, const SimState& st) {
    const auto& h = st.history;
    s.add("status", to_string(st.status));
    s.add("reason", st.reason.empty() ? std::string("none") : st.reason);
    s.add("t_final", st.t);
    s.add("steps", st.n_steps);
    s.add("rejected", st.n_rejected);
    s.add("dt_final", st.dt);
    const auto& a = h.front();
    const auto& z = h.back();
    s.add("mass_initial", a.mass);
    s.add("mass_final", z.mass);
    s.add("mass_drift_rel", std::abs(z.mass - a.mass) / a.mass);
    s.add("energy_initial", a.energy);
    s.add("energy_final", z.energy);
    s.add("energy_drift_rel", std::abs(z.energy - a.energy) / std::max(std::abs(a.energy), 1e-300));
    s.add("kinetic_initial", a.kinetic_c);
    s.add("kinetic_final", z.kinetic_c);
}

struct Evolved {
    RadialField u0;
    EvolveResult result;
};

Evolved evolve_scenario(const RunConfig& cfg, const ParamSet& p, Summary& s, std::ostream& log, bool virial) {
    auto grid = cfg.grid.make(p.d());
    auto u0 = build_initial(cfg.initial, p, grid);
    s.add("initial", to_string(cfg.initial.kind));
    s.add("amplitude", cfg.initial.amplitude);
    if (cfg.initial.kind == InitialKind::gaussian) s.add("width", cfg.initial.width);
    if (cfg.initial.kind == InitialKind::ground_state || cfg.initial.kind == InitialKind::scaled_ground_state) {
        s.add("epsilon", cfg.initial.epsilon);
        s.add("taper", cfg.initial.taper);
    }
    if (can_classify(p)) add_verdict(s, classify(u0, p, cfg.data_class));
    write_field_csv(path_in(cfg, "initial_field.csv"), u0);

    SolverConfig sc = cfg.solver;
    sc.output_interval = cfg.output.sample_interval;
    if (virial) sc.record_virial = true;
    s.add("t_end", sc.t_end);
    s.add("dt0", sc.dt0);
    log << "evolving to t = " << sc.t_end << " on " << grid->n() << " nodes\n";
    auto res = evolve(u0, p, sc);
    const auto& st = res.state;
    add_run_stats(s, st);
    {
        std::ofstream out(path_in(cfg, "diagnostics.csv"));
        if (!out) throw std::runtime_error("cannot write diagnostics.csv");
        write_diagnostics_csv(out, res.series(), sc.record_virial);
    }
    write_field_csv(path_in(cfg, "final_field.csv"), st.field);
    log << "status " << to_string(st.status) << (st.reason.empty() ? "" : " (" + st.reason + ")") << " at t = "
        << format_number(st.t) << " after " << st.n_steps << " steps\n";
    return {std::move(u0), std::move(res)};
}

int evolve_run(const RunConfig& cfg, Summary& s, std::ostream& log) {
    const ParamSet p = cfg.params.param_set();
    add_model(s, cfg, p);
    add_grid(s, cfg.grid);
    const auto ev = evolve_scenario(cfg, p, s, log, cfg.solver.record_virial);
    return status_exit(ev.result.state.status);
}

int classify_run(const RunConfig& cfg, Summary& s, std::ostream& log) {
    const ParamSet p = cfg.params.param_set();
    add_model(s, cfg, p);
    add_grid(s, cfg.grid);
    auto grid = cfg.grid.make(p.d());
    const auto u0 = build_initial(cfg.initial, p, grid);
    s.add("initial", to_string(cfg.initial.kind));
    s.add("amplitude", cfg.initial.amplitude);
    const auto v = classify(u0, p, cfg.data_class);
    add_verdict(s, v);
    log << "branch " << to_string(v.branch) << ": E(u0) = " << format_number(v.energy_u0)
        << ", E(W) = " << format_number(v.threshold.energy_W) << ", ||u0|| = " << format_number(v.norm_u0)
        << ", ||W|| = " << format_number(v.threshold.norm_W) << '\n';
    return exit_code::ok;
}

int virial_run(const RunConfig& cfg, Summary& s, std::ostream& log) {
    const ParamSet p = cfg.params.param_set();
    add_model(s, cfg, p);
    add_grid(s, cfg.grid);
    const auto ev = evolve_scenario(cfg, p, s, log, true);
    const auto& series = ev.result.series();

    // Only the uniformly sampled prefix enters the second difference.
    const double dt = cfg.output.sample_interval;
    TimeSeries uniform;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (std::abs(series[i].t - static_cast<double>(i) * dt) > 1e-9 * std::max(1.0, series[i].t)) break;
        uniform.push_back(series[i]);
    }
    const double t_hi = cfg.virial_t_hi >= 0.0 ? cfg.virial_t_hi : cfg.solver.t_end - dt;
    const auto vc = virial_consistency(uniform, cfg.virial_t_lo, t_hi);
    s.add("virial_t_lo", cfg.virial_t_lo);
    s.add("virial_t_hi", t_hi);
    s.add("virial_compared", vc.compared);
    s.add("virial_max_abs_mismatch", vc.max_abs_mismatch);
    s.add("virial_max_rel_mismatch", vc.max_rel_mismatch);
    log << "virial: max relative mismatch " << format_number(vc.max_rel_mismatch) << " over " << vc.compared
        << " samples\n";

    const auto& grid = *ev.u0.grid;
    for (double R : cfg.virial_radii) {
        const CutoffSpec cut(R);
        const auto cc = cutoff_check(cut, grid);
        const auto lv = localized_virial_rhs(ev.u0, p, cut);
        const std::string k = "R_" + format_number(R);
        s.add(k + ".cutoff_pass", cc.pass());
        s.add(k + ".min_second", cc.min_second);
        s.add(k + ".min_first", cc.min_first);
        s.add(k + ".min_laplacian", cc.min_laplacian);
        s.add(k + ".localized_virial", lv.value);
        s.add(k + ".standard_virial", lv.standard);
        s.add(k + ".gap", std::abs(lv.value - lv.standard));
        log << "R = " << R << ": cutoff " << (cc.pass() ? "ok" : "violated") << ", localized "
            << format_number(lv.value) << " vs " << format_number(lv.standard) << '\n';
    }
    return status_exit(ev.result.state.status);
}

int sweep_run(const RunConfig& cfg, Summary& s, std::ostream& log) {
    const ParamSet p = cfg.params.param_set();
    add_model(s, cfg, p);
    add_grid(s, cfg.grid);
    const std::size_t n = cfg.sweep_amplitudes.size();
    std::vector<RunResult> results(n);
    std::vector<std::string> logs(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            RunConfig sub = cfg;
            sub.scenario = Scenario::evolve;
            sub.initial.amplitude = cfg.sweep_amplitudes[i];
            char name[32];
            std::snprintf(name, sizeof name, "run_%03zu", i);
            sub.output.directory = (fs::path(cfg.output.directory) / name).string();
            std::ostringstream sub_log;
            results[i] = run(sub, sub_log);
            logs[i] = sub_log.str();
        }
    };
    const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), n);
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }
    int code = exit_code::ok;
    s.add("runs", static_cast<long>(n));
    s.add("jobs", cfg.jobs);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = results[i];
        const std::string k = "run_" + std::to_string(i);
        s.add(k + ".amplitude", cfg.sweep_amplitudes[i]);
        s.add(k + ".exit_code", r.exit_code);
        s.add(k + ".status", r.summary.get("status"));
        const auto branch = r.summary.get("branch");
        if (!branch.empty()) s.add(k + ".branch", branch);
        log << "[a = " << cfg.sweep_amplitudes[i] << "] " << logs[i];
        if (r.exit_code == exit_code::validation || r.exit_code == exit_code::solver) code = exit_code::solver;
    }
    return code;
}

}  // namespace

RunResult run(const RunConfig& config, std::ostream& log) {
    RunResult res;
    auto& s = res.summary;
    bool have_dir = false;
    try {
        fs::create_directories(config.output.directory.empty() ? fs::path(".") : fs::path(config.output.directory));
        have_dir = true;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        res.exit_code = exit_code::validation;
        s.add("error", std::string(e.what()));
        s.add("exit_code", res.exit_code);
        return res;
    }
    try {
        config.validate();
        switch (config.scenario) {
            case Scenario::params_check: res.exit_code = params_check(config, s, log); break;
            case Scenario::groundstate: res.exit_code = groundstate(config, s, log); break;
            case Scenario::evolve: res.exit_code = evolve_run(config, s, log); break;
            case Scenario::classify: res.exit_code = classify_run(config, s, log); break;
            case Scenario::virial_check: res.exit_code = virial_run(config, s, log); break;
            case Scenario::sweep: res.exit_code = sweep_run(config, s, log); break;
        }
    } catch (const std::invalid_argument& e) {
        res.exit_code = exit_code::validation;
        s.add("error", std::string(e.what()));
        log << "validation error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        res.exit_code = exit_code::solver;
        s.add("error", std::string(e.what()));
        log << "solver error: " << e.what() << '\n';
    }
    s.add("exit_code", res.exit_code);
    if (have_dir) {
        try {
            s.write(path_in(config, "summary.txt"));
        } catch (const std::exception& e) {
            log << "error: " << e.what() << '\n';
        }
    }
    return res;
}

}  // namespace inlsc
