#include "inlsc/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "inlsc/virial.hpp"

namespace inlsc {

void SolverConfig::validate() const {
    if (!(dt0 > 0.0)) throw std::invalid_argument("dt0 must be positive");
    if (!(dt_min > 0.0 && dt_min < dt0)) throw std::invalid_argument("dt_min must lie in (0, dt0)");
    if (!(cn_tol > 0.0 && blowup_grad_factor > 0.0 && blowup_abs > 0.0 && boundary_mass_limit > 0.0))
        throw std::invalid_argument("solver tolerances must be positive");
    if (!(safety > 0.0 && safety <= 1.0)) throw std::invalid_argument("safety factor must lie in (0, 1]");
    if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be non-negative");
    if (!(output_interval > 0.0)) throw std::invalid_argument("output interval must be positive");
    if (record_virial && !(virial_radius > 1.0)) throw std::invalid_argument("virial radius must exceed 1");
}

std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::running: return "running";
        case RunStatus::finished: return "finished";
        case RunStatus::blowup_detected: return "blowup_detected";
        case RunStatus::boundary_contaminated: return "boundary_contaminated";
    }
    return "unknown";
}

SplitOperators::SplitOperators(const RadialGrid& grid, const ParamSet& params)
    : pc(pc_operator(grid, params.c())), inv_rb(static_cast<std::size_t>(grid.n())) {
    for (int j = 0; j < grid.n(); ++j) inv_rb[static_cast<std::size_t>(j)] = radial_power(grid.r(j), -params.b_value());
}

RadialField nonlinear_flow(const RadialField& u, const ParamSet& params, const SplitOperators& ops, double tau) {
    if (ops.inv_rb.size() != u.size()) throw std::invalid_argument("operators built for a different grid");
    RadialField out = u;
    const double s = params.sigma_value();
    const double scale = -params.lambda() * tau;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double phase = scale * ops.inv_rb[k] * abs_pow(u.values[k], s);
        out.values[k] = u.values[k] * std::polar(1.0, phase);
    }
    return out;
}

RadialField nonlinear_flow(const RadialField& u, const ParamSet& params, double tau) {
    return nonlinear_flow(u, params, SplitOperators(*u.grid, params), tau);
}

RadialField nonlinear_halfstep(const RadialField& u, const ParamSet& params, double dt) {
    return nonlinear_flow(u, params, 0.5 * dt);
}

RadialField linear_step(const RadialField& u, double c, double dt) {
    return linear_step(u, pc_operator(*u.grid, c), dt);
}

RadialField linear_step(const RadialField& u, const Tridiagonal& op, double dt) {
    const auto n = op.size();
    if (n != u.size()) throw std::invalid_argument("operator built for a different grid");
    const Complex a(0.0, 0.5 * dt);
    std::vector<Complex> lower(n), diag(n), upper(n), rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
        lower[j] = a * op.lower[j];
        diag[j] = 1.0 + a * op.diag[j];
        upper[j] = a * op.upper[j];
        Complex lu = op.diag[j] * u.values[j];
        if (j > 0) lu += op.lower[j] * u.values[j - 1];
        if (j + 1 < n) lu += op.upper[j] * u.values[j + 1];
        rhs[j] = u.values[j] - a * lu;
    }
    return RadialField(u.grid, solve_tridiagonal(lower, diag, upper, rhs));
}

RadialField strang_step(const RadialField& u, const ParamSet& params, const SplitOperators& ops, double dt,
                        bool nonlinear) {
    if (!nonlinear) return linear_step(u, ops.pc, dt);
    auto v = nonlinear_flow(u, params, ops, 0.5 * dt);
    v = linear_step(v, ops.pc, dt);
    return nonlinear_flow(v, params, ops, 0.5 * dt);
}

RadialField strang_step(const RadialField& u, const ParamSet& params, double dt, bool nonlinear) {
    return strang_step(u, params, SplitOperators(*u.grid, params), dt, nonlinear);
}

double outer_mass(const RadialField& u) {
    const int n = u.grid->n();
    const int first = static_cast<int>(std::floor(0.95 * n));
    double m = 0.0;
    for (int j = first; j < n; ++j) m += u.grid->weight(j) * std::norm(u.values[static_cast<std::size_t>(j)]);
    return m;
}

namespace {
Diagnostics sample(const RadialField& u, const ParamSet& params, const SolverConfig& cfg, double t, double dt) {
    auto d = diagnostics(u, params, t, dt);
    if (!cfg.nonlinear) d.energy = 0.5 * d.kinetic_c;
    if (cfg.record_virial && params.lambda() == -1) {
        d.virial_rhs = virial_rhs(u, params, cfg.nonlinear);
        if (cfg.nonlinear) d.localized_virial_rhs = localized_virial_rhs(u, params, CutoffSpec(cfg.virial_radius)).value;
    }
    return d;
}

double median(std::vector<double> v) {
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

void check_triggers(SimState& st, const Diagnostics& d, const SolverConfig& cfg) {
    if (!std::isfinite(d.kinetic_c) || !std::isfinite(d.energy)) {
        st.status = RunStatus::blowup_detected;
        st.reason = "non_finite_field";
    } else if (d.kinetic_c > cfg.blowup_grad_factor * st.initial_kinetic) {
        st.status = RunStatus::blowup_detected;
        st.reason = "kinetic_growth";
    } else if (d.kinetic_c > cfg.blowup_abs) {
        st.status = RunStatus::blowup_detected;
        st.reason = "kinetic_ceiling";
    } else if (outer_mass(st.field) > cfg.boundary_mass_limit * d.mass) {
        st.status = RunStatus::boundary_contaminated;
        st.reason = "outer_shell_mass";
    }
}
}  // namespace

SimState make_state(RadialField u0, const ParamSet& params, const SolverConfig& cfg) {
    cfg.validate();
    SimState st;
    st.field = std::move(u0);
    st.ops = std::make_shared<const SplitOperators>(*st.field.grid, params);
    st.dt = cfg.dt0;
    const auto d0 = sample(st.field, params, cfg, 0.0, cfg.dt0);
    st.initial_kinetic = d0.kinetic_c;
    st.last_energy = d0.energy;
    st.last = d0;
    st.history.push_back(d0);
    return st;
}

void step(SimState& st, const ParamSet& params, const SolverConfig& cfg, double max_dt) {
    if (st.status != RunStatus::running) throw std::logic_error("step called on a finished run");
    constexpr std::size_t jump_window = 50;
    constexpr std::size_t jump_warmup = 5;
    constexpr int calm_needed = 20;
    const double mass_before = st.last.mass;
    while (true) {
        const double h = std::min(st.dt, max_dt);
        RadialField next = strang_step(st.field, params, *st.ops, h, cfg.nonlinear);
        const auto d = sample(next, params, cfg, st.t + h, h);
        if (std::isfinite(d.mass) && std::abs(d.mass - mass_before) > 1e3 * cfg.cn_tol * mass_before)
            throw std::runtime_error("Crank-Nicolson step lost unitarity");
        const double jump = std::abs(d.energy - st.last_energy);
        const double floor = 1e-10 * (std::abs(d.energy) + d.kinetic_c);
        const bool violent = cfg.adaptive && std::isfinite(jump) && st.recent_jumps.size() >= jump_warmup &&
                             jump > floor && jump > 10.0 * median(st.recent_jumps);
        if (violent || !std::isfinite(jump)) {
            ++st.n_rejected;
            st.calm_steps = 0;
            st.dt *= 0.5;
            if (st.dt < cfg.dt_min) {
                st.status = RunStatus::blowup_detected;
                st.reason = "dt_floor";
                return;
            }
            continue;
        }
        st.field = std::move(next);
        st.t += h;
        ++st.n_steps;
        st.last_energy = d.energy;
        st.recent_jumps.push_back(jump);
        if (st.recent_jumps.size() > jump_window) st.recent_jumps.erase(st.recent_jumps.begin());
        if (++st.calm_steps >= calm_needed && st.dt < cfg.dt0) {
            st.dt = std::min(cfg.dt0, 2.0 * cfg.safety * st.dt);
            st.calm_steps = 0;
        }
        st.last = d;
        check_triggers(st, d, cfg);
        return;
    }
}

EvolveResult evolve(const RadialField& u0, const ParamSet& params, const SolverConfig& cfg) {
    EvolveResult res{make_state(u0, params, cfg)};
    auto& st = res.state;
    long sample_index = 1;
    // Sample times are k * output_interval, computed by multiplication to avoid drift.
    while (st.status == RunStatus::running) {
        const double next_sample = std::min(cfg.t_end, sample_index * cfg.output_interval);
        if (st.t >= cfg.t_end * (1.0 - 1e-14) || cfg.t_end == 0.0) {
            st.status = RunStatus::finished;
            break;
        }
        step(st, params, cfg, next_sample - st.t);
        if (st.status == RunStatus::blowup_detected && st.reason == "dt_floor") break;
        const double tol = 1e-12 * std::max(1.0, next_sample);
        if (std::abs(st.t - next_sample) <= tol || st.status != RunStatus::running) {
            if (std::abs(st.t - next_sample) <= tol) st.t = next_sample;
            auto d = st.last;
            d.t = st.t;
            st.history.push_back(d);
            if (std::abs(st.t - next_sample) <= tol) ++sample_index;
        }
    }
    return res;
}

}  // namespace inlsc
