#pragma once

#include <memory>
#include <string>
#include <vector>

#include "inlsc/functionals.hpp"
#include "inlsc/params.hpp"
#include "inlsc/radial_grid.hpp"

namespace inlsc {

struct SolverConfig {
    double dt0 = 2e-4;
    double dt_min = 1e-10;
    double cn_tol = 1e-12;
    double blowup_grad_factor = 100.0;
    double blowup_abs = 1e12;
    double t_end = 1.0;
    double boundary_mass_limit = 1e-8;
    double safety = 0.9;
    double output_interval = 1e-2;
    bool adaptive = true;
    bool nonlinear = true;
    /// Record virial_rhs / localized_virial_rhs columns (focusing runs only).
    bool record_virial = false;
    double virial_radius = 10.0;

    void validate() const;
};

/// Per-run constants of the split step: the discrete P_c and the weights r_j^{-b}.
struct SplitOperators {
    Tridiagonal pc;
    std::vector<double> inv_rb;
    SplitOperators(const RadialGrid& grid, const ParamSet& params);
};

enum class RunStatus { running, finished, blowup_detected, boundary_contaminated };

std::string to_string(RunStatus s);

struct SimState {
    RadialField field;
    double t = 0.0;
    double dt = 0.0;
    long n_steps = 0;
    long n_rejected = 0;
    TimeSeries history;  // sampled diagnostics
    Diagnostics last;    // diagnostics after the latest accepted step
    RunStatus status = RunStatus::running;
    std::string reason;

    // Controller and trigger bookkeeping.
    double initial_kinetic = 0.0;
    double last_energy = 0.0;
    int calm_steps = 0;
    std::vector<double> recent_jumps;
    std::shared_ptr<const SplitOperators> ops;
};

/// Exact flow of i u_t = lambda |x|^{-b}|u|^sigma u over `tau`: a pointwise phase rotation.
RadialField nonlinear_flow(const RadialField& u, const ParamSet& params, double tau);
RadialField nonlinear_flow(const RadialField& u, const ParamSet& params, const SplitOperators& ops, double tau);

/// The half step of the Strang composition, i.e. nonlinear_flow over dt/2.
RadialField nonlinear_halfstep(const RadialField& u, const ParamSet& params, double dt);

/// Crank-Nicolson step (I + i dt/2 L) u+ = (I - i dt/2 L) u with L the discrete P_c.
/// Unitary in the weighted norm; negative dt inverts a positive step.
RadialField linear_step(const RadialField& u, double c, double dt);
RadialField linear_step(const RadialField& u, const Tridiagonal& pc, double dt);

/// One Strang step N(dt/2) L(dt) N(dt/2); the nonlinear factors are skipped when nonlinear = false.
RadialField strang_step(const RadialField& u, const ParamSet& params, double dt, bool nonlinear = true);
RadialField strang_step(const RadialField& u, const ParamSet& params, const SplitOperators& ops, double dt,
                        bool nonlinear = true);

/// Mass held by the outer 5% of nodes.
double outer_mass(const RadialField& u);

SimState make_state(RadialField u0, const ParamSet& params, const SolverConfig& cfg);

/// Advance by one accepted step of size min(state.dt, max_dt), halving and retrying while
/// the energy jump exceeds ten times the running median jump. Updates status triggers.
void step(SimState& state, const ParamSet& params, const SolverConfig& cfg, double max_dt = 1e300);

struct EvolveResult {
    SimState state;
    const TimeSeries& series() const { return state.history; }
};

/// Step until t_end or a terminal status, sampling Diagnostics every output_interval
/// (steps are shortened to land on the sample times).
EvolveResult evolve(const RadialField& u0, const ParamSet& params, const SolverConfig& cfg);

}  // namespace inlsc
