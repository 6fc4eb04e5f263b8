#include "inlsc/ground_state.hpp"

#include <cmath>
#include <stdexcept>

namespace inlsc {

GroundStateSpec::GroundStateSpec(int d_, Rational b_, double c_, double epsilon_)
    : d(d_), b(b_), c(c_), epsilon(epsilon_) {
    if (d < 3) throw std::invalid_argument("dimension d must be >= 3");
    if (b <= 0 || b >= 2) throw std::invalid_argument("b must satisfy 0 < b < 2");
    if (c > 0.0) throw std::invalid_argument("closed-form extremizer is only available for c <= 0");
    if (c <= -to_double(hardy_constant(d))) throw std::invalid_argument("c must exceed -c(d)");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    rho = rho_of(d, c);
    beta = 1.0 - 2.0 * rho / (d - 2);
}

namespace {
struct Exponents {
    double amplitude;  // [eps (d-b)(d-2) beta^2]^{(d-2)/(4-2b)}
    double k;          // (2-b) beta
    double m;          // (d-2)/(2-b)
};

Exponents exponents(const GroundStateSpec& s) {
    const double b = s.b_value();
    const double base = s.epsilon * (s.d - b) * (s.d - 2) * s.beta * s.beta;
    return {std::pow(base, (s.d - 2) / (4.0 - 2.0 * b)), (2.0 - b) * s.beta, (s.d - 2) / (2.0 - b)};
}
}  // namespace

double eval_W(const GroundStateSpec& spec, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("W is evaluated at r > 0 only");
    const auto e = exponents(spec);
    return e.amplitude / (std::pow(spec.epsilon + std::pow(r, e.k), e.m) * std::pow(r, spec.rho));
}

double eval_dW(const GroundStateSpec& spec, double r) {
    const auto e = exponents(spec);
    const double rk = std::pow(r, e.k);
    const double log_deriv = -e.m * e.k * rk / (r * (spec.epsilon + rk)) - spec.rho / r;
    return eval_W(spec, r) * log_deriv;
}

RadialField sample_W(const GroundStateSpec& spec, GridPtr grid) {
    if (grid->d() != spec.d) throw std::invalid_argument("grid dimension differs from W dimension");
    return RadialField::sample(grid, [&](double r) { return Complex(eval_W(spec, r), 0.0); });
}

double el_residual(const GroundStateSpec& spec, const RadialGrid& grid, double r_lo) {
    const int n = grid.n();
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = eval_W(spec, grid.r(j));
    const auto lw = pc_operator(grid, spec.c).apply(std::span<const double>(w));
    const double b = spec.b_value();
    const double s = spec.sigma_star();
    const double lo = r_lo > 0.0 ? r_lo : 10.0 * grid.h();
    const double hi = 0.5 * grid.r_max();
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n; ++j) {
        const double r = grid.r(j);
        if (r < lo || r > hi) continue;
        const auto k = static_cast<std::size_t>(j);
        const double rhs = std::pow(r, -b) * std::pow(w[k], s + 1.0);
        num += grid.weight(j) * (lw[k] - rhs) * (lw[k] - rhs);
        den += grid.weight(j) * rhs * rhs;
    }
    return std::sqrt(num / den);
}

double power_law_tail(const std::function<double(double)>& g, double from) {
    const double g1 = g(from);
    const double g2 = g(2.0 * from);
    if (g1 == 0.0) return 0.0;
    if (!(g1 > 0.0 && g2 > 0.0)) throw std::domain_error("tail integrand must be positive");
    const double p = std::log(g1 / g2) / std::log(2.0);
    if (!(p > 1.0)) throw std::domain_error("tail integrand decays too slowly to integrate");
    return g1 * from / (p - 1.0);
}

GroundStateIntegrals ground_state_integrals(const GroundStateSpec& spec, GridPtr grid) {
    const auto w = sample_W(spec, grid);
    const double b = spec.b_value();
    const double s = spec.sigma_star();
    const double omega = grid->omega();
    const int d = spec.d;
    GroundStateIntegrals out;
    out.kinetic_grid = kinetic_c(w, spec.c);
    out.potential_grid = potential_term(w, b, s);
    // Face differences cover the gradient up to the last node; the node sums run to r_max.
    const double grad_end = grid->r(grid->n() - 1);
    out.kinetic_tail = power_law_tail(
        [&](double r) {
            const double dw = eval_dW(spec, r);
            return omega * std::pow(r, d - 1) * dw * dw;
        },
        grad_end);
    if (spec.c != 0.0) {
        // c <= 0 makes this integrand negative; integrate its magnitude.
        out.kinetic_tail += spec.c * power_law_tail(
                                         [&](double r) {
                                             const double v = eval_W(spec, r);
                                             return omega * std::pow(r, d - 3) * v * v;
                                         },
                                         grid->r_max());
    }
    out.potential_tail = power_law_tail(
        [&](double r) { return omega * std::pow(r, d - 1 - b) * std::pow(eval_W(spec, r), s + 2.0); },
        grid->r_max());
    return out;
}

IdentitiesReport identities_report(const GroundStateSpec& spec, GridPtr grid) {
    IdentitiesReport rep;
    rep.integrals = ground_state_integrals(spec, grid);
    rep.kinetic = rep.integrals.kinetic();
    rep.potential = rep.integrals.potential();
    const auto params = spec.focusing_params();
    rep.energy = energy_from_parts(rep.kinetic, rep.potential, params);
    const double s = spec.sigma_star();
    rep.hs_constant = hs_constant_from_norm(std::sqrt(rep.kinetic), s);
    rep.quotient = hs_quotient_from_parts(rep.kinetic, rep.potential, s);
    rep.energy_factor = (Rational(2) - spec.b) / (2 * (Rational(spec.d) - spec.b));
    const double factor = to_double(rep.energy_factor);
    rep.norm_potential_rel = std::abs(rep.kinetic - rep.potential) / rep.potential;
    rep.energy_factor_rel = std::abs(rep.energy - factor * rep.kinetic) / std::abs(rep.energy);
    const double b = spec.b_value();
    const double from_constant = factor * std::pow(rep.hs_constant, -2.0 * (spec.d - b) / (2.0 - b));
    rep.constant_chain_rel = std::abs(from_constant - rep.energy) / std::abs(rep.energy);
    return rep;
}

namespace {
struct QuotientParts {
    double kinetic;
    double potential;
    double log_q;
};

QuotientParts log_quotient(const Tridiagonal& op, const RadialGrid& g, std::span<const double> u, double b,
                           double s) {
    const auto lu = op.apply(u);
    double k = 0.0, p = 0.0;
    for (int j = 0; j < g.n(); ++j) {
        const auto i = static_cast<std::size_t>(j);
        k += g.weight(j) * lu[i] * u[i];
        p += g.weight(j) * std::pow(g.r(j), -b) * std::pow(std::abs(u[i]), s + 2.0);
    }
    if (!(p > 0.0)) throw std::invalid_argument("minimizer field vanished");
    return {k, p, 0.5 * std::log(k) - std::log(p) / (s + 2.0)};
}

double weighted_mass(const RadialGrid& g, std::span<const double> u) {
    double m = 0.0;
    for (int j = 0; j < g.n(); ++j) m += g.weight(j) * u[static_cast<std::size_t>(j)] * u[static_cast<std::size_t>(j)];
    return m;
}
}  // namespace

MinimizerResult minimize_quotient(const ParamSet& params, const RadialField& seed, const MinimizerOptions& opts) {
    if (!params.is_energy_critical()) throw std::invalid_argument("minimizer needs sigma = sigma*");
    const auto& g = *seed.grid;
    const int n = g.n();
    const double b = params.b_value();
    const double s = params.sigma_value();
    // The Dirichlet quadratic form <P_c u, u> is the objective's numerator: the box problem
    // must not admit constants.
    const auto op = pc_operator(g, params.c());
    std::vector<double> pre_diag(op.diag);
    for (auto& v : pre_diag) v += 1.0;

    std::vector<double> u(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) u[static_cast<std::size_t>(j)] = std::real(seed.values[static_cast<std::size_t>(j)]);
    const double mass0 = weighted_mass(g, u);
    if (!(mass0 > 0.0)) throw std::invalid_argument("minimizer seed must be nonzero");

    MinimizerResult res;
    auto cur = log_quotient(op, g, u, b, s);
    res.trace.push_back(std::exp(cur.log_q));
    double step = opts.step;
    int stalls = 0;
    std::vector<double> grad(static_cast<std::size_t>(n)), trial(static_cast<std::size_t>(n));
    for (int it = 0; it < opts.max_iters; ++it) {
        res.iterations = it + 1;
        const auto lu = op.apply(std::span<const double>(u));
        const double ratio = cur.kinetic / cur.potential;
        for (int j = 0; j < n; ++j) {
            const auto i = static_cast<std::size_t>(j);
            grad[i] = lu[i] - ratio * std::pow(g.r(j), -b) * std::pow(std::abs(u[i]), s) * u[i];
        }
        const auto dir = solve_tridiagonal(op.lower, pre_diag, op.upper, grad);
        bool accepted = false;
        while (!accepted) {
            for (std::size_t i = 0; i < u.size(); ++i) trial[i] = u[i] - step * dir[i];
            const double scale = std::sqrt(mass0 / weighted_mass(g, trial));
            for (auto& v : trial) v *= scale;
            const auto next = log_quotient(op, g, trial, b, s);
            if (next.log_q < cur.log_q) {
                const double change = cur.log_q - next.log_q;
                u.swap(trial);
                cur = next;
                res.trace.push_back(std::exp(cur.log_q));
                stalls = 0;
                accepted = true;
                if (change < opts.tol) res.converged = true;
            } else {
                step *= 0.5;
                if (++stalls >= opts.stall_limit) {
                    // No decrease at any step size: either converged to round-off or stuck.
                    res.diverged = true;
                    break;
                }
            }
        }
        if (res.converged || res.diverged) break;
    }
    std::vector<Complex> vals(u.begin(), u.end());
    res.field = RadialField(seed.grid, std::move(vals));
    res.quotient = hs_quotient(res.field, params);
    return res;
}

}  // namespace inlsc
