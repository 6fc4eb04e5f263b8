#include "inlsc/virial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace inlsc {

CutoffSpec::CutoffSpec(double R_) : R(R_) {
    if (!(R > 1.0)) throw std::invalid_argument("localization radius must exceed 1");
}

double CutoffSpec::theta(double s) {
    if (s <= 1.0) return s * s;
    if (s <= 2.0) return 1.0 + 4.0 * s * s - 8.0 * s * s * s / 3.0 + 0.5 * s * s * s * s - 11.0 / 6.0;
    return 11.0 / 6.0;
}

double CutoffSpec::dtheta(double s) {
    if (s <= 1.0) return 2.0 * s;
    if (s <= 2.0) return 2.0 * s * (2.0 - s) * (2.0 - s);
    return 0.0;
}

double CutoffSpec::d2theta(double s) {
    if (s <= 1.0) return 2.0;
    if (s <= 2.0) return 2.0 * (2.0 - s) * (2.0 - 3.0 * s);
    return 0.0;
}

double CutoffSpec::dtheta_over_s(double s) {
    if (s <= 1.0) return 2.0;
    if (s <= 2.0) return 2.0 * (2.0 - s) * (2.0 - s);
    return 0.0;
}

double variance(const RadialField& u) {
    std::vector<double> f(u.size());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = std::norm(u.values[j]);
    return integrate(*u.grid, f, -2.0);
}

double localized_variance(const RadialField& u, const CutoffSpec& cut) {
    std::vector<double> f(u.size());
    for (int j = 0; j < u.grid->n(); ++j) {
        const auto k = static_cast<std::size_t>(j);
        f[k] = cut.phi(u.grid->r(j)) * std::norm(u.values[k]);
    }
    return integrate(*u.grid, f, 0.0);
}

double virial_rhs(const RadialField& u, const ParamSet& params, bool nonlinear) {
    if (params.lambda() != -1) throw std::invalid_argument("virial identity is stated for the focusing flow");
    const double k = kinetic_c(u, params.c());
    if (!nonlinear) return 8.0 * k;
    const double s = params.sigma_value();
    const double b = params.b_value();
    const double p = potential_term(u, b, s);
    return 8.0 * k - 4.0 * (params.d() * s + 2.0 * b) / (s + 2.0) * p;
}

double virial_rhs_energy_form(const RadialField& u, const ParamSet& params) {
    if (params.lambda() != -1) throw std::invalid_argument("virial identity is stated for the focusing flow");
    const double s = params.sigma_value();
    const double b = params.b_value();
    const double k = kinetic_c(u, params.c());
    const double e = energy_from_parts(k, potential_term(u, b, s), params);
    return 4.0 * (params.d() * s + 2.0 * b) * e - 2.0 * (params.d() * s - 4.0 + 2.0 * b) * k;
}

LocalizedVirial localized_virial_rhs(const RadialField& u, const ParamSet& params, const CutoffSpec& cut) {
    const auto& g = *u.grid;
    const int n = g.n();
    const int d = g.d();
    const double c = params.c();
    const double s = params.sigma_value();
    const double b = params.b_value();

    LocalizedVirial out;
    out.standard = virial_rhs(u, params);
    out.gradient_part = 4.0 * gradient_integral(u, [&](double r) { return cut.d2phi(r) - 2.0; });

    std::vector<double> lap(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) lap[static_cast<std::size_t>(j)] = cut.laplacian(g.r(j), d);
    const double h2 = g.h() * g.h();
    double pot = 0.0, bilap = 0.0, nonlin_lap = 0.0, nonlin_grad = 0.0;
    for (int j = 0; j < n; ++j) {
        const auto k = static_cast<std::size_t>(j);
        const double r = g.r(j);
        const double w = g.weight(j);
        const double dens = std::norm(u.values[k]);
        const double f_out = g.face_weight(j) * (lap[k + 1] - lap[k]);
        const double f_in = j > 0 ? g.face_weight(j - 1) * (lap[k] - lap[k - 1]) : 0.0;
        const double bilaplacian = (f_out - f_in) / (radial_power(r, d - 1) * h2);
        bilap -= w * bilaplacian * dens;
        const double radial_ratio = cut.dphi_over_r(r) - 2.0;
        pot += w * radial_ratio * dens / (r * r);
        const double nl = w * std::pow(r, -b) * dens * abs_pow(u.values[k], s);
        nonlin_lap += (lap[k] - 2.0 * d) * nl;
        nonlin_grad += radial_ratio * nl;
    }
    out.potential_part = 4.0 * c * pot;
    out.bilaplacian_part = bilap;
    out.nonlinear_part = -(2.0 * s / (s + 2.0)) * nonlin_lap - (4.0 * b / (s + 2.0)) * nonlin_grad;
    out.value = out.standard + out.correction();
    out.potential_bound = std::max(-4.0 * c * 2.0 * mass(u), 0.0) / (cut.R * cut.R);
    return out;
}

CutoffReport cutoff_check(const CutoffSpec& cut, const RadialGrid& grid) {
    CutoffReport rep;
    rep.min_second = rep.min_first = rep.min_laplacian = 1e300;
    rep.max_theta_second = -1e300;
    const int d = grid.d();
    for (int j = 0; j < grid.n(); ++j) {
        const double r = grid.r(j);
        rep.min_second = std::min(rep.min_second, 2.0 - cut.d2phi(r));
        rep.min_first = std::min(rep.min_first, 2.0 - cut.dphi_over_r(r));
        rep.min_laplacian = std::min(rep.min_laplacian, 2.0 * d - cut.laplacian(r, d));
        rep.max_theta_second = std::max(rep.max_theta_second, CutoffSpec::d2theta(r / cut.R));
    }
    return rep;
}

VirialConsistency virial_consistency(const TimeSeries& series, double t_lo, double t_hi) {
    if (series.size() < 3) throw std::invalid_argument("virial consistency needs at least 3 samples");
    const double dt = series[1].t - series[0].t;
    for (std::size_t i = 1; i < series.size(); ++i)
        if (std::abs((series[i].t - series[i - 1].t) - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            throw std::invalid_argument("virial consistency needs uniformly spaced samples");
    VirialConsistency out;
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        if (series[i].t < t_lo || series[i].t > t_hi) continue;
        const double second =
            (series[i + 1].variance - 2.0 * series[i].variance + series[i - 1].variance) / (dt * dt);
        out.max_abs_mismatch = std::max(out.max_abs_mismatch, std::abs(second - series[i].virial_rhs));
        out.max_abs_rhs = std::max(out.max_abs_rhs, std::abs(series[i].virial_rhs));
        ++out.compared;
    }
    if (out.compared == 0) throw std::invalid_argument("no interior samples in the requested window");
    out.max_rel_mismatch = out.max_abs_rhs > 0.0 ? out.max_abs_mismatch / out.max_abs_rhs : out.max_abs_mismatch;
    return out;
}

}  // namespace inlsc
