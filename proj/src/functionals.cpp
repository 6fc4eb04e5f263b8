#include "inlsc/functionals.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace inlsc {

double abs_pow(Complex z, double p) {
    const double a2 = std::norm(z);
    if (a2 == 0.0) return 0.0;
    if (p == 2.0) return a2;
    if (p == 4.0) return a2 * a2;
    if (p == 1.0) return std::sqrt(a2);
    return std::exp(0.5 * p * std::log(a2));
}

double mass(const RadialField& u) {
    std::vector<double> f(u.size());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = std::norm(u.values[j]);
    return integrate(*u.grid, f, 0.0);
}

double gradient_integral(const RadialField& u, const std::function<double(double)>& a) {
    const auto& g = *u.grid;
    const double h = g.h();
    double sum = 0.0;
    for (int j = 0; j + 1 < g.n(); ++j) {
        const double face = g.face(j);
        const auto k = static_cast<std::size_t>(j);
        const double diff2 = std::norm(u.values[k + 1] - u.values[k]);
        const double coef = a ? a(face) : 1.0;
        sum += coef * g.face_weight(j) * diff2;
    }
    return g.omega() * sum / h;
}

double kinetic_c(const RadialField& u, double c) {
    double k = gradient_integral(u);
    if (c != 0.0) {
        std::vector<double> f(u.size());
        for (std::size_t j = 0; j < f.size(); ++j) f[j] = std::norm(u.values[j]);
        k += c * integrate(*u.grid, f, 2.0);
    }
    return k;
}

double potential_term(const RadialField& u, double b, double sigma) {
    if (!(b > 0.0 && b < 2.0)) throw std::invalid_argument("potential term needs 0 < b < 2");
    std::vector<double> f(u.size());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = std::norm(u.values[j]) * abs_pow(u.values[j], sigma);
    return integrate(*u.grid, f, b);
}

double energy_from_parts(double kinetic, double potential, const ParamSet& params) {
    return 0.5 * kinetic + params.lambda() * potential / (params.sigma_value() + 2.0);
}

double energy(const RadialField& u, const ParamSet& params) {
    return energy_from_parts(kinetic_c(u, params.c()), potential_term(u, params.b_value(), params.sigma_value()),
                             params);
}

double hs_quotient_from_parts(double kinetic, double potential, double sigma_star) {
    if (!(potential > 0.0)) throw std::invalid_argument("Hardy-Sobolev quotient of a zero field");
    return std::sqrt(kinetic) / std::pow(potential, 1.0 / (sigma_star + 2.0));
}

double hs_quotient(const RadialField& u, const ParamSet& params) {
    if (!params.is_energy_critical()) throw std::invalid_argument("Hardy-Sobolev quotient needs sigma = sigma*");
    const double s = params.sigma_value();
    return hs_quotient_from_parts(kinetic_c(u, params.c()), potential_term(u, params.b_value(), s), s);
}

double hs_constant_from_norm(double w_norm, double sigma_star) {
    return std::pow(w_norm, -sigma_star / (sigma_star + 2.0));
}

double g_curve(double y, double C, double sigma_star) {
    if (y < 0.0 || !(C > 0.0)) throw std::invalid_argument("g needs y >= 0 and C > 0");
    const double q = sigma_star + 2.0;
    return 0.5 * y * y - std::pow(C, q) * std::pow(y, q) / q;
}

double g_critical_point(double C, double sigma_star) {
    return std::pow(C, -(sigma_star + 2.0) / sigma_star);
}

Diagnostics diagnostics(const RadialField& u, const ParamSet& params, double t, double dt) {
    Diagnostics out;
    out.t = t;
    out.dt = dt;
    std::vector<double> dens(u.size());
    for (std::size_t j = 0; j < dens.size(); ++j) dens[j] = std::norm(u.values[j]);
    out.mass = integrate(*u.grid, dens, 0.0);
    out.variance = integrate(*u.grid, dens, -2.0);
    out.kinetic_c = kinetic_c(u, params.c());
    out.potential = potential_term(u, params.b_value(), params.sigma_value());
    out.energy = energy_from_parts(out.kinetic_c, out.potential, params);
    return out;
}

void write_diagnostics_csv(std::ostream& out, const TimeSeries& series, bool with_virial) {
    out << "t,mass,kinetic_c,potential,energy,variance,dt";
    if (with_virial) out << ",virial_rhs,localized_virial_rhs";
    out << '\n';
    for (const auto& d : series) {
        out << format_number(d.t) << ',' << format_number(d.mass) << ',' << format_number(d.kinetic_c) << ','
            << format_number(d.potential) << ',' << format_number(d.energy) << ',' << format_number(d.variance)
            << ',' << format_number(d.dt);
        if (with_virial) out << ',' << format_number(d.virial_rhs) << ',' << format_number(d.localized_virial_rhs);
        out << '\n';
    }
}

}  // namespace inlsc
