#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "inlsc/params.hpp"
#include "inlsc/radial_grid.hpp"

namespace inlsc {

/// |z|^p with 0^p = 0, evaluated as exp(p log|z|) for non-integer p.
double abs_pow(Complex z, double p);

double mass(const RadialField& u);

/// Integral of a(|x|) |d_r u|^2 over R^d, from the face differences
/// (u_{j+1} - u_j)/h at r_{j+1/2}. Only interior faces enter: the Dirichlet
/// ghost beyond r_max is a boundary artefact and is not part of the functional.
double gradient_integral(const RadialField& u, const std::function<double(double)>& a = {});

/// ||u||^2 in the P_c-Sobolev seminorm: int |grad u|^2 + c |x|^{-2} |u|^2.
double kinetic_c(const RadialField& u, double c);

/// int |x|^{-b} |u|^{sigma+2}.
double potential_term(const RadialField& u, double b, double sigma);

double energy_from_parts(double kinetic, double potential, const ParamSet& params);
double energy(const RadialField& u, const ParamSet& params);

/// Hardy-Sobolev ratio sqrt(kinetic_c) / potential^{1/(sigma*+2)}. Requires sigma = sigma*.
double hs_quotient(const RadialField& u, const ParamSet& params);
double hs_quotient_from_parts(double kinetic, double potential, double sigma_star);

/// Sharp constant read off the extremizer: ||W||^{sigma*} = C^{-(sigma*+2)}.
double hs_constant_from_norm(double w_norm, double sigma_star);

/// g(y) = y^2/2 - C^{sigma*+2} y^{sigma*+2} / (sigma*+2).
double g_curve(double y, double C, double sigma_star);

/// Positive critical point of g: y^{sigma*} = C^{-(sigma*+2)}.
double g_critical_point(double C, double sigma_star);

struct Diagnostics {
    double t = 0.0;
    double mass = 0.0;
    double kinetic_c = 0.0;
    double potential = 0.0;
    double energy = 0.0;
    double variance = 0.0;
    double dt = 0.0;
    // Optional virial columns.
    double virial_rhs = 0.0;
    double localized_virial_rhs = 0.0;
};

using TimeSeries = std::vector<Diagnostics>;

Diagnostics diagnostics(const RadialField& u, const ParamSet& params, double t, double dt);

void write_diagnostics_csv(std::ostream& out, const TimeSeries& series, bool with_virial = false);

}  // namespace inlsc
