#pragma once

#include "inlsc/functionals.hpp"
#include "inlsc/params.hpp"
#include "inlsc/radial_grid.hpp"

namespace inlsc {

/// Localizing weight phi_R(r) = R^2 theta(r/R) with
///   theta'(s) = 2s on [0,1],  2s(2-s)^2 on [1,2],  0 beyond 2.
/// theta is C^1; second derivatives are one-sided at s = 1 and s = 2 (left limit).
struct CutoffSpec {
    double R;
    explicit CutoffSpec(double R_);

    static double theta(double s);
    static double dtheta(double s);
    static double d2theta(double s);
    /// theta'(s)/s, exact in each piece.
    static double dtheta_over_s(double s);

    double phi(double r) const { return R * R * theta(r / R); }
    double dphi(double r) const { return R * dtheta(r / R); }
    double d2phi(double r) const { return d2theta(r / R); }
    double dphi_over_r(double r) const { return dtheta_over_s(r / R); }
    /// Delta phi = phi'' + (d-1) phi'/r.
    double laplacian(double r, int d) const { return d2phi(r) + (d - 1) * dphi_over_r(r); }
};

double variance(const RadialField& u);

/// int phi_R |u|^2; its second time derivative is localized_virial_rhs.
double localized_variance(const RadialField& u, const CutoffSpec& cut);

/// d^2/dt^2 of int |x|^2 |u|^2 for the focusing flow:
///   8 ||u||_c^2 - 4(d sigma + 2b)/(sigma+2) int |x|^{-b}|u|^{sigma+2}.
/// With nonlinear = false the potential term is dropped (free P_c flow).
double virial_rhs(const RadialField& u, const ParamSet& params, bool nonlinear = true);

/// Same quantity written through the energy: 4(d sigma+2b) E - 2(d sigma - 4 + 2b) ||u||_c^2.
double virial_rhs_energy_form(const RadialField& u, const ParamSet& params);

struct LocalizedVirial {
    double value = 0.0;      // d^2/dt^2 of int phi_R |u|^2
    double standard = 0.0;   // virial_rhs(u)
    // value - standard, split by term; each vanishes where phi_R = r^2.
    double gradient_part = 0.0;     // 4 int (phi'' - 2)|u_r|^2            (<= 0)
    double potential_part = 0.0;    // 4c int (phi'/r - 2)|u|^2/r^2
    double bilaplacian_part = 0.0;  // -int Delta^2 phi |u|^2
    double nonlinear_part = 0.0;    // nonlinear terms relative to phi = r^2
    double correction() const { return gradient_part + potential_part + bilaplacian_part + nonlinear_part; }
    /// Analytic bound on the potential part: max{-4 c S M, 0} R^{-2}, S = max_{s>=1}(2 - theta'(s)/s).
    double potential_bound = 0.0;
};

/// Localized virial expression for radial focusing solutions, evaluated exactly
/// (no error-term estimates). Delta^2 phi_R comes from the discrete radial Laplacian
/// applied to samples of Delta phi_R.
LocalizedVirial localized_virial_rhs(const RadialField& u, const ParamSet& params, const CutoffSpec& cut);

struct CutoffReport {
    double min_second = 0.0;     // min 2 - phi''
    double min_first = 0.0;      // min 2 - phi'/r
    double min_laplacian = 0.0;  // min 2d - Delta phi
    double max_theta_second = 0.0;
    bool pass() const { return min_second >= 0.0 && min_first >= 0.0 && min_laplacian >= 0.0 && max_theta_second <= 2.0; }
};

CutoffReport cutoff_check(const CutoffSpec& cut, const RadialGrid& grid);

struct VirialConsistency {
    double max_abs_mismatch = 0.0;
    double max_rel_mismatch = 0.0;  // relative to max |rhs| over the compared samples
    double max_abs_rhs = 0.0;
    int compared = 0;
};

/// Compares the centred second difference of the recorded variance with the recorded
/// virial_rhs at interior samples whose time lies in [t_lo, t_hi]. Samples must be uniform.
VirialConsistency virial_consistency(const TimeSeries& series, double t_lo = -1e300, double t_hi = 1e300);

}  // namespace inlsc
