#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace inlsc {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& q);
std::string to_string(const Rational& q);

// Parses "p/q", an integer, or a short decimal ("0.75") into an exact rational.
Rational parse_rational(const std::string& text);

/// Model parameters of  i u_t - P_c u = lambda |x|^{-b} |u|^sigma u  on R^d.
///
/// Exponents that are rational in the inputs (b, sigma) are stored exactly;
/// the potential coefficient c is a real number.
class ParamSet {
public:
    ParamSet(int d, Rational b, Rational sigma, int lambda, double c);

    /// Energy-critical parameters: sigma = (4 - 2b)/(d - 2).
    static ParamSet energy_critical(int d, Rational b, int lambda, double c);

    int d() const { return d_; }
    const Rational& b() const { return b_; }
    const Rational& sigma() const { return sigma_; }
    int lambda() const { return lambda_; }
    double c() const { return c_; }

    double b_value() const { return to_double(b_); }
    double sigma_value() const { return to_double(sigma_); }

    bool is_energy_critical() const;

private:
    int d_;
    Rational b_;
    Rational sigma_;
    int lambda_;
    double c_;
};

/// Hardy constant c(d) = ((d-2)/2)^2.
Rational hardy_constant(int d);

/// rho = (d-2)/2 - sqrt(((d-2)/2)^2 + c).
double rho_of(int d, double c);

struct DerivedExponents {
    Rational c_d;
    Rational sigma_star;
    Rational sigma_mass;
    Rational s_c;
    double rho = 0.0;
    double beta = 1.0;
    Rational r;        // Strichartz space exponent 2d(d+2-2b)/(d^2-2db+4)
    Rational r_bar;    // 2d/(d-2)
    Rational gamma_r;  // time exponent paired with r
    Rational c_equiv_threshold;
};

DerivedExponents derive(const ParamSet& params);

/// Time exponent of an admissible pair; gamma = infinity is a distinguished state.
class TimeExponent {
public:
    static TimeExponent infinite() { return TimeExponent{}; }
    static TimeExponent finite(Rational value) { return TimeExponent{value}; }

    bool is_infinite() const { return !value_.has_value(); }
    const Rational& value() const { return *value_; }

    /// 1/gamma, exactly (0 for gamma = infinity).
    Rational reciprocal() const;

private:
    TimeExponent() = default;
    explicit TimeExponent(Rational v) : value_(v) {}
    std::optional<Rational> value_;
};

struct AdmissiblePair {
    TimeExponent gamma;
    Rational p;
};

bool is_admissible(int d, const AdmissiblePair& pair);

/// The pair (gamma(p), p) with gamma(p) solved from 2/gamma = d/2 - d/p.
AdmissiblePair admissible_pair_for(int d, const Rational& p);

struct Interval {
    double lo;
    double hi;
    bool contains(double x) const { return lo < x && x < hi; }
};

/// Open interval of p on which the P_c-Sobolev norm of order s is equivalent
/// to the flat one.
Interval equivalence_window(int d, double c, double s);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct WellposedReport {
    std::vector<Check> checks;
    bool all_pass() const;
};

WellposedReport validate_wellposed(const ParamSet& params);

struct IdentityCheck {
    std::string name;
    Rational lhs;
    Rational rhs;
    bool holds() const { return lhs == rhs; }
};

struct ExponentIdentityReport {
    Rational sigma;
    Rational r;
    Rational r_bar;
    Rational inv_rho_hat;    // Hoelder exponent of the |x|^{-b-1}|u|^{sigma+1} term
    Rational inv_gamma_hat;  // Hoelder exponent of the |x|^{-b}|u|^sigma grad u term
    Rational positivity;     // 1 - (b+1)/(sigma+1)
    std::vector<IdentityCheck> identities;
    bool all_hold() const;
};

/// Nonlinear-estimate exponent bookkeeping at sigma = sigma*; requires 0 < b < 4/d.
ExponentIdentityReport exponent_identities(int d, const Rational& b);

/// 1/gamma(r_bar)' = (sigma*+1)/gamma(r). Purely algebraic; valid for every 0 < b < 2.
IdentityCheck time_exponent_identity(int d, const Rational& b);

}  // namespace inlsc
