#include "inlsc/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace inlsc {

double to_double(const Rational& q) {
    return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            std::size_t used_n = 0, used_d = 0;
            const std::string num = text.substr(0, slash);
            const std::string den = text.substr(slash + 1);
            const auto n = std::stoll(num, &used_n);
            const auto d = std::stoll(den, &used_d);
            if (used_n != num.size() || used_d != den.size() || d == 0) throw std::invalid_argument(text);
            return Rational(n, d);
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos) {
            std::size_t used = 0;
            const auto n = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return Rational(n);
        }
        const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const auto places = text.size() - dot - 1;
        if (places > 12) throw std::invalid_argument(text);
        std::size_t used = 0;
        const auto n = std::stoll(digits, &used);
        if (used != digits.size()) throw std::invalid_argument(text);
        std::int64_t den = 1;
        for (std::size_t i = 0; i < places; ++i) den *= 10;
        return Rational(n, den);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
}

Rational hardy_constant(int d) {
    const Rational half_gap(d - 2, 2);
    return half_gap * half_gap;
}

double rho_of(int d, double c) {
    const double half_gap = 0.5 * (d - 2);
    return half_gap - std::sqrt(half_gap * half_gap + c);
}

ParamSet::ParamSet(int d, Rational b, Rational sigma, int lambda, double c)
    : d_(d), b_(b), sigma_(sigma), lambda_(lambda), c_(c) {
    if (d < 3) throw std::invalid_argument("dimension d must be >= 3");
    if (b <= 0 || b >= 2) throw std::invalid_argument("b must satisfy 0 < b < 2");
    if (sigma <= 0) throw std::invalid_argument("sigma must be positive");
    if (lambda != 1 && lambda != -1) throw std::invalid_argument("lambda must be +1 or -1");
    if (!std::isfinite(c) || c <= -to_double(hardy_constant(d)))
        throw std::invalid_argument("c must exceed -c(d) = -" + to_string(hardy_constant(d)));
}

ParamSet ParamSet::energy_critical(int d, Rational b, int lambda, double c) {
    if (d < 3) throw std::invalid_argument("dimension d must be >= 3");
    return ParamSet(d, b, (Rational(4) - 2 * b) / Rational(d - 2), lambda, c);
}

bool ParamSet::is_energy_critical() const {
    return sigma_ == (Rational(4) - 2 * b_) / Rational(d_ - 2);
}

DerivedExponents derive(const ParamSet& params) {
    const int d = params.d();
    const Rational& b = params.b();
    DerivedExponents out;
    out.c_d = hardy_constant(d);
    out.sigma_star = (Rational(4) - 2 * b) / Rational(d - 2);
    out.sigma_mass = (Rational(4) - 2 * b) / Rational(d);
    out.s_c = Rational(d, 2) - (Rational(2) - b) / params.sigma();
    out.rho = rho_of(d, params.c());
    out.beta = 1.0 - 2.0 * out.rho / (d - 2);
    out.r = Rational(2 * d) * (Rational(d + 2) - 2 * b) / (Rational(d * d + 4) - 2 * d * b);
    out.r_bar = Rational(2 * d, d - 2);
    const auto pair = admissible_pair_for(d, out.r);
    out.gamma_r = pair.gamma.value();
    const Rational m = Rational(d + 2) - 2 * b;
    out.c_equiv_threshold = -((m * m - 4) / (m * m)) * out.c_d;
    return out;
}

Rational TimeExponent::reciprocal() const {
    if (is_infinite()) return Rational(0);
    return Rational(1) / *value_;
}

bool is_admissible(int d, const AdmissiblePair& pair) {
    if (d < 3) throw std::invalid_argument("dimension d must be >= 3");
    if (pair.p < 2 || pair.p > Rational(2 * d, d - 2)) return false;
    if (!pair.gamma.is_infinite() && pair.gamma.value() <= 0) return false;
    return 2 * pair.gamma.reciprocal() == Rational(d, 2) - Rational(d) / pair.p;
}

AdmissiblePair admissible_pair_for(int d, const Rational& p) {
    if (p <= 0) throw std::invalid_argument("Lebesgue exponent must be positive");
    const Rational two_over_gamma = Rational(d, 2) - Rational(d) / p;
    if (two_over_gamma < 0) throw std::invalid_argument("p below 2 has no admissible time exponent");
    if (two_over_gamma == Rational(0)) return {TimeExponent::infinite(), p};
    return {TimeExponent::finite(Rational(2) / two_over_gamma), p};
}

Interval equivalence_window(int d, double c, double s) {
    if (!(s > 0.0 && s < 2.0)) throw std::invalid_argument("smoothness s must lie in (0, 2)");
    if (c <= -to_double(hardy_constant(d))) throw std::invalid_argument("c must exceed -c(d)");
    if (c >= 0.0) return {1.0, d / s};
    const double rho = rho_of(d, c);
    return {d / (d - rho), d / (s + rho)};
}

bool WellposedReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

WellposedReport validate_wellposed(const ParamSet& params) {
    const auto ex = derive(params);
    const int d = params.d();
    WellposedReport rep;
    const bool critical = params.sigma() == ex.sigma_star;
    rep.checks.push_back({"sigma_energy_critical", critical,
                          "sigma=" + to_string(params.sigma()) + " sigma*=" + to_string(ex.sigma_star)});
    const Rational b_max(4, d);
    rep.checks.push_back({"b_below_4_over_d", params.b() > 0 && params.b() < b_max,
                          "b=" + to_string(params.b()) + " 4/d=" + to_string(b_max)});
    const double thr = to_double(ex.c_equiv_threshold);
    std::ostringstream c_detail;
    c_detail.precision(17);
    c_detail << "c=" << params.c() << " threshold=" << to_string(ex.c_equiv_threshold);
    rep.checks.push_back({"c_above_equivalence_threshold", params.c() > thr, c_detail.str()});

    const auto window = equivalence_window(d, params.c(), 1.0);
    const double r = to_double(ex.r);
    const double r_bar_dual = to_double(ex.r_bar / (ex.r_bar - 1));
    std::ostringstream w;
    w.precision(17);
    w << "window=(" << window.lo << ", " << window.hi << ")";
    rep.checks.push_back({"r_in_equivalence_window", window.contains(r),
                          "r=" + to_string(ex.r) + " " + w.str()});
    rep.checks.push_back({"r_bar_dual_in_equivalence_window", window.contains(r_bar_dual),
                          "r_bar'=" + to_string(ex.r_bar / (ex.r_bar - 1)) + " " + w.str()});
    return rep;
}

bool ExponentIdentityReport::all_hold() const {
    for (const auto& id : identities)
        if (!id.holds()) return false;
    return true;
}

IdentityCheck time_exponent_identity(int d, const Rational& b) {
    const ParamSet p = ParamSet::energy_critical(d, b, -1, 0.0);
    const auto ex = derive(p);
    const auto endpoint = admissible_pair_for(d, ex.r_bar);
    // gamma(r_bar) = 2, so its dual exponent is finite.
    const Rational inv_gamma_bar = endpoint.gamma.reciprocal();
    const Rational inv_gamma_bar_dual = 1 - inv_gamma_bar;
    return {"time_exponent_holder", inv_gamma_bar_dual, (ex.sigma_star + 1) / ex.gamma_r};
}

ExponentIdentityReport exponent_identities(int d, const Rational& b) {
    if (d < 3) throw std::invalid_argument("dimension d must be >= 3");
    if (b <= 0 || b >= Rational(4, d))
        throw std::invalid_argument("exponent identities need 0 < b < 4/d");
    const ParamSet p = ParamSet::energy_critical(d, b, -1, 0.0);
    const auto ex = derive(p);
    ExponentIdentityReport rep;
    rep.sigma = ex.sigma_star;
    rep.r = ex.r;
    rep.r_bar = ex.r_bar;
    const Rational sigma = ex.sigma_star;
    const Rational inv_r = 1 / ex.r;
    const Rational inv_r_bar_dual = 1 - 1 / ex.r_bar;
    rep.positivity = 1 - (b + 1) / (sigma + 1);
    rep.inv_rho_hat = inv_r - (1 - (b + 1) / (sigma + 1)) / Rational(d);
    rep.inv_gamma_hat = inv_r - (1 - b / sigma) / Rational(d);
    rep.identities.push_back({"singular_term_holder", inv_r_bar_dual, (sigma + 1) * rep.inv_rho_hat});
    // Closes against 1/r_bar', the exponent of the dual endpoint norm.
    rep.identities.push_back({"gradient_term_holder", sigma * rep.inv_gamma_hat + inv_r, inv_r_bar_dual});
    rep.identities.push_back(time_exponent_identity(d, b));
    return rep;
}

}  // namespace inlsc
