#include "doctest.h"
#include "inlsc/ground_state.hpp"

#include <cmath>
#include <numbers>

using namespace inlsc;

namespace {
const double pi = std::numbers::pi;
}

TEST_SUITE("ground_state") {
TEST_CASE("closed form at d=3, b=1, c=0, eps=1") {
    // W(r) = sqrt(2) / (1 + r) here.
    const GroundStateSpec spec(3, Rational(1), 0.0, 1.0);
    for (double r : {0.01, 0.5, 1.0, 7.0}) CHECK(eval_W(spec, r) == doctest::Approx(std::sqrt(2.0) / (1 + r)));
    CHECK(spec.sigma_star() == doctest::Approx(2.0));
}

TEST_CASE("eval_dW matches a centred difference") {
    for (double c : {0.0, -3.0 / 16.0, -0.2})
        for (double eps : {0.5, 2.0}) {
            const GroundStateSpec spec(3, Rational(1, 2), c, eps);
            for (double r : {0.2, 1.0, 4.0}) {
                const double e = 1e-5;
                const double fd = (eval_W(spec, r + e) - eval_W(spec, r - e)) / (2 * e);
                CHECK(eval_dW(spec, r) == doctest::Approx(fd).epsilon(1e-6));
            }
        }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(GroundStateSpec(3, Rational(1), 0.1), std::invalid_argument);
    CHECK_THROWS_AS(GroundStateSpec(3, Rational(1), -0.25), std::invalid_argument);
    CHECK_THROWS_AS(GroundStateSpec(3, Rational(2), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(GroundStateSpec(2, Rational(1), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(GroundStateSpec(3, Rational(1), 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("power-law tail is exact for pure powers") {
    CHECK(power_law_tail([](double r) { return 1.0 / (r * r * r); }, 10.0) == doctest::Approx(1.0 / 200.0));
    CHECK(power_law_tail([](double r) { return 5.0 / (r * r); }, 4.0) == doctest::Approx(5.0 / 4.0));
    CHECK_THROWS(power_law_tail([](double r) { return 1.0 / r; }, 4.0));
}

TEST_CASE("identities at a moderate grid") {
    const GroundStateSpec spec(3, Rational(1), 0.0, 1.0);
    const auto rep = identities_report(spec, RadialGrid::make(3, 100.0, 0.01));
    CHECK(rep.kinetic == doctest::Approx(8 * pi / 3).epsilon(3e-3));
    CHECK(rep.potential == doctest::Approx(8 * pi / 3).epsilon(3e-3));
    CHECK(rep.energy == doctest::Approx(2 * pi / 3).epsilon(3e-3));
    CHECK(rep.energy_factor == Rational(1, 4));
    CHECK(rep.integrals.kinetic_tail > 0.0);
    CHECK(rep.quotient == doctest::Approx(std::pow(8 * pi / 3, 0.25)).epsilon(1e-3));
}

TEST_CASE("Pohozaev balance K = P for c < 0 converges under refinement") {
    // W ~ r^{-rho} at the origin: the first cells carry an O(h^{1-2 rho}) quadrature error.
    const GroundStateSpec mild(3, Rational(1, 2), -0.1, 1.0);
    CHECK(identities_report(mild, RadialGrid::make(3, 100.0, 0.005)).norm_potential_rel < 2e-3);
    const GroundStateSpec strong(3, Rational(1), -3.0 / 16.0, 1.0);
    double prev = 1e300;
    for (double h : {0.02, 0.01, 0.005}) {
        const double e = identities_report(strong, RadialGrid::make(3, 100.0, h)).norm_potential_rel;
        CHECK(e < prev);
        prev = e;
    }
}

TEST_CASE("Euler-Lagrange residual is small and decreases under refinement") {
    const GroundStateSpec spec(3, Rational(1), 0.0, 1.0);
    const auto coarse = RadialGrid::make(3, 40.0, 0.02), fine = RadialGrid::make(3, 40.0, 0.01);
    const double a = el_residual(spec, *coarse, 0.2), b = el_residual(spec, *fine, 0.2);
    CHECK(a < 5e-3);
    CHECK(a / b == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("scaling family W_eps has a common quotient") {
    const auto g = RadialGrid::make(3, 100.0, 0.01);
    const double q1 = identities_report(GroundStateSpec(3, Rational(1), 0.0, 1.0), g).quotient;
    const double q4 = identities_report(GroundStateSpec(3, Rational(1), 0.0, 4.0), g).quotient;
    CHECK(q4 == doctest::Approx(q1).epsilon(2e-3));
}

TEST_CASE("minimizer decreases the quotient monotonically") {
    const auto params = ParamSet::energy_critical(3, Rational(1), -1, 0.0);
    const auto g = RadialGrid::make(3, 10.0, 0.02);
    const auto seed = RadialField::sample(g, [](double r) { return Complex(std::exp(-r * r), 0.0); });
    MinimizerOptions opts;
    opts.max_iters = 100;
    const auto m = minimize_quotient(params, seed, opts);
    REQUIRE(m.trace.size() >= 2);
    for (std::size_t i = 1; i < m.trace.size(); ++i) CHECK(m.trace[i] <= m.trace[i - 1]);
    CHECK(m.quotient < hs_quotient(seed, params));
    CHECK(m.quotient > 0.97 * std::pow(8 * pi / 3, 0.25));
    CHECK_FALSE(m.diverged);
}
}
