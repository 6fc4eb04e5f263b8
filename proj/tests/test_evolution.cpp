#include "doctest.h"
#include "inlsc/evolution.hpp"

#include <cmath>

using namespace inlsc;

namespace {
RadialField bump(double r_max = 10.0, double h = 0.02, double amp = 1.0) {
    return RadialField::sample(RadialGrid::make(3, r_max, h), [&](double r) {
        return Complex(amp * std::exp(-r * r), 0.3 * amp * r * std::exp(-r * r));
    });
}

double max_diff(const RadialField& a, const RadialField& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a.values[j] - b.values[j]));
    return m;
}
}  // namespace

TEST_SUITE("evolution") {
TEST_CASE("solver config validation") {
    SolverConfig c;
    CHECK_NOTHROW(c.validate());
    c.dt0 = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SolverConfig{};
    c.dt_min = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SolverConfig{};
    c.safety = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("nonlinear flow is a pointwise phase rotation") {
    const auto u = bump();
    const auto p = ParamSet::energy_critical(3, Rational(1), -1, 0.0);
    const auto v = nonlinear_flow(u, p, 0.37);
    for (std::size_t j = 0; j < u.size(); ++j) CHECK(std::abs(v.values[j]) == doctest::Approx(std::abs(u.values[j])));
    CHECK(max_diff(nonlinear_flow(v, p, -0.37), u) < 1e-13);
    CHECK(max_diff(nonlinear_halfstep(u, p, 0.2), nonlinear_flow(u, p, 0.1)) == 0.0);
}

TEST_CASE("Crank-Nicolson step is unitary and time reversible") {
    const auto u = bump();
    for (double c : {0.0, -0.2, 0.5}) {
        const auto v = linear_step(u, c, 1e-2);
        CHECK(mass(v) == doctest::Approx(mass(u)).epsilon(1e-13));
        CHECK(max_diff(linear_step(v, c, -1e-2), u) < 1e-12);
    }
}

TEST_CASE("linear flow conserves the discrete quadratic energy") {
    const auto u = bump(20.0, 0.02);
    const double c = 0.1;
    auto v = u;
    for (int i = 0; i < 50; ++i) v = linear_step(v, c, 1e-3);
    CHECK(inner(v, apply_pc(v, c)) == doctest::Approx(inner(u, apply_pc(u, c))).epsilon(1e-12));
}

TEST_CASE("Strang step: reversibility, gauge covariance, mass") {
    const auto u = bump();
    const auto p = ParamSet::energy_critical(3, Rational(1), -1, -0.1);
    const auto v = strang_step(u, p, 1e-3);
    CHECK(max_diff(strang_step(v, p, -1e-3), u) < 1e-12);
    CHECK(mass(v) == doctest::Approx(mass(u)).epsilon(1e-13));
    const Complex g = std::polar(1.0, 1.1);
    CHECK(max_diff(strang_step(g * u, p, 1e-3), g * v) < 1e-13);
    const SplitOperators ops(*u.grid, p);
    CHECK(max_diff(strang_step(u, p, ops, 1e-3), v) == 0.0);
    // Without the nonlinear factors the step is plain Crank-Nicolson.
    CHECK(max_diff(strang_step(u, p, 1e-3, false), linear_step(u, -0.1, 1e-3)) == 0.0);
}

TEST_CASE("evolve is deterministic and samples on the output grid") {
    const auto u = bump(15.0, 0.02, 0.5);
    const auto p = ParamSet::energy_critical(3, Rational(1), 1, 0.0);
    SolverConfig cfg;
    cfg.t_end = 0.05;
    cfg.output_interval = 0.01;
    const auto a = evolve(u, p, cfg), b = evolve(u, p, cfg);
    CHECK(a.state.status == RunStatus::finished);
    REQUIRE(a.series().size() == 6);
    for (std::size_t i = 0; i < a.series().size(); ++i) {
        CHECK(a.series()[i].t == doctest::Approx(0.01 * i));
        CHECK(a.series()[i].energy == b.series()[i].energy);
    }
    CHECK(max_diff(a.state.field, b.state.field) == 0.0);
    CHECK(a.state.t == doctest::Approx(0.05));
}

TEST_CASE("defocusing evolution conserves mass and energy at a resolved step") {
    const auto u = bump(20.0, 0.02, 0.5);
    const auto p = ParamSet::energy_critical(3, Rational(1), 1, 0.0);
    SolverConfig cfg;
    cfg.t_end = 0.1;
    cfg.dt0 = 2e-4;
    const auto res = evolve(u, p, cfg);
    const auto& s = res.series();
    CHECK(s.back().mass == doctest::Approx(s.front().mass).epsilon(1e-12));
    CHECK(s.back().energy == doctest::Approx(s.front().energy).epsilon(1e-5));
}

TEST_CASE("free flow spreads a Gaussian as predicted by the virial identity") {
    // For the free flow, d^2/dt^2 variance = 8 K, constant; variance(t) = V0 + V1 t + 4 K t^2.
    const auto g = RadialGrid::make(3, 30.0, 0.02);
    const auto u = RadialField::sample(g, [](double r) { return Complex(std::exp(-r * r), 0.0); });
    const auto p = ParamSet::energy_critical(3, Rational(1), 1, 0.0);
    SolverConfig cfg;
    cfg.nonlinear = false;
    cfg.t_end = 0.2;
    cfg.output_interval = 0.1;
    cfg.dt0 = 1e-3;
    const auto res = evolve(u, p, cfg);
    const auto& s = res.series();
    const double k = s.front().kinetic_c;
    CHECK(s.back().variance == doctest::Approx(s.front().variance + 4 * k * 0.04).epsilon(1e-3));
}

TEST_CASE("focusing supercritical data triggers the blowup guard") {
    const auto g = RadialGrid::make(3, 30.0, 0.01);
    const auto u = RadialField::sample(g, [](double r) { return Complex(3 * std::exp(-r * r), 0.0); });
    const auto p = ParamSet::energy_critical(3, Rational(1), -1, 0.0);
    SolverConfig cfg;
    cfg.t_end = 0.5;
    const auto res = evolve(u, p, cfg);
    CHECK(res.state.status == RunStatus::blowup_detected);
    CHECK(res.state.reason == "kinetic_growth");
    CHECK(res.state.t < 0.1);
}

TEST_CASE("mass reaching the outer shell stops the run") {
    const auto g = RadialGrid::make(3, 6.0, 0.02);
    const auto u = RadialField::sample(g, [](double r) { return Complex(std::exp(-(r - 3) * (r - 3) * 4), 0.0); });
    const auto p = ParamSet::energy_critical(3, Rational(1), 1, 0.0);
    SolverConfig cfg;
    cfg.t_end = 2.0;
    const auto res = evolve(u, p, cfg);
    CHECK(res.state.status == RunStatus::boundary_contaminated);
    CHECK(outer_mass(res.state.field) > 0.0);
}
}
