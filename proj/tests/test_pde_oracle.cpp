#include "doctest.h"

#include "ndnls/error.hpp"
#include "ndnls/pde_oracle.hpp"
#include "ndnls/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace ndnls;

namespace {

Field gaussian(const SpatialGrid& g, cplx amp, double shift = 0.0, double kappa = 0.0) {
    Field u(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double s = g.node(j) - shift;
        u[j] = amp * std::exp(-s * s) * std::exp(I * kappa * g.node(j));
    }
    return u;
}

double rel_l2(const SpatialGrid& g, const Field& a, const Field& b) {
    Field d(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) d[j] = a[j] - b[j];
    return quad::l2_norm(d, g.spacing()) / quad::l2_norm(b, g.spacing());
}

} // namespace

TEST_CASE("rhs of zero is zero") {
    const SpatialGrid g(256, 12.0);
    const auto f = rhs(g, Field(g.size(), 0.0));
    CHECK(quad::sup_norm(f) == 0.0);
}

TEST_CASE("linear rhs on a Fourier mode follows the dispersion relation") {
    const SpatialGrid g(256, 12.0);
    OracleConfig cfg;
    cfg.nonlinear_enabled = false;
    for (int m : {1, 5, 40}) {
        const double xi = std::numbers::pi * m / g.half_extent();
        Field u(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) u[j] = std::exp(I * xi * g.node(j));
        const auto f = rhs(g, u, cfg);
        double err = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) err = std::max(err, std::abs(f[j] + I * xi * xi * u[j]));
        CHECK(err <= 1e-9 * xi * xi);
    }
}

TEST_CASE("nonlinear rhs matches a finite-difference flux for smooth data") {
    // Independent check of the flux term by centred differences on a fine grid.
    const SpatialGrid g(1024, 12.0);
    const auto u = gaussian(g, cplx(0.3, 0.1), 0.5, 0.7);
    OracleConfig lin;
    lin.nonlinear_enabled = false;
    const auto full = rhs(g, u);
    const auto linear = rhs(g, u, lin);
    const std::size_t n = g.size();
    Field flux(n);
    for (std::size_t j = 0; j < n; ++j) flux[j] = u[j] * u[j] * std::conj(u[g.mirror(j)]);
    const double h = g.spacing();
    double err = 0.0, scale = 0.0;
    for (std::size_t j = 2; j + 2 < n; ++j) {
        const cplx dfx = (-flux[j + 2] + 8.0 * flux[j + 1] - 8.0 * flux[j - 1] + flux[j - 2]) / (12.0 * h);
        const cplx expected = I * dfx;
        err = std::max(err, std::abs(full[j] - linear[j] - expected));
        scale = std::max(scale, std::abs(expected));
    }
    CHECK(err <= 1e-5 * scale);
}

TEST_CASE("zero initial data stays zero") {
    const SpatialGrid g(256, 12.0);
    const auto s = run(Potential(g, Field(g.size(), 0.0)), 0.05);
    CHECK(quad::sup_norm(s.u) == 0.0);
    CHECK(s.t == 0.05);
}

TEST_CASE("linear run matches exact free evolution") {
    const SpatialGrid g(2048, 12.0);
    OracleConfig cfg;
    cfg.nonlinear_enabled = false;
    const double t = 0.25;
    const auto s = run(Potential(g, gaussian(g, 1.0)), t, cfg);
    Field exact(g.size());
    const cplx q = 1.0 + 4.0 * I * t;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.node(j);
        exact[j] = std::exp(-x * x / q) / std::sqrt(q);
    }
    CHECK(rel_l2(g, s.u, exact) <= 1e-8);
}

TEST_CASE("final step lands on t") {
    const SpatialGrid g(512, 12.0);
    OracleConfig cfg;
    cfg.nonlinear_enabled = false;
    cfg.dt = 0.03;
    const double t = 0.1;
    const auto s = run(Potential(g, gaussian(g, 1.0)), t, cfg);
    Field exact(g.size());
    const cplx q = 1.0 + 4.0 * I * t;
    for (std::size_t j = 0; j < g.size(); ++j) exact[j] = std::exp(-g.node(j) * g.node(j) / q) / std::sqrt(q);
    CHECK(rel_l2(g, s.u, exact) <= 1e-10);
}

TEST_CASE("nonlocal mass") {
    const SpatialGrid g(2048, 12.0);
    SUBCASE("real even data gives the integral of u squared") {
        const auto u = gaussian(g, 0.5);
        const cplx m = nonlocal_mass(g, u);
        CHECK(std::abs(m - 0.25 * std::sqrt(std::numbers::pi / 2.0)) <= 1e-12);
    }
    SUBCASE("conserved along the nonlinear flow") {
        const Potential p(g, gaussian(g, 0.095));
        const cplx m0 = nonlocal_mass(g, p.u());
        const auto s = run(p, 0.25);
        CHECK(std::abs(nonlocal_mass(g, s.u) - m0) <= 1e-6 * std::abs(m0));
    }
    SUBCASE("conserved for complex non-symmetric data") {
        const Potential p(g, gaussian(g, cplx(0.06, 0.03), 0.4, 0.9));
        const cplx m0 = nonlocal_mass(g, p.u());
        const auto s = run(p, 0.1);
        CHECK(std::abs(nonlocal_mass(g, s.u) - m0) <= 1e-6 * std::abs(m0));
    }
}

TEST_CASE("frozen spectrum") {
    auto [g, zg] = build_grids(2048, 12.0, 2048, 24.0);
    const Potential p(g, gaussian(g, 0.095));
    SUBCASE("t = 0") {
        const auto r = scattering_invariance_check(p, 0.0, zg);
        CHECK(r.a_deviation <= 1e-14);
        CHECK(r.b2_deviation <= 1e-14);
    }
    SUBCASE("t = 0.1") {
        const auto r = scattering_invariance_check(p, 0.1, zg);
        CHECK(r.a_deviation <= 5e-4);
        CHECK(r.b2_deviation <= 5e-4);
        CHECK(r.d_deviation <= 5e-4);
        CHECK(r.c2_deviation <= 5e-4);
    }
}

TEST_CASE("frozen spectrum deviations shrink under refinement") {
    double prev_a = 0.0, prev_b = 0.0;
    for (int k = 0; k < 2; ++k) {
        const std::size_t n = 1024u << k;
        auto [g, zg] = build_grids(n, 12.0, n, 24.0);
        OracleConfig cfg;
        cfg.dt = 2e-4 / (1 << k);
        const auto r = scattering_invariance_check(Potential(g, gaussian(g, 0.095)), 0.1, zg, cfg);
        if (k == 1) {
            CHECK(prev_a / r.a_deviation >= 3.0);
            CHECK(prev_b / r.b2_deviation >= 3.0);
        }
        prev_a = r.a_deviation;
        prev_b = r.b2_deviation;
    }
}

TEST_CASE("error paths") {
    const SpatialGrid g(256, 12.0);
    SUBCASE("wide data violates edge decay") {
        Field u(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) u[j] = std::exp(-0.05 * g.node(j) * g.node(j));
        CHECK_THROWS_AS(run(Potential(g, u), 0.01), DomainError);
    }
    SUBCASE("non-finite data blows up") {
        auto u = gaussian(g, 0.1);
        u[g.origin()] = std::numeric_limits<double>::quiet_NaN();
        try {
            run(Potential(g, u), 0.01);
            FAIL("expected blow-up");
        } catch (const BlowUpError& e) {
            CHECK(e.last_valid_time() == 0.0);
        }
    }
    SUBCASE("bad arguments") {
        const Potential p(g, gaussian(g, 0.1));
        OracleConfig cfg;
        cfg.dt = 0.0;
        CHECK_THROWS_AS(run(p, 0.01, cfg), ConfigError);
        CHECK_THROWS_AS(run(p, -1.0), PreconditionError);
    }
    SUBCASE("gate is required for the invariance check") {
        auto [x, z] = build_grids(256, 12.0, 256, 24.0);
        CHECK_THROWS_AS(scattering_invariance_check(Potential(x, gaussian(x, 0.5)), 0.0, z), GateError);
    }
}
