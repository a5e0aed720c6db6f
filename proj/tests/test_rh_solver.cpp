#include "doctest.h"

#include "ndnls/cauchy.hpp"
#include "ndnls/error.hpp"
#include "ndnls/quadrature.hpp"
#include "ndnls/rh_solver.hpp"

#include <cmath>

using namespace ndnls;

namespace {

ReflectionData gaussian_reflection(std::size_t n, double A) {
    auto [x, z] = build_grids(n, 12.0, n, 24.0);
    Field u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = A * std::exp(-x.node(j) * x.node(j));
    return reflection(scattering_data(Potential(x, u), z));
}

ReflectionData scaled(const ReflectionData& r, double s) {
    ReflectionData out = r;
    for (auto& c : out.r_plus) c *= s;
    for (auto& c : out.r_minus) c *= s;
    return out;
}

ReflectionData zero_reflection(std::size_t m) {
    SpectralGrid g(m, 24.0);
    return ReflectionData{g, Field(m), Field(m), std::vector<double>(m), std::vector<double>(m)};
}

double max_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

} // namespace

TEST_CASE("zero reflection gives the identity pair") {
    const auto r = zero_reflection(256);
    for (double x : {-2.0, 0.0, 3.0}) {
        const auto bp = solve_boundary_pair(r, x);
        CHECK(bp.residual == 0.0);
        CHECK(bp.iterations == 0);
        for (std::size_t m = 0; m < 256; ++m) {
            CHECK(bp.m.first[m] == cplx(1.0));
            CHECK(bp.m.second[m] == cplx(0.0));
            CHECK(bp.n.first[m] == cplx(0.0));
            CHECK(bp.n.second[m] == cplx(1.0));
        }
    }
    const auto d = solve_scalar_delta(r);
    for (std::size_t m = 0; m < 256; ++m) {
        CHECK(d.delta_plus[m] == cplx(1.0));
        CHECK(d.delta_minus[m] == cplx(1.0));
    }
    const auto rd = deltify(r, d);
    CHECK(quad::sup_norm(rd.r_delta_plus) == 0.0);
    CHECK(quad::sup_norm(rd.r_delta_minus) == 0.0);
    CHECK(solve_boundary_pair_delta(rd, -1.0).residual == 0.0);
}

TEST_CASE("first Neumann term for small data") {
    const auto base = gaussian_reflection(1024, 0.095);
    const double x = 0.3;
    auto defects = [&](double eps) {
        const auto r = scaled(base, eps / 0.095);
        const auto bp = solve_boundary_pair(r, x);
        const auto d = solve_scalar_delta(r);
        const auto rd = deltify(r, d);
        const auto bd = solve_boundary_pair_delta(rd, x);
        const std::size_t M = r.grid.size();
        Field fm(M), fn(M), gm(M), gn(M);
        for (std::size_t j = 0; j < M; ++j) {
            const cplx e = std::exp(2.0 * I * r.grid.node(j) * x);
            fm[j] = r.r_minus[j] * e;
            fn[j] = r.r_plus[j] / e;
            gm[j] = rd.r_delta_minus[j] * e;
            gn[j] = rd.r_delta_plus[j] / e;
        }
        // Plain: m2 ~ C-(r- e^{2izx}), n1 ~ C+(r+ e^{-2izx}); deltified swaps C+ and C-.
        const double plain = std::max(max_diff(bp.m.second, cauchy::minus_line(fm, kDefaultCauchyPadding)), max_diff(bp.n.first, cauchy::plus_line(fn, kDefaultCauchyPadding)));
        const double delta = std::max(max_diff(bd.m.second, cauchy::plus_line(gm, kDefaultCauchyPadding)), max_diff(bd.n.first, cauchy::minus_line(gn, kDefaultCauchyPadding)));
        return std::pair{plain, delta};
    };
    const auto [p1, d1] = defects(1e-3);
    const auto [p2, d2] = defects(2e-3);
    // The next Neumann term is cubic in eps for these components.
    CHECK(p1 < 1e-6);
    CHECK(d1 < 1e-6);
    CHECK(p2 / p1 > 3.5);
    CHECK(d2 / d1 > 3.5);
}

TEST_CASE("gate-passing Gaussian: certificates, contraction and analyticity") {
    const auto r = gaussian_reflection(2048, 0.095);
    const double bound = r.sup_r1 * r.sup_r2 + 0.05;
    const auto d = solve_scalar_delta(r);
    const auto rd = deltify(r, d);
    for (double x : {0.0, 0.5, 2.0, 6.0}) {
        const auto bp = solve_boundary_pair(r, x);
        CHECK(bp.residual <= 1e-10);
        CHECK(bp.iterations <= 40);
        CHECK(bp.contraction <= bound);
        CHECK_FALSE(bp.used_krylov);
        CHECK(boundary_pair_defect(bp, r.r_plus, r.r_minus, r.grid) <= 1e-10);
        CHECK(frequency_leakage(bp) < 5e-3);
    }
    for (double x : {-0.0, -1.0, -3.0, -6.0}) {
        const auto bd = solve_boundary_pair_delta(rd, x);
        CHECK(bd.residual <= 1e-10);
        CHECK(bd.iterations <= 40);
        CHECK(bd.contraction <= bound);
        CHECK(boundary_pair_defect(bd, rd.r_delta_plus, rd.r_delta_minus, rd.grid) <= 1e-10);
        CHECK(frequency_leakage(bd) < 5e-3);
    }
}

TEST_CASE("grid-periodic operators: boundary values are exactly one-sided") {
    const auto r = gaussian_reflection(1024, 0.095);
    const auto rd = deltify(r, solve_scalar_delta(r, 1));
    for (double x : {0.0, 1.5}) {
        const auto bp = solve_boundary_pair(r, x, 1e-12, 200, 1);
        CHECK(bp.residual <= 1e-12);
        CHECK(frequency_leakage(bp) < 1e-11);
        const auto bd = solve_boundary_pair_delta(rd, -x, 1e-12, 200, 1);
        CHECK(frequency_leakage(bd) < 1e-11);
    }
}

TEST_CASE("Krylov fallback takes over when the alternation diverges") {
    const auto r = scaled(gaussian_reflection(1024, 0.095), 30.0);
    const auto bp = solve_boundary_pair(r, 0.0);
    CHECK(bp.used_krylov);
    CHECK(bp.residual <= 1e-10);
    CHECK(boundary_pair_defect(bp, r.r_plus, r.r_minus, r.grid) <= 1e-10);

    bool threw = false;
    try {
        solve_boundary_pair(r, 0.0, 1e-10, 6);
    } catch (const ConvergenceError& e) {
        threw = true;
        CHECK(e.residual() > 1e-10);
        CHECK(e.contraction() > 1.0);
    }
    CHECK(threw);
}

TEST_CASE("scalar RHP: jump, edges and deltified product") {
    const auto r = gaussian_reflection(2048, 0.095);
    const auto d = solve_scalar_delta(r);
    const std::size_t M = r.grid.size();
    double jump = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        jump = std::max(jump, std::abs(d.delta_plus[j] - d.delta_minus[j] * (1.0 + r.r_plus[j] * r.r_minus[j])));
    }
    CHECK(jump <= 1e-8);
    for (const auto* f : {&d.delta_plus, &d.delta_minus}) {
        CHECK(std::abs(f->front() - 1.0) <= 1e-3);
        CHECK(std::abs(f->back() - 1.0) <= 1e-3);
        CHECK(min_abs(*f) > 0.0);
    }
    const auto rd = deltify(r, d);
    double sup_dd = 0.0, inf_dd = 1e300;
    for (std::size_t j = 0; j < M; ++j) {
        const cplx prod = rd.r_delta_plus[j] * rd.r_delta_minus[j];
        const cplx ref = r.r_plus[j] * r.r_minus[j];
        CHECK(std::abs(prod - ref) <= 1e-14 * std::abs(ref));
        const double dd = std::abs(d.delta_plus[j] * d.delta_minus[j]);
        sup_dd = std::max(sup_dd, dd);
        inf_dd = std::min(inf_dd, dd);
    }
    CHECK(quad::sup_norm(rd.r_delta_plus) <= sup_dd * quad::sup_norm(r.r_plus) * (1 + 1e-12));
    CHECK(quad::sup_norm(rd.r_delta_minus) <= quad::sup_norm(r.r_minus) / inf_dd * (1 + 1e-12));
}

TEST_CASE("branch safety") {
    auto r = zero_reflection(64);
    r.r_plus[10] = 0.97;
    r.r_minus[10] = -0.99;
    CHECK_THROWS_AS(solve_scalar_delta(r), BranchError);
    r.r_plus[10] = 1.1;
    r.r_minus[10] = 1.0;
    CHECK_THROWS_AS(solve_scalar_delta(r), BranchError);
    r.r_plus[10] = 0.5;
    r.r_minus[10] = 0.5;
    CHECK_NOTHROW(solve_scalar_delta(r));
    CHECK(to_string(Flavor::plain) == "plain");
    CHECK(to_string(Flavor::deltified) == "deltified");
}
