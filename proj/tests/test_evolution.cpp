#include "doctest.h"

#include "ndnls/evolution.hpp"

#include <cmath>

using namespace ndnls;

namespace {

ScatteringData sample_data() {
    auto [x, z] = build_grids(512, 12.0, 256, 24.0);
    Field u(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double s = x.node(j) - 0.4;
        u[j] = cplx(0.07, 0.02) * std::exp(-s * s) * std::exp(I * 0.8 * x.node(j));
    }
    return scattering_data(Potential(x, u), z);
}

double max_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

} // namespace

TEST_CASE("t = 0 is the identity") {
    const auto sd = sample_data();
    const auto r = reflection(sd);
    const auto e = evolve_scattering(sd, 0.0);
    CHECK(e.B2 == sd.B2);
    CHECK(e.C2 == sd.C2);
    const auto er = evolve_reflection(r, 0.0);
    CHECK(er.r_plus == r.r_plus);
    CHECK(er.r_minus == r.r_minus);
}

TEST_CASE("moduli, frozen fields and the group law") {
    const auto sd = sample_data();
    const auto r = reflection(sd);
    const auto e = evolve_scattering(sd, 0.37);
    CHECK(e.a == sd.a);
    CHECK(e.d == sd.d);
    CHECK(e.a_inf == sd.a_inf);
    CHECK(e.d_inf == sd.d_inf);
    CHECK(unimodularity_defect(e) == doctest::Approx(unimodularity_defect(sd)).epsilon(1e-6));

    const auto er = evolve_reflection(r, 0.37);
    for (std::size_t m = 0; m < r.grid.size(); ++m) {
        CHECK(std::abs(std::abs(er.r_plus[m]) - std::abs(r.r_plus[m])) <= 1e-15 * std::abs(r.r_plus[m]));
        CHECK(std::abs(std::abs(er.r_minus[m]) - std::abs(r.r_minus[m])) <= 1e-15 * std::abs(r.r_minus[m]));
        // r- rotates by exp(4 i z^2 t).
        const double z = r.grid.node(m);
        const cplx expect = r.r_minus[m] * std::exp(4.0 * I * z * z * 0.37);
        CHECK(std::abs(er.r_minus[m] - expect) <= 1e-14 * std::abs(r.r_minus[m]));
    }
    CHECK(er.sup_r1 == r.sup_r1);
    CHECK(er.sup_r2 == r.sup_r2);

    const auto twice = evolve_reflection(evolve_reflection(r, 0.1), 0.27);
    CHECK(max_diff(twice.r_minus, er.r_minus) <= 1e-15);
    CHECK(max_diff(twice.r_plus, er.r_plus) <= 1e-15);

    const auto via_data = reflection(e);
    CHECK(max_diff(via_data.r_minus, er.r_minus) <= 1e-15);
    CHECK(max_diff(via_data.r_plus, er.r_plus) <= 1e-15);
}
