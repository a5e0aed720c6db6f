#include "ndnls/model.hpp"

#include "ndnls/error.hpp"
#include "ndnls/fft.hpp"
#include "ndnls/quadrature.hpp"

#include <cmath>

namespace ndnls {
namespace {

constexpr std::size_t kGateOversampling = 8;

double oversampled_l1(const Field& f, double h) {
    const Field fine = fft::upsample(f, kGateOversampling);
    double s = 0.0;
    for (const auto& c : fine) s += std::abs(c);
    return s * h / static_cast<double>(kGateOversampling);
}

GateReport make_report(double value) {
    GateReport r;
    r.value = value;
    r.pass = value <= r.threshold;
    return r;
}

} // namespace

Field nonlocal_conjugate(const SpatialGrid& grid, const Field& u) {
    Field v(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) v[j] = I * std::conj(u[grid.mirror(j)]);
    return v;
}

Field flip(const SpatialGrid& grid, const Field& f) {
    Field out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = f[grid.mirror(j)];
    return out;
}

Potential::Potential(SpatialGrid grid, Field u) : grid_(grid), u_(std::move(u)) {
    if (u_.size() != grid_.size()) {
        throw PreconditionError("potential sample count does not match the spatial grid");
    }
    v_ = nonlocal_conjugate(grid_, u_);
}

PotentialMatrices build_potential_matrices(const Potential& p) {
    const auto& u = p.u();
    const auto& v = p.v();
    const double period = 2.0 * p.grid().half_extent();
    const Field ux = fft::derivative(u, period);
    const Field vx = fft::derivative(v, period);
    const cplx c = 1.0 / (2.0 * I);
    const std::size_t n = u.size();

    PotentialMatrices q;
    auto init = [n](Matrix2Field& m) {
        m.a11.resize(n);
        m.a12.resize(n);
        m.a21.resize(n);
        m.a22.resize(n);
    };
    init(q.q1);
    init(q.q2);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx uv = u[j] * v[j];
        q.q1.a11[j] = -c * uv;
        q.q1.a12[j] = c * u[j];
        q.q1.a21[j] = c * (2.0 * I * vx[j] - uv * v[j]);
        q.q1.a22[j] = c * uv;

        q.q2.a11[j] = -c * uv;
        q.q2.a12[j] = c * (-2.0 * I * ux[j] - uv * u[j]);
        q.q2.a21[j] = c * v[j];
        q.q2.a22[j] = c * uv;
    }
    return q;
}

GateReport gate_functional(const Potential& p) {
    const auto& u = p.u();
    const auto& v = p.v();
    const double h = p.grid().spacing();
    const Field vx = fft::derivative(v, 2.0 * p.grid().half_extent());
    Field uv2(u.size()), uv(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        uv[j] = u[j] * v[j];
        uv2[j] = uv[j] * v[j];
    }
    const double value = 0.5 * (2.0 * oversampled_l1(vx, h) + oversampled_l1(uv2, h) +
                                2.0 * oversampled_l1(uv, h) + oversampled_l1(u, h));
    return make_report(value);
}

GateReport gate_functional_q2(const Potential& p) {
    const auto& u = p.u();
    const auto& v = p.v();
    const double h = p.grid().spacing();
    const Field ux = fft::derivative(u, 2.0 * p.grid().half_extent());
    Field u2v(u.size()), uv(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        uv[j] = u[j] * v[j];
        u2v[j] = uv[j] * u[j];
    }
    const double value = 0.5 * (2.0 * oversampled_l1(ux, h) + oversampled_l1(u2v, h) +
                                2.0 * oversampled_l1(uv, h) + oversampled_l1(v, h));
    return make_report(value);
}

SobolevNorms sobolev_norms(const SpatialGrid& grid, const Field& u) {
    const double period = 2.0 * grid.half_extent();
    const double h = grid.spacing();
    const Field ux = fft::derivative(u, period, 1);
    const Field uxx = fft::derivative(u, period, 2);
    Field weighted(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double x = grid.node(j);
        weighted[j] = std::sqrt(1.0 + x * x) * ux[j];
    }
    SobolevNorms n;
    n.h2 = quad::l2_norm(u, h) + quad::l2_norm(ux, h) + quad::l2_norm(uxx, h);
    n.h11 = quad::l2_norm(weighted, h);
    return n;
}

} // namespace ndnls
