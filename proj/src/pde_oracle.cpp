#include "ndnls/pde_oracle.hpp"

#include "ndnls/error.hpp"
#include "ndnls/evolution.hpp"
#include "ndnls/fft.hpp"
#include "ndnls/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ndnls {
namespace {

struct Spectral {
    std::vector<double> xi;
    std::vector<bool> keep;
};

Spectral wavenumbers(const SpatialGrid& g, double dealias) {
    const std::size_t n = g.size();
    const double base = std::numbers::pi / g.half_extent();
    Spectral s{std::vector<double>(n), std::vector<bool>(n)};
    const double cutoff = dealias * static_cast<double>(n / 2);
    for (std::size_t k = 0; k < n; ++k) {
        const long kk = fft::signed_bin(k, n);
        s.xi[k] = base * static_cast<double>(kk);
        s.keep[k] = std::abs(static_cast<double>(kk)) < cutoff;
    }
    return s;
}

// Spectrum of the nonlinear term i d_x(u^2 flip(conj u)), dealiased, from physical u.
Field nonlinear_hat(const SpatialGrid& g, const Field& u, const Spectral& sp) {
    const std::size_t n = u.size();
    Field uh = u;
    fft::transform(uh, fft::Direction::forward);
    // Truncate the input so the cubic product aliases only into discarded modes.
    for (std::size_t k = 0; k < n; ++k)
        if (!sp.keep[k]) uh[k] = 0.0;
    Field uf = uh;
    fft::transform(uf, fft::Direction::backward);
    for (auto& c : uf) c /= static_cast<double>(n);
    Field flux(n);
    for (std::size_t j = 0; j < n; ++j) flux[j] = uf[j] * uf[j] * std::conj(uf[g.mirror(j)]);
    fft::transform(flux, fft::Direction::forward);
    for (std::size_t k = 0; k < n; ++k) flux[k] = sp.keep[k] ? I * (I * sp.xi[k]) * flux[k] : cplx(0.0);
    return flux;
}

double edge_ratio(const Field& u) {
    const double sup = quad::sup_norm(u);
    if (sup == 0.0) return 0.0;
    return std::max(std::abs(u.front()), std::abs(u.back())) / sup;
}

} // namespace

Field rhs(const SpatialGrid& g, const Field& u, const OracleConfig& cfg) {
    const std::size_t n = u.size();
    const auto sp = wavenumbers(g, cfg.dealias_fraction);
    Field uh = u;
    fft::transform(uh, fft::Direction::forward);
    Field out(n);
    const Field nl = cfg.nonlinear_enabled ? nonlinear_hat(g, u, sp) : Field(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) out[k] = -I * sp.xi[k] * sp.xi[k] * uh[k] + nl[k];
    fft::transform(out, fft::Direction::backward);
    for (auto& c : out) c /= static_cast<double>(n);
    return out;
}

OracleState run(const Potential& u0, double t, const OracleConfig& cfg) {
    if (!(t >= 0.0)) throw PreconditionError("oracle time must be nonnegative");
    if (!(cfg.dt > 0.0)) throw ConfigError("oracle dt must be positive");
    const auto& g = u0.grid();
    const std::size_t n = g.size();
    const auto sp = wavenumbers(g, cfg.dealias_fraction);

    if (edge_ratio(u0.u()) > cfg.edge_tolerance) {
        throw DomainError("initial data not decayed at the domain edges");
    }

    if (t == 0.0) return {g, u0.u(), 0.0};

    // v = e^{i xi^2 s} uhat removes the stiff dispersion; RK4 on v over each step.
    Field uh = u0.u();
    fft::transform(uh, fft::Direction::forward);
    auto physical = [&](const Field& hat) {
        Field f = hat;
        fft::transform(f, fft::Direction::backward);
        for (auto& c : f) c /= static_cast<double>(n);
        return f;
    };
    auto nl = [&](const Field& hat) {
        return cfg.nonlinear_enabled ? nonlinear_hat(g, physical(hat), sp) : Field(n, 0.0);
    };

    const auto steps = static_cast<std::size_t>(std::ceil(t / cfg.dt - 1e-9));
    double time = 0.0;
    Field k1, k2, k3, k4, tmp(n);
    for (std::size_t s = 0; s < steps; ++s) {
        const double h = std::min(cfg.dt, t - time);
        // Half- and full-step linear propagators e^{-i xi^2 tau}.
        Field eh(n), ef(n);
        for (std::size_t k = 0; k < n; ++k) {
            eh[k] = std::exp(-I * sp.xi[k] * sp.xi[k] * (0.5 * h));
            ef[k] = eh[k] * eh[k];
        }
        k1 = nl(uh);
        for (std::size_t k = 0; k < n; ++k) tmp[k] = eh[k] * (uh[k] + 0.5 * h * k1[k]);
        k2 = nl(tmp);
        for (std::size_t k = 0; k < n; ++k) tmp[k] = eh[k] * uh[k] + 0.5 * h * k2[k];
        k3 = nl(tmp);
        for (std::size_t k = 0; k < n; ++k) tmp[k] = ef[k] * uh[k] + h * eh[k] * k3[k];
        k4 = nl(tmp);
        for (std::size_t k = 0; k < n; ++k) {
            uh[k] = ef[k] * uh[k] + h / 6.0 * (ef[k] * k1[k] + 2.0 * eh[k] * (k2[k] + k3[k]) + k4[k]);
        }
        for (const auto& c : uh) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw BlowUpError("oracle solution became non-finite", time);
            }
        }
        time += h;
        if ((s + 1) % 100 == 0 || s + 1 == steps) {
            if (edge_ratio(physical(uh)) > cfg.edge_tolerance) {
                throw DomainError("solution reached the domain edge at t = " + std::to_string(time));
            }
        }
    }
    return {g, physical(uh), t};
}

cplx nonlocal_mass(const SpatialGrid& g, const Field& u) {
    Field f(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) f[j] = u[j] * std::conj(u[g.mirror(j)]);
    return quad::trapezoid(f, g.spacing());
}

InvarianceReport scattering_invariance_check(const Potential& u0, double t, const SpectralGrid& zg,
                                             const OracleConfig& cfg) {
    const auto gate = gate_functional(u0);
    if (!gate.pass) throw GateError("gate functional exceeds the threshold", gate.value);
    const auto sd0 = evolve_scattering(scattering_data(u0, zg), t);
    const auto state = run(u0, t, cfg);
    const auto sdt = scattering_data(Potential(u0.grid(), state.u), zg);
    InvarianceReport rep;
    rep.t = t;
    for (std::size_t m = 0; m < zg.size(); ++m) {
        rep.a_deviation = std::max(rep.a_deviation, std::abs(sdt.a[m] - sd0.a[m]));
        rep.d_deviation = std::max(rep.d_deviation, std::abs(sdt.d[m] - sd0.d[m]));
        rep.b2_deviation = std::max(rep.b2_deviation, std::abs(sdt.B2[m] - sd0.B2[m]));
        rep.c2_deviation = std::max(rep.c2_deviation, std::abs(sdt.C2[m] - sd0.C2[m]));
    }
    return rep;
}

} // namespace ndnls
