#pragma once

#include "ndnls/direct_scattering.hpp"
#include "ndnls/model.hpp"

namespace ndnls {

struct OracleConfig {
    double dt = 1e-4;
    double dealias_fraction = 2.0 / 3.0;
    bool nonlinear_enabled = true;
    // Edge samples must stay below this fraction of the sup norm.
    double edge_tolerance = 1e-8;
};

struct OracleState {
    SpatialGrid grid;
    Field u;
    double t = 0.0;
};

// F(u) = i u_xx + i d_x(u^2 flip(conj u)), spectral derivatives, 2/3-rule dealiasing
// of the nonlinear flux.
Field rhs(const SpatialGrid& g, const Field& u, const OracleConfig& cfg = {});

// Integrating-factor RK4 to time t; the last step is shortened to land on t.
OracleState run(const Potential& u0, double t, const OracleConfig& cfg = {});

// int u(x) conj(u(-x)) dx by the trapezoid rule.
cplx nonlocal_mass(const SpatialGrid& g, const Field& u);

struct InvarianceReport {
    double t = 0.0;
    double a_deviation = 0.0;  // max_z |a(t,z) - a(0,z)|
    double b2_deviation = 0.0; // max_z |B2(t,z) - B2(0,z) e^{4iz^2 t}|
    double d_deviation = 0.0;
    double c2_deviation = 0.0;
};

InvarianceReport scattering_invariance_check(const Potential& u0, double t, const SpectralGrid& zg,
                                             const OracleConfig& cfg = {});

} // namespace ndnls
