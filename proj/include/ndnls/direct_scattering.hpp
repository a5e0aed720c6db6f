#pragma once

#include "ndnls/grid.hpp"
#include "ndnls/model.hpp"

#include <vector>

namespace ndnls {

// mu solves the Q1 system and is normalized to e1, nu solves the Q2 system and
// is normalized to e2; the sign says which end of the line anchors it.
enum class JostKind { mu_minus, mu_plus, nu_minus, nu_plus };

// Both schemes integrate the exponential part exactly and interpolate Q f
// polynomially: linearly (second order) or by the cubic through the last four
// nodes (fourth order, implicit only in the new node).
enum class JostScheme { trapezoid, adams_moulton4 };

struct JostSolution {
    JostKind which = JostKind::mu_minus;
    double z = 0.0;
    Vec2Field values;
    // Largest defect of the discrete product-integration equations.
    double residual = 0.0;
};

JostSolution solve_jost(const Potential& p, const PotentialMatrices& q, double z, JostKind which,
                        JostScheme scheme = JostScheme::adams_moulton4);
JostSolution solve_jost(const Potential& p, double z, JostKind which,
                        JostScheme scheme = JostScheme::adams_moulton4);

struct ScatteringData {
    SpectralGrid grid;
    Field a, d;
    Field B2; // 2ik b(k)
    Field C2; // 2ik c(k)
    cplx a_inf{1.0, 0.0};
    cplx d_inf{1.0, 0.0};
};

// Wronskian assembly from the four Jost solutions at x = 0.
ScatteringData scattering_data(const Potential& p, const SpectralGrid& g,
                               JostScheme scheme = JostScheme::adams_moulton4);

// max_m |a d + B2 C2 / (4z) - 1|
double unimodularity_defect(const ScatteringData& sd);

// a and d from their integral representations over the full line, given mu_- and
// mu_+ on the spatial grid.
cplx a_from_integral(const Potential& p, const JostSolution& mu_minus);
cplx d_from_integral(const Potential& p, const JostSolution& mu_plus);

// Normalized k-plane Jost function: phi for the mu family, psi for the nu family.
Vec2Field kplane_jost(const Potential& p, cplx k, JostKind which);

// Sup-norm gap between the k-plane solutions (RK4) and the mapped z-plane
// solutions, over both the mu_- and nu_+ families.
// Refuses (DomainError) when |k|^2 > z_max or the RK4 step is unstable.
double kplane_crosscheck(const Potential& p, cplx k, double z_max = 24.0,
                         JostScheme scheme = JostScheme::adams_moulton4);

struct ReflectionData {
    SpectralGrid grid;
    Field r_plus;  // C2 / (4z d)
    Field r_minus; // B2 / a
    std::vector<double> r1_abs;
    std::vector<double> r2_abs;
    double sup_r1 = 0.0;
    double sup_r2 = 0.0;
};

inline constexpr double kMinScatteringModulus = 0.1;

ReflectionData reflection(const ScatteringData& sd);

double min_abs(const Field& f);
// sup_z |b| with |b| = |B2| / (2 sqrt|z|).
double sup_abs_b(const ScatteringData& sd);

} // namespace ndnls
