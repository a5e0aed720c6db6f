#include "ndnls/direct_scattering.hpp"

#include "ndnls/error.hpp"
#include "ndnls/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace ndnls {
namespace {

// Moments I_k(q) = int_0^1 e^{q(1-t)} t^k dt, k = 0..3.
std::array<cplx, 4> exp_moments(cplx q) {
    std::array<cplx, 4> m{};
    if (std::abs(q) < 1.0) {
        // I_k = sum_n q^n k! / (n+k+1)!
        for (int k = 0; k < 4; ++k) {
            double kfact = 1.0;
            for (int i = 2; i <= k; ++i) kfact *= i;
            cplx term = 1.0;
            double denom = kfact * (k + 1); // (k+1)!
            cplx sum = 0.0;
            for (int n = 0; n < 30; ++n) {
                sum += term / denom;
                term *= q;
                denom *= static_cast<double>(n + k + 2);
            }
            m[k] = sum * kfact;
        }
    } else {
        m[0] = (std::exp(q) - 1.0) / q;
        for (int k = 1; k < 4; ++k) m[k] = (static_cast<double>(k) * m[k - 1] - 1.0) / q;
    }
    return m;
}

// Product-integration weights for f' = lambda f + g over a step s: with g
// interpolated through the stencil nodes t_i (in units of s, t = 1 the new node),
// f1 = e^{q} f0 + sum_i w_i g_i, q = lambda s.
struct ComponentWeights {
    cplx e;
    std::array<cplx, 4> w{}; // trapezoid: w[0] at t=0, w[1] at t=1
                             // Adams-Moulton 4: t = -2, -1, 0, 1
};

ComponentWeights trapezoid_weights(cplx lambda, double s) {
    const cplx q = lambda * s;
    const auto I = exp_moments(q);
    ComponentWeights c;
    c.e = std::exp(q);
    c.w[0] = s * (I[0] - I[1]);
    c.w[1] = s * I[1];
    return c;
}

ComponentWeights am4_weights(cplx lambda, double s) {
    const cplx q = lambda * s;
    const auto I = exp_moments(q);
    // Lagrange basis on {-2, -1, 0, 1} in monomial form.
    ComponentWeights c;
    c.e = std::exp(q);
    c.w[0] = s * (-(I[3] - I[1]) / 6.0);
    c.w[1] = s * ((I[3] + I[2] - 2.0 * I[1]) / 2.0);
    c.w[2] = s * (-(I[3] + 2.0 * I[2] - I[1] - 2.0 * I[0]) / 2.0);
    c.w[3] = s * ((I[3] + 3.0 * I[2] + 2.0 * I[1]) / 6.0);
    return c;
}

struct Anchor {
    bool from_left;
    cplx c1, c2;       // boundary vector
    cplx lam1, lam2;   // diagonal of the exponent
    bool use_q1;
};

Anchor anchor_for(JostKind which, double z) {
    const cplx mu_lam = 2.0 * I * z;
    switch (which) {
    case JostKind::mu_minus: return {true, 1.0, 0.0, 0.0, mu_lam, true};
    case JostKind::mu_plus: return {false, 1.0, 0.0, 0.0, mu_lam, true};
    case JostKind::nu_minus: return {true, 0.0, 1.0, -mu_lam, 0.0, false};
    case JostKind::nu_plus: return {false, 0.0, 1.0, -mu_lam, 0.0, false};
    }
    return {true, 1.0, 0.0, 0.0, 0.0, true};
}

// Marches from the anchoring edge up to (and including) node `stop`. Returns the
// defect of the discrete equations. Only nodes between the edge and `stop` are written.
double march(const Matrix2Field& q, const Anchor& an, double h, std::size_t stop, JostScheme scheme,
             Vec2Field& out) {
    const std::size_t n = q.a11.size();
    const double s = an.from_left ? h : -h;
    const auto t1 = trapezoid_weights(an.lam1, s);
    const auto t2 = trapezoid_weights(an.lam2, s);
    const auto a1 = am4_weights(an.lam1, s);
    const auto a2 = am4_weights(an.lam2, s);

    // g = Q f at the last three accepted nodes, newest last.
    std::array<cplx, 3> g1{}, g2{};
    std::size_t j = an.from_left ? 0 : n - 1;
    out.first[j] = an.c1;
    out.second[j] = an.c2;
    double defect = 0.0;
    for (std::size_t taken = 0; j != stop; ++taken) {
        const std::size_t k = an.from_left ? j + 1 : j - 1;
        const cplx f1 = out.first[j], f2 = out.second[j];
        g1 = {g1[1], g1[2], q.a11[j] * f1 + q.a12[j] * f2};
        g2 = {g2[1], g2[2], q.a21[j] * f1 + q.a22[j] * f2};
        // Start-up steps use the two-point rule; the potential is negligible there.
        const bool am = scheme == JostScheme::adams_moulton4 && taken >= 2;
        cplx r1, r2, w1, w2;
        if (am) {
            r1 = a1.e * f1 + a1.w[0] * g1[0] + a1.w[1] * g1[1] + a1.w[2] * g1[2];
            r2 = a2.e * f2 + a2.w[0] * g2[0] + a2.w[1] * g2[1] + a2.w[2] * g2[2];
            w1 = a1.w[3];
            w2 = a2.w[3];
        } else {
            r1 = t1.e * f1 + t1.w[0] * g1[2];
            r2 = t2.e * f2 + t2.w[0] * g2[2];
            w1 = t1.w[1];
            w2 = t2.w[1];
        }
        // (I - diag(w) Q_k) f_k = r
        const cplx m11 = 1.0 - w1 * q.a11[k], m12 = -w1 * q.a12[k];
        const cplx m21 = -w2 * q.a21[k], m22 = 1.0 - w2 * q.a22[k];
        const cplx det = m11 * m22 - m12 * m21;
        const cplx n1 = (m22 * r1 - m12 * r2) / det;
        const cplx n2 = (m11 * r2 - m21 * r1) / det;
        out.first[k] = n1;
        out.second[k] = n2;
        const cplx e1 = n1 - r1 - w1 * (q.a11[k] * n1 + q.a12[k] * n2);
        const cplx e2 = n2 - r2 - w2 * (q.a21[k] * n1 + q.a22[k] * n2);
        defect = std::max({defect, std::abs(e1), std::abs(e2)});
        j = k;
    }
    return defect;
}

struct OriginValues {
    cplx mm1, mm2, mp1, mp2, nm1, nm2, np1, np2;
};

} // namespace

JostSolution solve_jost(const Potential& p, const PotentialMatrices& q, double z, JostKind which,
                        JostScheme scheme) {
    const Anchor an = anchor_for(which, z);
    const std::size_t n = p.grid().size();
    JostSolution sol;
    sol.which = which;
    sol.z = z;
    sol.values = Vec2Field(n);
    const std::size_t stop = an.from_left ? n - 1 : 0;
    sol.residual = march(an.use_q1 ? q.q1 : q.q2, an, p.grid().spacing(), stop, scheme, sol.values);
    return sol;
}

JostSolution solve_jost(const Potential& p, double z, JostKind which, JostScheme scheme) {
    return solve_jost(p, build_potential_matrices(p), z, which, scheme);
}

ScatteringData scattering_data(const Potential& p, const SpectralGrid& g, JostScheme scheme) {
    const auto q = build_potential_matrices(p);
    const std::size_t n = p.grid().size();
    const std::size_t o = p.grid().origin();
    const double h = p.grid().spacing();
    const cplx u0 = p.u_at(o), v0 = p.v_at(o);

    ScatteringData sd{g, Field(g.size()), Field(g.size()), Field(g.size()), Field(g.size())};
    Vec2Field work(n);
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double z = g.node(m);
        auto at_origin = [&](JostKind which, cplx& f1, cplx& f2) {
            const Anchor an = anchor_for(which, z);
            march(an.use_q1 ? q.q1 : q.q2, an, h, o, scheme, work);
            f1 = work.first[o];
            f2 = work.second[o];
        };
        OriginValues w;
        at_origin(JostKind::mu_minus, w.mm1, w.mm2);
        at_origin(JostKind::mu_plus, w.mp1, w.mp2);
        at_origin(JostKind::nu_minus, w.nm1, w.nm2);
        at_origin(JostKind::nu_plus, w.np1, w.np2);

        const double c = 1.0 / (4.0 * z);
        sd.a[m] = w.mm1 * w.np2 + c * (w.mm2 - v0 * w.mm1) * (w.np1 + u0 * w.np2);
        sd.d[m] = w.mp1 * w.nm2 + c * (w.mp2 - v0 * w.mp1) * (w.nm1 + u0 * w.nm2);
        sd.B2[m] = w.mp1 * w.mm2 - w.mp2 * w.mm1;
        sd.C2[m] = w.nm1 * w.np2 - w.nm2 * w.np1;
    }

    Field uv(n);
    for (std::size_t j = 0; j < n; ++j) uv[j] = p.u_at(j) * p.v_at(j);
    const cplx integral = quad::trapezoid(uv, h);
    sd.a_inf = std::exp(-integral / (2.0 * I));
    sd.d_inf = 1.0 / sd.a_inf;
    return sd;
}

double unimodularity_defect(const ScatteringData& sd) {
    double worst = 0.0;
    for (std::size_t m = 0; m < sd.grid.size(); ++m) {
        const double z = sd.grid.node(m);
        const cplx lhs = sd.a[m] * sd.d[m] + sd.B2[m] * sd.C2[m] / (4.0 * z);
        worst = std::max(worst, std::abs(lhs - 1.0));
    }
    return worst;
}

cplx a_from_integral(const Potential& p, const JostSolution& mu_minus) {
    if (mu_minus.which != JostKind::mu_minus) throw PreconditionError("a_from_integral needs mu_-");
    const std::size_t n = p.grid().size();
    Field f(n);
    for (std::size_t j = 0; j < n; ++j) {
        f[j] = p.u_at(j) * p.v_at(j) * mu_minus.values.first[j] - p.u_at(j) * mu_minus.values.second[j];
    }
    return 1.0 - quad::trapezoid(f, p.grid().spacing()) / (2.0 * I);
}

cplx d_from_integral(const Potential& p, const JostSolution& mu_plus) {
    if (mu_plus.which != JostKind::mu_plus) throw PreconditionError("d_from_integral needs mu_+");
    const std::size_t n = p.grid().size();
    Field f(n);
    for (std::size_t j = 0; j < n; ++j) {
        f[j] = p.u_at(j) * p.v_at(j) * mu_plus.values.first[j] - p.u_at(j) * mu_plus.values.second[j];
    }
    return 1.0 + quad::trapezoid(f, p.grid().spacing()) / (2.0 * I);
}

Vec2Field kplane_jost(const Potential& p, cplx k, JostKind which) {
    const auto& grid = p.grid();
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    const cplx k2 = k * k;
    const bool mu = which == JostKind::mu_minus || which == JostKind::mu_plus;
    const bool from_left = which == JostKind::mu_minus || which == JostKind::nu_minus;
    // phi' = diag(0, 2ik^2) phi + k [[0,u],[v,0]] phi; psi' = diag(-2ik^2, 0) psi + ...
    const cplx l1 = mu ? 0.0 : -2.0 * I * k2;
    const cplx l2 = mu ? 2.0 * I * k2 : 0.0;

    auto rhs = [&](std::size_t j, cplx y1, cplx y2, cplx& d1, cplx& d2) {
        d1 = l1 * y1 + k * p.u_at(j) * y2;
        d2 = l2 * y2 + k * p.v_at(j) * y1;
    };

    Vec2Field out(n);
    std::size_t j = from_left ? 0 : n - 1;
    out.first[j] = mu ? 1.0 : 0.0;
    out.second[j] = mu ? 0.0 : 1.0;
    // RK4 with step 2h so that the stage midpoints fall on grid nodes. Only every
    // other node (counted from the anchoring edge) is filled.
    const double dt = from_left ? 2.0 * h : -2.0 * h;
    auto step = [&](std::size_t a, std::size_t mid, std::size_t b, cplx y1, cplx y2, cplx& o1, cplx& o2) {
        cplx k11, k12, k21, k22, k31, k32, k41, k42;
        rhs(a, y1, y2, k11, k12);
        rhs(mid, y1 + 0.5 * dt * k11, y2 + 0.5 * dt * k12, k21, k22);
        rhs(mid, y1 + 0.5 * dt * k21, y2 + 0.5 * dt * k22, k31, k32);
        rhs(b, y1 + dt * k31, y2 + dt * k32, k41, k42);
        o1 = y1 + dt / 6.0 * (k11 + 2.0 * k21 + 2.0 * k31 + k41);
        o2 = y2 + dt / 6.0 * (k12 + 2.0 * k22 + 2.0 * k32 + k42);
    };
    if (from_left) {
        for (std::size_t a = 0; a + 2 < n; a += 2) step(a, a + 1, a + 2, out.first[a], out.second[a], out.first[a + 2], out.second[a + 2]);
    } else {
        for (std::size_t b = n - 1; b >= 2; b -= 2) step(b, b - 1, b - 2, out.first[b], out.second[b], out.first[b - 2], out.second[b - 2]);
    }
    return out;
}

double kplane_crosscheck(const Potential& p, cplx k, double z_max, JostScheme scheme) {
    if (k == cplx(0.0)) throw DomainError("k-plane cross-check needs k != 0");
    const bool real_axis = std::abs(k.imag()) <= 1e-14 * std::abs(k);
    const bool imag_axis = std::abs(k.real()) <= 1e-14 * std::abs(k);
    if (!real_axis && !imag_axis) throw DomainError("k must lie on the real or imaginary axis");
    const double k2 = std::norm(k);
    if (k2 > z_max) throw DomainError("|k| exceeds sqrt(Z); the k-plane system is not uniform in k");
    const double h = p.grid().spacing();
    if (2.0 * k2 * 2.0 * h > 2.0) {
        throw DomainError("k-plane RK4 step too large for |k| = " + std::to_string(std::sqrt(k2)));
    }

    const double z = real_axis ? k2 : -k2;
    const auto q = build_potential_matrices(p);
    const std::size_t n = p.grid().size();
    const cplx two_ik = 2.0 * I * k;

    const auto mu = solve_jost(p, q, z, JostKind::mu_minus, scheme);
    const auto phi = kplane_jost(p, k, JostKind::mu_minus);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; j += 2) {
        const cplx m1 = mu.values.first[j], m2 = mu.values.second[j];
        worst = std::max(worst, std::abs(phi.first[j] - m1));
        worst = std::max(worst, std::abs(phi.second[j] - (m2 - p.v_at(j) * m1) / two_ik));
    }

    const auto nu = solve_jost(p, q, z, JostKind::nu_plus, scheme);
    const auto psi = kplane_jost(p, k, JostKind::nu_plus);
    for (std::size_t j = n - 1;; j -= 2) {
        const cplx n1 = nu.values.first[j], n2 = nu.values.second[j];
        worst = std::max(worst, std::abs(psi.first[j] - (n1 + p.u_at(j) * n2) / two_ik));
        worst = std::max(worst, std::abs(psi.second[j] - n2));
        if (j < 2) break;
    }
    return worst;
}

double min_abs(const Field& f) {
    double m = std::numeric_limits<double>::infinity();
    for (auto c : f) m = std::min(m, std::abs(c));
    return m;
}

double sup_abs_b(const ScatteringData& sd) {
    double m = 0.0;
    for (std::size_t j = 0; j < sd.grid.size(); ++j) {
        m = std::max(m, std::abs(sd.B2[j]) / (2.0 * std::sqrt(std::abs(sd.grid.node(j)))));
    }
    return m;
}

ReflectionData reflection(const ScatteringData& sd) {
    const double ma = min_abs(sd.a), md = min_abs(sd.d);
    if (ma < kMinScatteringModulus || md < kMinScatteringModulus) {
        throw SpectralSingularityError("min|a| = " + std::to_string(ma) + ", min|d| = " +
                                       std::to_string(md) + " below 0.1: data outside the small-norm regime");
    }
    const std::size_t m = sd.grid.size();
    ReflectionData r{sd.grid, Field(m), Field(m), std::vector<double>(m), std::vector<double>(m)};
    for (std::size_t j = 0; j < m; ++j) {
        const double z = sd.grid.node(j);
        r.r_minus[j] = sd.B2[j] / sd.a[j];
        r.r_plus[j] = sd.C2[j] / (4.0 * z * sd.d[j]);
        const double root = 2.0 * std::sqrt(std::abs(z));
        r.r1_abs[j] = std::abs(sd.B2[j]) / (root * std::abs(sd.a[j]));
        r.r2_abs[j] = std::abs(sd.C2[j]) / (root * std::abs(sd.d[j]));
        r.sup_r1 = std::max(r.sup_r1, r.r1_abs[j]);
        r.sup_r2 = std::max(r.sup_r2, r.r2_abs[j]);
    }
    return r;
}

} // namespace ndnls
