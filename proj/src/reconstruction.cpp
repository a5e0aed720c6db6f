#include "ndnls/reconstruction.hpp"

#include "ndnls/cauchy.hpp"
#include "ndnls/error.hpp"
#include "ndnls/evolution.hpp"
#include "ndnls/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace ndnls {
namespace {

// int f(z) e^{sign 2izx} dz by the trapezoid rule on the z-grid.
cplx z_integral(const SpectralGrid& g, const Field& a, const Field& b, double x, double sign) {
    Field f(g.size());
    for (std::size_t m = 0; m < g.size(); ++m) f[m] = a[m] * b[m] * std::exp(sign * 2.0 * I * g.node(m) * x);
    return quad::trapezoid(f, g.spacing());
}

void require_flavor(const BoundaryPair& bp, Flavor expected) {
    if (bp.flavor != expected) {
        throw PreconditionError("boundary pair at x = " + std::to_string(bp.x) + " has flavor " +
                                to_string(bp.flavor) + ", expected " + to_string(expected));
    }
}

Flavor flavor_for(double x) { return x >= 0.0 ? Flavor::plain : Flavor::deltified; }

} // namespace

ReconstructionGrid::ReconstructionGrid(const SpatialGrid& base, std::size_t stride)
    : base_(base), stride_(stride) {
    if (stride == 0 || base.size() % stride != 0 || (base.size() / stride) % 2 != 0) {
        throw ConfigError("reconstruction stride must divide N into an even number of nodes");
    }
    n_ = base.size() / stride;
    h_ = base.spacing() * static_cast<double>(stride);
}

cplx w_plain(const BoundaryPair& bp, const ReflectionData& r) {
    require_flavor(bp, Flavor::plain);
    return 2.0 / (std::numbers::pi * I) * z_integral(r.grid, bp.m.first, r.r_plus, bp.x, -1.0);
}

cplx w_deltified(const BoundaryPair& bp, const DeltifiedReflection& rd) {
    require_flavor(bp, Flavor::deltified);
    return 2.0 / (std::numbers::pi * I) * z_integral(rd.grid, bp.m.first, rd.r_delta_plus, bp.x, -1.0);
}

cplx s_plain(const BoundaryPair& bp, const ReflectionData& r) {
    require_flavor(bp, Flavor::plain);
    return z_integral(r.grid, bp.n.second, r.r_minus, bp.x, 1.0) / std::numbers::pi;
}

cplx s_deltified(const BoundaryPair& bp, const DeltifiedReflection& rd) {
    require_flavor(bp, Flavor::deltified);
    return z_integral(rd.grid, bp.n.second, rd.r_delta_minus, bp.x, 1.0) / std::numbers::pi;
}

Field reconstruct_w(const BoundarySolutions& sol, const ReflectionData& r, const DeltifiedReflection& rd) {
    Field w(sol.pairs.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        const auto& bp = sol.pairs[k];
        require_flavor(bp, flavor_for(bp.x));
        w[k] = bp.x >= 0.0 ? w_plain(bp, r) : w_deltified(bp, rd);
    }
    return w;
}

Field reconstruct_s(const BoundarySolutions& sol, const ReflectionData& r, const DeltifiedReflection& rd) {
    Field s(sol.pairs.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto& bp = sol.pairs[k];
        require_flavor(bp, flavor_for(bp.x));
        s[k] = bp.x >= 0.0 ? s_plain(bp, r) : s_deltified(bp, rd);
    }
    return s;
}

PhaseResult phase_unwind(const ReconstructionGrid& g, const Field& w, double tol, std::size_t max_iter) {
    const std::size_t n = g.size();
    if (w.size() != n) throw PreconditionError("w does not match the reconstruction grid");
    PhaseResult res;
    res.theta = Field(n, 0.0);
    res.u = w;
    Field uv(n);
    while (true) {
        for (std::size_t k = 0; k < n; ++k) res.u[k] = w[k] * std::exp(-I * res.theta[k]);
        for (std::size_t k = 0; k < n; ++k) uv[k] = res.u[k] * I * std::conj(res.u[g.mirror(k)]);
        Field next = quad::cumulative_from_right(uv, g.spacing());
        double inc = 0.0;
        for (std::size_t k = 0; k < n; ++k) inc = std::max(inc, std::abs(next[k] - res.theta[k]));
        res.theta = std::move(next);
        res.increments.push_back(inc);
        ++res.iterations;
        if (inc <= tol) break;
        if (res.iterations >= max_iter || !std::isfinite(inc)) {
            throw ConvergenceError("phase unwinding did not contract: last increment " + std::to_string(inc),
                                   inc, res.increments.size() > 1 ? inc / res.increments[res.increments.size() - 2] : 0.0);
        }
    }
    for (std::size_t k = 0; k < n; ++k) res.u[k] = w[k] * std::exp(-I * res.theta[k]);
    return res;
}

ReconstructionOutput ist_solve(const Potential& u0, double t, const IstOptions& opt) {
    const auto gate = gate_functional(u0);
    if (!gate.pass) {
        throw GateError("gate functional " + std::to_string(gate.value) + " exceeds " +
                            std::to_string(gate.threshold),
                        gate.value);
    }
    const SpectralGrid zg(opt.spectral_nodes, opt.spectral_extent);
    const ReconstructionGrid rg(u0.grid(), opt.stride);

    const auto sd = scattering_data(u0, zg);
    const auto r = evolve_reflection(reflection(sd), t);
    cauchy::warn_if_not_decayed(r.r_plus, "r+");
    cauchy::warn_if_not_decayed(r.r_minus, "r-");
    const auto delta = solve_scalar_delta(r, opt.cauchy_padding);
    const auto rd = deltify(r, delta);

    ReconstructionOutput out;
    BoundarySolutions sol;
    sol.pairs.reserve(rg.size());
    for (std::size_t k = 0; k < rg.size(); ++k) {
        const double x = rg.node(k);
        auto bp = x >= 0.0 ? solve_boundary_pair(r, x, opt.tol, opt.max_iter, opt.cauchy_padding)
                           : solve_boundary_pair_delta(rd, x, opt.tol, opt.max_iter, opt.cauchy_padding);
        out.diagnostics.push_back({x, bp.flavor, bp.iterations, bp.residual, bp.contraction, bp.used_krylov});
        out.x_nodes.push_back(x);
        sol.pairs.push_back(std::move(bp));
    }
    out.w = reconstruct_w(sol, r, rd);
    out.s = reconstruct_s(sol, r, rd);
    auto phase = phase_unwind(rg, out.w);
    out.u = std::move(phase.u);
    out.theta = std::move(phase.theta);
    out.iterations = phase.iterations;
    return out;
}

} // namespace ndnls
