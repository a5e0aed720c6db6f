#pragma once

#include "ndnls/rh_solver.hpp"

#include <vector>

namespace ndnls {

// Every `stride`-th node of a spatial grid; reflection-symmetric when the stride divides N.
class ReconstructionGrid {
public:
    ReconstructionGrid(const SpatialGrid& base, std::size_t stride);

    std::size_t size() const noexcept { return n_; }
    std::size_t stride() const noexcept { return stride_; }
    double spacing() const noexcept { return h_; }
    double node(std::size_t k) const noexcept { return base_.node(k * stride_); }
    std::size_t base_index(std::size_t k) const noexcept { return k * stride_; }
    std::size_t mirror(std::size_t k) const noexcept { return (n_ - k) % n_; }
    const SpatialGrid& base() const noexcept { return base_; }

private:
    SpatialGrid base_;
    std::size_t stride_;
    std::size_t n_;
    double h_;
};

// Plain solutions for x >= 0, deltified for x < 0, one per reconstruction node.
struct BoundarySolutions {
    std::vector<BoundaryPair> pairs;
};

// w = u e^{i Theta}, Theta(x) = int_x^inf u v.
Field reconstruct_w(const BoundarySolutions& sol, const ReflectionData& r, const DeltifiedReflection& rd);

// s = P d_x(v P) with P = e^{(1/2i) Theta}.
Field reconstruct_s(const BoundarySolutions& sol, const ReflectionData& r, const DeltifiedReflection& rd);

// Single-node evaluations used for the dispatch-continuity check at x = 0.
cplx w_plain(const BoundaryPair& bp, const ReflectionData& r);
cplx w_deltified(const BoundaryPair& bp, const DeltifiedReflection& rd);
cplx s_plain(const BoundaryPair& bp, const ReflectionData& r);
cplx s_deltified(const BoundaryPair& bp, const DeltifiedReflection& rd);

struct PhaseResult {
    Field u;
    Field theta;
    std::size_t iterations = 0;
    std::vector<double> increments;
};

// Fixed point Theta_{n+1}(x) = int_x^inf u_n v_n, u_n = w e^{-i Theta_n}, Theta_0 = 0.
PhaseResult phase_unwind(const ReconstructionGrid& g, const Field& w, double tol = 1e-13,
                         std::size_t max_iter = 50);

struct IstOptions {
    std::size_t spectral_nodes = 2048;
    double spectral_extent = 24.0;
    std::size_t stride = 8;
    double tol = kDefaultRhTol;
    std::size_t max_iter = kDefaultRhMaxIter;
    std::size_t cauchy_padding = kDefaultCauchyPadding;
};

struct RhDiagnostic {
    double x;
    Flavor flavor;
    std::size_t iterations;
    double residual;
    double contraction;
    bool used_krylov;
};

struct ReconstructionOutput {
    std::vector<double> x_nodes;
    Field w;
    Field s;
    Field u;
    Field theta;
    std::size_t iterations = 0;
    std::vector<RhDiagnostic> diagnostics;
};

// Full inverse map: scattering data, reflection, evolution to t, scalar RHP,
// boundary solves at each reconstruction node, w, s and the phase unwind.
ReconstructionOutput ist_solve(const Potential& u0, double t, const IstOptions& opt = {});

} // namespace ndnls
