#pragma once

#include "ndnls/grid.hpp"

namespace ndnls {

inline constexpr double kGateThreshold = 0.295;

// v(x) = i conj(u(-x)), the sigma = +1 reduction. Reflection is the index
// permutation j -> (N - j) mod N.
Field nonlocal_conjugate(const SpatialGrid& grid, const Field& u);

// Reflected samples f(-x_j) without conjugation.
Field flip(const SpatialGrid& grid, const Field& f);

class Potential {
public:
    Potential(SpatialGrid grid, Field u);

    static Potential zero(SpatialGrid grid) { return Potential(grid, Field(grid.size(), 0.0)); }

    const SpatialGrid& grid() const noexcept { return grid_; }
    const Field& u() const noexcept { return u_; }
    const Field& v() const noexcept { return v_; }
    cplx u_at(std::size_t j) const noexcept { return u_[j]; }
    cplx v_at(std::size_t j) const noexcept { return v_[j]; }

private:
    SpatialGrid grid_;
    Field u_;
    Field v_;
};

struct Matrix2Field {
    Field a11, a12, a21, a22;
};

struct PotentialMatrices {
    Matrix2Field q1;
    Matrix2Field q2;
};

// Coefficient matrices of the two transformed Zakharov-Shabat problems; u_x and
// v_x are taken spectrally.
PotentialMatrices build_potential_matrices(const Potential& p);

struct GateReport {
    double value = 0.0;
    double threshold = kGateThreshold;
    bool pass = true;
};

// Split L1 bound 1/2 (2|v_x| + |u v^2| + 2|u v| + |u|), integrated after 8x
// band-limited oversampling so the |.| kinks do not spoil the quadrature.
GateReport gate_functional(const Potential& p);

// Same bound written with the entries of Q2; equal to gate_functional on a
// symmetric grid.
GateReport gate_functional_q2(const Potential& p);

struct SobolevNorms {
    double h2 = 0.0;  // sum_{j=0..2} ||d^j u||_2
    double h11 = 0.0; // ||<x> u_x||_2
};

SobolevNorms sobolev_norms(const SpatialGrid& grid, const Field& u);

} // namespace ndnls
