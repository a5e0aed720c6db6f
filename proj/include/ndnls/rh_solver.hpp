#pragma once

#include "ndnls/direct_scattering.hpp"

#include <string>

namespace ndnls {

enum class Flavor { plain, deltified };

std::string to_string(Flavor f);

struct BoundaryPair {
    double x = 0.0;
    Vec2Field m; // m_- (plain) or m_{delta,+}
    Vec2Field n; // n_+ (plain) or n_{delta,-}
    Flavor flavor = Flavor::plain;
    double residual = 0.0;
    std::size_t iterations = 0;
    // Ratio of successive residuals over the alternating phase (0 if it was not needed).
    double contraction = 0.0;
    bool used_krylov = false;
    std::size_t padding = 1;
};

struct DeltaPair {
    Field delta_plus;
    Field delta_minus;
};

struct DeltifiedReflection {
    SpectralGrid grid;
    Field r_delta_plus;
    Field r_delta_minus;
};

inline constexpr double kDefaultRhTol = 1e-10;
inline constexpr std::size_t kDefaultRhMaxIter = 200;
// Periodization window of the Cauchy operators, in multiples of the z-grid
// length. At Z = 24 a window of 1 leaves a ~3e-6 kernel error in w; 4 brings it
// to ~3e-7.
inline constexpr std::size_t kDefaultCauchyPadding = 4;

// m = e1 + C-(n r- e^{2izx}), n = e2 + C+(m r+ e^{-2izx}). Half of max_iter is
// spent on alternating sweeps, the rest on restarted GMRES if those stall.
BoundaryPair solve_boundary_pair(const ReflectionData& r, double x, double tol = kDefaultRhTol,
                                 std::size_t max_iter = kDefaultRhMaxIter,
                                 std::size_t padding = kDefaultCauchyPadding);

// m = e1 + C+(n r_{d,-} e^{2izx}), n = e2 + C-(m r_{d,+} e^{-2izx}).
BoundaryPair solve_boundary_pair_delta(const DeltifiedReflection& rd, double x, double tol = kDefaultRhTol,
                                       std::size_t max_iter = kDefaultRhMaxIter,
                                       std::size_t padding = kDefaultCauchyPadding);

// Sup-norm defect of the defining equations, recomputed from scratch with the
// operators the pair was solved with.
double boundary_pair_defect(const BoundaryPair& bp, const Field& r_plus_like, const Field& r_minus_like,
                            const SpectralGrid& g);

// Sup norm of the spectral content of m - e1 and n - e2 outside the half-line
// each should live on, measured with the operators the pair was solved with.
// With padding 1 it is of the order of the residual; with a wider window the
// 1/z tails of m - e1 and n - e2 are cut at the grid edge and it measures that
// truncation instead.
double frequency_leakage(const BoundaryPair& bp);

inline constexpr double kBranchMargin = 0.05;

// delta_pm = exp(C_pm log(1 + r+ r-)) with the principal logarithm.
DeltaPair solve_scalar_delta(const ReflectionData& r, std::size_t padding = kDefaultCauchyPadding);

DeltifiedReflection deltify(const ReflectionData& r, const DeltaPair& d);

} // namespace ndnls
