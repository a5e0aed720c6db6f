#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ndnls {

using cplx = std::complex<double>;
using Field = std::vector<cplx>;

inline constexpr cplx I{0.0, 1.0};

// Uniform periodic grid on [-L, L) with x_{N/2} = 0.
class SpatialGrid {
public:
    SpatialGrid(std::size_t n, double half_extent);

    std::size_t size() const noexcept { return n_; }
    double half_extent() const noexcept { return L_; }
    double spacing() const noexcept { return h_; }
    double node(std::size_t j) const noexcept {
        return (static_cast<double>(j) - static_cast<double>(n_ / 2)) * h_;
    }
    std::size_t origin() const noexcept { return n_ / 2; }

    // Index of the node at -x_j; the left edge maps to itself.
    std::size_t mirror(std::size_t j) const noexcept { return (n_ - j) % n_; }

    std::vector<double> nodes() const;

private:
    std::size_t n_;
    double L_;
    double h_;
};

// Half-offset grid on (-Z, Z): z = 0 is never a node.
class SpectralGrid {
public:
    SpectralGrid(std::size_t m, double half_extent);

    std::size_t size() const noexcept { return m_; }
    double half_extent() const noexcept { return Z_; }
    double spacing() const noexcept { return h_; }
    double node(std::size_t m) const noexcept {
        return (static_cast<double>(m) + 0.5 - static_cast<double>(m_ / 2)) * h_;
    }
    std::size_t mirror(std::size_t m) const noexcept { return m_ - 1 - m; }

    std::vector<double> nodes() const;

private:
    std::size_t m_;
    double Z_;
    double h_;
};

std::pair<SpatialGrid, SpectralGrid> build_grids(std::size_t n, double L, std::size_t m, double Z);

// Grid-sampled two-component vector function.
struct Vec2Field {
    Field first;
    Field second;

    Vec2Field() = default;
    explicit Vec2Field(std::size_t n, cplx c1 = 0.0, cplx c2 = 0.0)
        : first(n, c1), second(n, c2) {}
    std::size_t size() const noexcept { return first.size(); }
};

} // namespace ndnls
