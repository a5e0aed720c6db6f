#include "ndnls/grid.hpp"

#include "ndnls/error.hpp"

#include <cmath>
#include <string>

namespace ndnls {
namespace {

void check_count(std::size_t n, const char* what) {
    if (n < 8 || n % 2 != 0) {
        throw ConfigError(std::string(what) + " must be even and >= 8, got " + std::to_string(n));
    }
}

void check_extent(double e, const char* what) {
    if (!(e > 0.0) || !std::isfinite(e)) {
        throw ConfigError(std::string(what) + " must be positive and finite");
    }
}

} // namespace

SpatialGrid::SpatialGrid(std::size_t n, double half_extent)
    : n_(n), L_(half_extent), h_(0.0) {
    check_count(n, "spatial node count");
    check_extent(half_extent, "spatial half-extent");
    h_ = 2.0 * L_ / static_cast<double>(n_);
}

std::vector<double> SpatialGrid::nodes() const {
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = node(j);
    return x;
}

SpectralGrid::SpectralGrid(std::size_t m, double half_extent)
    : m_(m), Z_(half_extent), h_(0.0) {
    check_count(m, "spectral node count");
    check_extent(half_extent, "spectral half-extent");
    h_ = 2.0 * Z_ / static_cast<double>(m_);
}

std::vector<double> SpectralGrid::nodes() const {
    std::vector<double> z(m_);
    for (std::size_t m = 0; m < m_; ++m) z[m] = node(m);
    return z;
}

std::pair<SpatialGrid, SpectralGrid> build_grids(std::size_t n, double L, std::size_t m, double Z) {
    return {SpatialGrid(n, L), SpectralGrid(m, Z)};
}

} // namespace ndnls
