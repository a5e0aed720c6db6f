#pragma once

#include "ndnls/grid.hpp"

#include <cstddef>

namespace ndnls::fft {

enum class Direction { forward, backward };

// Unnormalized in-place DFT, forward uses e^{-2 pi i j k / n}. Plans are cached
// per length and shared across threads.
void transform(Field& data, Direction dir);

// Signed integer frequency of DFT bin k; the Nyquist bin maps to -n/2.
inline long signed_bin(std::size_t k, std::size_t n) noexcept {
    return k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

// d^order f / dx^order for f sampled on a uniform periodic grid of the given period.
Field derivative(const Field& f, double period, int order = 1);

// Band-limited interpolation onto a grid `factor` times finer, same origin.
Field upsample(const Field& f, std::size_t factor);

} // namespace ndnls::fft
