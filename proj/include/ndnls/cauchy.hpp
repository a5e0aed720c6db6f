#pragma once

#include "ndnls/grid.hpp"

namespace ndnls::cauchy {

// Boundary values of the Cauchy integral from above: keeps the frequencies
// lambda >= 0 of f(z) = int fhat(lambda) e^{i lambda z} d lambda. The zero mode
// goes wholly to C+, the Nyquist bin counts as negative.
Field plus(const Field& f);

// Boundary values from below, C- = C+ - I.
Field minus(const Field& f);

// Line operators on a periodization window `factor` times wider than the grid:
// f is zero-extended, projected and restricted back. C+ - C- = I still holds
// exactly; idempotence holds only up to the truncation. The periodic kernel
// differs from 1/(s - z) by O(|s - z| / P^2), which the wider window shrinks.
Field plus_line(const Field& f, std::size_t factor);
Field minus_line(const Field& f, std::size_t factor);

// H = i (C+ + C-), i.e. multiplier i sign(lambda) with sign(0) = +1.
Field hilbert(const Field& f);

// Largest edge sample relative to the sup norm; large values mean the
// periodized operators see a jump.
double edge_ratio(const Field& f);

// Prints a warning to stderr when edge_ratio(f) exceeds 1e-6. Returns whether it did.
bool warn_if_not_decayed(const Field& f, const char* label);

} // namespace ndnls::cauchy
