#pragma once

#include "ndnls/grid.hpp"

#include <span>

namespace ndnls::quad {

// Composite trapezoid over all samples with spacing h.
cplx trapezoid(std::span<const cplx> f, double h);
double trapezoid(std::span<const double> f, double h);

// F_j = integral from node j to the last node (trapezoid), F_last = 0.
Field cumulative_from_right(std::span<const cplx> f, double h);

double l2_norm(std::span<const cplx> f, double h);
double l1_norm(std::span<const cplx> f, double h);
double sup_norm(std::span<const cplx> f);

} // namespace ndnls::quad
