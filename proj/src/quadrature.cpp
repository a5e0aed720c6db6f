#include "ndnls/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace ndnls::quad {

cplx trapezoid(std::span<const cplx> f, double h) {
    if (f.size() < 2) return 0.0;
    cplx s = 0.5 * (f.front() + f.back());
    for (std::size_t j = 1; j + 1 < f.size(); ++j) s += f[j];
    return s * h;
}

double trapezoid(std::span<const double> f, double h) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t j = 1; j + 1 < f.size(); ++j) s += f[j];
    return s * h;
}

Field cumulative_from_right(std::span<const cplx> f, double h) {
    Field out(f.size(), 0.0);
    for (std::size_t j = f.size() - 1; j-- > 0;) {
        out[j] = out[j + 1] + 0.5 * h * (f[j] + f[j + 1]);
    }
    return out;
}

double l2_norm(std::span<const cplx> f, double h) {
    std::vector<double> sq(f.size());
    std::transform(f.begin(), f.end(), sq.begin(), [](cplx c) { return std::norm(c); });
    return std::sqrt(trapezoid(sq, h));
}

double l1_norm(std::span<const cplx> f, double h) {
    std::vector<double> a(f.size());
    std::transform(f.begin(), f.end(), a.begin(), [](cplx c) { return std::abs(c); });
    return trapezoid(a, h);
}

double sup_norm(std::span<const cplx> f) {
    double m = 0.0;
    for (const auto& c : f) m = std::max(m, std::abs(c));
    return m;
}

} // namespace ndnls::quad
