#include "ndnls/cauchy.hpp"

#include "ndnls/fft.hpp"
#include "ndnls/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ndnls::cauchy {

double edge_ratio(const Field& f) {
    if (f.empty()) return 0.0;
    const double sup = quad::sup_norm(f);
    if (sup == 0.0) return 0.0;
    return std::max(std::abs(f.front()), std::abs(f.back())) / sup;
}

bool warn_if_not_decayed(const Field& f, const char* label) {
    const double ratio = edge_ratio(f);
    if (ratio <= 1e-6) return false;
    std::fprintf(stderr, "ndnls: %s is not decayed at the spectral edges (edge/sup = %.3g)\n", label,
                 ratio);
    return true;
}

namespace {

// Zero-extends f symmetrically to `factor` times its length, keeps one side of the
// spectrum (with the C- sign) and restricts back to the original nodes.
Field project(const Field& f, std::size_t factor, bool upper) {
    const std::size_t n = f.size();
    const std::size_t np = n * factor;
    const std::size_t off = (np - n) / 2;
    Field spec(np, 0.0);
    std::copy(f.begin(), f.end(), spec.begin() + static_cast<long>(off));
    fft::transform(spec, fft::Direction::forward);
    const double scale = 1.0 / static_cast<double>(np);
    for (std::size_t k = 0; k < np; ++k) {
        const bool nonneg = fft::signed_bin(k, np) >= 0;
        spec[k] *= upper ? (nonneg ? scale : 0.0) : (nonneg ? 0.0 : -scale);
    }
    fft::transform(spec, fft::Direction::backward);
    if (factor == 1) return spec;
    return Field(spec.begin() + static_cast<long>(off), spec.begin() + static_cast<long>(off + n));
}

} // namespace

Field plus(const Field& f) { return project(f, 1, true); }

Field minus(const Field& f) { return project(f, 1, false); }

Field plus_line(const Field& f, std::size_t factor) { return project(f, factor, true); }

Field minus_line(const Field& f, std::size_t factor) { return project(f, factor, false); }

Field hilbert(const Field& f) {
    const std::size_t n = f.size();
    Field spec = f;
    fft::transform(spec, fft::Direction::forward);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        spec[k] *= (fft::signed_bin(k, n) >= 0 ? I : -I) * scale;
    }
    fft::transform(spec, fft::Direction::backward);
    return spec;
}

} // namespace ndnls::cauchy
