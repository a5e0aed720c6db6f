#include "ndnls/evolution.hpp"

#include <cmath>

namespace ndnls {
namespace {

cplx phase(double z, double t) { return std::exp(4.0 * I * z * z * t); }

} // namespace

ReflectionData evolve_reflection(const ReflectionData& r, double t) {
    ReflectionData out = r;
    for (std::size_t m = 0; m < r.grid.size(); ++m) {
        const cplx e = phase(r.grid.node(m), t);
        out.r_minus[m] = r.r_minus[m] * e;
        out.r_plus[m] = r.r_plus[m] / e;
    }
    return out;
}

ScatteringData evolve_scattering(const ScatteringData& sd, double t) {
    ScatteringData out = sd;
    for (std::size_t m = 0; m < sd.grid.size(); ++m) {
        const cplx e = phase(sd.grid.node(m), t);
        out.B2[m] = sd.B2[m] * e;
        out.C2[m] = sd.C2[m] / e;
    }
    return out;
}

} // namespace ndnls
