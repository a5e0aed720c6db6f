#pragma once

#include "ndnls/direct_scattering.hpp"

namespace ndnls {

// r- picks up e^{4iz^2 t}, r+ picks up e^{-4iz^2 t}; moduli are untouched.
ReflectionData evolve_reflection(const ReflectionData& r, double t);

// B2 and C2 rotate like r- and r+; a, d, a_inf, d_inf are frozen.
ScatteringData evolve_scattering(const ScatteringData& sd, double t);

} // namespace ndnls
