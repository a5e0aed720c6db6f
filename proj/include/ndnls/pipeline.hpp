#pragma once

#include "ndnls/direct_scattering.hpp"
#include "ndnls/model.hpp"
#include "ndnls/pde_oracle.hpp"
#include "ndnls/reconstruction.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace ndnls {

enum class IcType { gaussian, sech, samples_file };

struct Config {
    std::size_t grid_n = 2048;
    double grid_l = 12.0;
    std::size_t spectral_m = 2048;
    double spectral_z = 24.0;
    IcType ic_type = IcType::gaussian;
    double ic_amplitude = 0.095;
    double ic_width = 1.0;
    double ic_center = 0.0;
    std::string ic_path;
    double time_t = 0.25;
    double time_dt = 1e-4;
    double solver_tol = kDefaultRhTol;
    std::size_t solver_max_iter = kDefaultRhMaxIter;
    std::string output_dir = "out";
    std::size_t output_nx_stride = 8;
};

// Throws ConfigError on any invariant violation.
void validate(const Config& cfg);

Config parse_config_text(const std::string& text);
Config parse_config(const std::string& path);

// Initial data on the configured spatial grid.
Potential initial_potential(const Config& cfg);

namespace csv {

// "%.17g": round-trips every double and is byte-stable.
std::string number(double v);

void write_scattering(std::ostream& os, const ScatteringData& sd, const ReflectionData& r);
void write_solution(std::ostream& os, const ReconstructionOutput& out);
void write_oracle(std::ostream& os, const SpatialGrid& g, const Field& u);
void write_compare(std::ostream& os, const std::vector<double>& x, const Field& ist, const Field& oracle);
void write_rh_diag(std::ostream& os, const std::vector<RhDiagnostic>& diag);

} // namespace csv

// Relative discrete L2 difference |a - b| / |b| on a uniform grid.
double relative_l2(const Field& a, const Field& b);

inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitGate = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitConfig = 4;

// Runs one command and maps failures to exit codes. Reports go to out, errors to err.
int dispatch(const std::string& command, const Config& cfg, std::ostream& out, std::ostream& err);

} // namespace ndnls
