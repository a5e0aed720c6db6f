#include "ndnls/pipeline.hpp"

#include "ndnls/error.hpp"
#include "ndnls/evolution.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace ndnls {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end || !std::isfinite(out)) {
        throw ConfigError("malformed value for " + key + ": '" + v + "'");
    }
    return out;
}

std::size_t parse_count(const std::string& key, const std::string& v) {
    unsigned long long out = 0;
    const auto* end = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end) throw ConfigError("malformed integer for " + key + ": '" + v + "'");
    return static_cast<std::size_t>(out);
}

IcType parse_ic(const std::string& v) {
    if (v == "gaussian") return IcType::gaussian;
    if (v == "sech") return IcType::sech;
    if (v == "samples_file") return IcType::samples_file;
    throw ConfigError("unknown ic.type '" + v + "'");
}

void apply(Config& c, const std::string& key, const std::string& v) {
    if (key == "grid.N") c.grid_n = parse_count(key, v);
    else if (key == "grid.L") c.grid_l = parse_real(key, v);
    else if (key == "spectral.M") c.spectral_m = parse_count(key, v);
    else if (key == "spectral.Z") c.spectral_z = parse_real(key, v);
    else if (key == "ic.type") c.ic_type = parse_ic(v);
    else if (key == "ic.amplitude") c.ic_amplitude = parse_real(key, v);
    else if (key == "ic.width") c.ic_width = parse_real(key, v);
    else if (key == "ic.center") c.ic_center = parse_real(key, v);
    else if (key == "ic.path") c.ic_path = v;
    else if (key == "time.t") c.time_t = parse_real(key, v);
    else if (key == "time.dt") c.time_dt = parse_real(key, v);
    else if (key == "solver.tol") c.solver_tol = parse_real(key, v);
    else if (key == "solver.max_iter") c.solver_max_iter = parse_count(key, v);
    else if (key == "output.dir") c.output_dir = v;
    else if (key == "output.nx_stride") c.output_nx_stride = parse_count(key, v);
    else throw ConfigError("unknown key '" + key + "'");
}

// Reads a CSV with a header naming re_u and im_u; an x column, if present, must match the grid.
Field read_samples(const std::string& path, const SpatialGrid& g) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open samples file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("samples file is empty");
    std::vector<std::string> cols;
    {
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cols.push_back(trim(c));
    }
    long ix = -1, ire = -1, iim = -1;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (cols[k] == "x") ix = static_cast<long>(k);
        if (cols[k] == "re_u") ire = static_cast<long>(k);
        if (cols[k] == "im_u") iim = static_cast<long>(k);
    }
    if (ire < 0 || iim < 0) throw ConfigError("samples file needs re_u and im_u columns");
    Field u;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) f.push_back(trim(c));
        if (f.size() != cols.size()) throw ConfigError("samples file row has the wrong column count");
        const std::size_t j = u.size();
        if (j >= g.size()) throw ConfigError("samples file has more rows than grid.N");
        if (ix >= 0 && std::abs(parse_real("x", f[ix]) - g.node(j)) > 1e-9 * g.half_extent()) {
            throw ConfigError("samples file x column does not match the grid");
        }
        u.emplace_back(parse_real("re_u", f[ire]), parse_real("im_u", f[iim]));
    }
    if (u.size() != g.size()) throw ConfigError("samples file row count differs from grid.N");
    return u;
}

std::ofstream open_output(const Config& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.output_dir);
    const auto path = std::filesystem::path(cfg.output_dir) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path.string());
    return os;
}

IstOptions ist_options(const Config& cfg) {
    IstOptions opt;
    opt.spectral_nodes = cfg.spectral_m;
    opt.spectral_extent = cfg.spectral_z;
    opt.stride = cfg.output_nx_stride;
    opt.tol = cfg.solver_tol;
    opt.max_iter = cfg.solver_max_iter;
    return opt;
}

OracleConfig oracle_config(const Config& cfg) {
    OracleConfig oc;
    oc.dt = cfg.time_dt;
    return oc;
}

void row(std::ostream& os, std::initializer_list<double> vals) {
    bool first = true;
    for (double v : vals) {
        if (!first) os << ',';
        os << csv::number(v);
        first = false;
    }
    os << '\n';
}

int run_check(const Config& cfg, std::ostream& out) {
    const auto p = initial_potential(cfg);
    const auto gate = gate_functional(p);
    out << "gate value " << csv::number(gate.value) << " threshold " << csv::number(gate.threshold)
        << (gate.pass ? " pass\n" : " FAIL\n");
    if (!gate.pass) return kExitGate;
    const SpectralGrid zg(cfg.spectral_m, cfg.spectral_z);
    const auto sd = scattering_data(p, zg);
    const auto r = reflection(sd);
    double sym = 0.0;
    for (std::size_t m = 0; m < zg.size(); ++m) {
        const std::size_t mm = zg.mirror(m);
        sym = std::max(sym, std::abs(sd.a[m] - std::conj(sd.a[mm])));
        sym = std::max(sym, std::abs(sd.d[m] - std::conj(sd.d[mm])));
    }
    out << "unimodularity defect " << csv::number(unimodularity_defect(sd)) << '\n'
        << "symmetry defect " << csv::number(sym) << '\n'
        << "min |a| " << csv::number(min_abs(sd.a)) << '\n'
        << "sup |b| " << csv::number(sup_abs_b(sd)) << '\n'
        << "sup |r1| " << csv::number(r.sup_r1) << '\n'
        << "sup |r2| " << csv::number(r.sup_r2) << '\n';
    return kExitOk;
}

int run_scatter(const Config& cfg, double t, std::ostream& out) {
    const auto p = initial_potential(cfg);
    const SpectralGrid zg(cfg.spectral_m, cfg.spectral_z);
    auto sd = scattering_data(p, zg);
    auto r = reflection(sd);
    if (t != 0.0) {
        sd = evolve_scattering(sd, t);
        r = evolve_reflection(r, t);
    }
    auto os = open_output(cfg, "scattering.csv");
    csv::write_scattering(os, sd, r);
    out << "wrote scattering.csv at t = " << csv::number(t) << '\n';
    return kExitOk;
}

int run_solve(const Config& cfg, std::ostream& out) {
    const auto res = ist_solve(initial_potential(cfg), cfg.time_t, ist_options(cfg));
    auto os = open_output(cfg, "solution.csv");
    csv::write_solution(os, res);
    auto od = open_output(cfg, "rh_diag.csv");
    csv::write_rh_diag(od, res.diagnostics);
    out << "wrote solution.csv and rh_diag.csv at t = " << csv::number(cfg.time_t) << '\n';
    return kExitOk;
}

int run_oracle(const Config& cfg, std::ostream& out) {
    const auto p = initial_potential(cfg);
    const auto st = run(p, cfg.time_t, oracle_config(cfg));
    auto os = open_output(cfg, "oracle.csv");
    csv::write_oracle(os, st.grid, st.u);
    out << "wrote oracle.csv at t = " << csv::number(cfg.time_t) << '\n';
    return kExitOk;
}

int run_compare(const Config& cfg, std::ostream& out) {
    const auto p = initial_potential(cfg);
    const auto res = ist_solve(p, cfg.time_t, ist_options(cfg));
    const auto st = run(p, cfg.time_t, oracle_config(cfg));
    const ReconstructionGrid rg(p.grid(), cfg.output_nx_stride);
    Field oracle(rg.size());
    for (std::size_t k = 0; k < rg.size(); ++k) oracle[k] = st.u[rg.base_index(k)];
    auto os = open_output(cfg, "compare.csv");
    csv::write_compare(os, res.x_nodes, res.u, oracle);
    const double rel = relative_l2(res.u, oracle);
    const std::string summary = "relative_l2 " + csv::number(rel) + " t " + csv::number(cfg.time_t) + '\n';
    auto ss = open_output(cfg, "compare_summary.txt");
    ss << summary;
    out << summary;
    return kExitOk;
}

} // namespace

void validate(const Config& c) {
    if (c.grid_n < 8 || c.grid_n % 2 != 0) throw ConfigError("grid.N must be even and at least 8");
    if (c.spectral_m < 8 || c.spectral_m % 2 != 0) throw ConfigError("spectral.M must be even and at least 8");
    if (!(c.grid_l > 0.0)) throw ConfigError("grid.L must be positive");
    if (!(c.spectral_z > 0.0)) throw ConfigError("spectral.Z must be positive");
    if (!(c.ic_width > 0.0)) throw ConfigError("ic.width must be positive");
    if (!std::isfinite(c.ic_amplitude) || !std::isfinite(c.ic_center)) throw ConfigError("ic values must be finite");
    if (!(c.time_t >= 0.0) || !std::isfinite(c.time_t)) throw ConfigError("time.t must be finite and nonnegative");
    if (!(c.time_dt > 0.0)) throw ConfigError("time.dt must be positive");
    if (!(c.solver_tol > 0.0)) throw ConfigError("solver.tol must be positive");
    if (c.solver_max_iter < 2) throw ConfigError("solver.max_iter must be at least 2");
    const std::size_t s = c.output_nx_stride;
    if (s == 0 || c.grid_n % s != 0 || (c.grid_n / s) % 2 != 0) {
        throw ConfigError("output.nx_stride must divide grid.N into an even count");
    }
    if (c.ic_type == IcType::samples_file && c.ic_path.empty()) {
        throw ConfigError("ic.type = samples_file needs ic.path");
    }
    if (c.output_dir.empty()) throw ConfigError("output.dir must not be empty");
}

Config parse_config_text(const std::string& text) {
    Config c;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        }
        if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");
        apply(c, key, value);
    }
    validate(c);
    return c;
}

Config parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

Potential initial_potential(const Config& cfg) {
    const SpatialGrid g(cfg.grid_n, cfg.grid_l);
    Field u(g.size());
    switch (cfg.ic_type) {
    case IcType::gaussian:
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double s = (g.node(j) - cfg.ic_center) / cfg.ic_width;
            u[j] = cfg.ic_amplitude * std::exp(-s * s);
        }
        break;
    case IcType::sech:
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double s = (g.node(j) - cfg.ic_center) / cfg.ic_width;
            u[j] = cfg.ic_amplitude / std::cosh(s);
        }
        break;
    case IcType::samples_file:
        u = read_samples(cfg.ic_path, g);
        break;
    }
    return Potential(g, std::move(u));
}

namespace csv {

std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_scattering(std::ostream& os, const ScatteringData& sd, const ReflectionData& r) {
    os << "z,re_a,im_a,re_d,im_d,re_B2,im_B2,re_C2,im_C2,re_r_plus,im_r_plus,re_r_minus,im_r_minus\n";
    for (std::size_t m = 0; m < sd.grid.size(); ++m) {
        row(os, {sd.grid.node(m), sd.a[m].real(), sd.a[m].imag(), sd.d[m].real(), sd.d[m].imag(),
                 sd.B2[m].real(), sd.B2[m].imag(), sd.C2[m].real(), sd.C2[m].imag(), r.r_plus[m].real(),
                 r.r_plus[m].imag(), r.r_minus[m].real(), r.r_minus[m].imag()});
    }
}

void write_solution(std::ostream& os, const ReconstructionOutput& out) {
    os << "x,re_u,im_u,abs_u,re_w,im_w\n";
    for (std::size_t k = 0; k < out.x_nodes.size(); ++k) {
        row(os, {out.x_nodes[k], out.u[k].real(), out.u[k].imag(), std::abs(out.u[k]), out.w[k].real(),
                 out.w[k].imag()});
    }
}

void write_oracle(std::ostream& os, const SpatialGrid& g, const Field& u) {
    os << "x,re_u,im_u,abs_u\n";
    for (std::size_t j = 0; j < g.size(); ++j) row(os, {g.node(j), u[j].real(), u[j].imag(), std::abs(u[j])});
}

void write_compare(std::ostream& os, const std::vector<double>& x, const Field& ist, const Field& oracle) {
    os << "x,abs_u_ist,abs_u_oracle,abs_diff\n";
    for (std::size_t k = 0; k < x.size(); ++k) {
        row(os, {x[k], std::abs(ist[k]), std::abs(oracle[k]), std::abs(ist[k] - oracle[k])});
    }
}

void write_rh_diag(std::ostream& os, const std::vector<RhDiagnostic>& diag) {
    os << "x,flavor,iterations,residual\n";
    for (const auto& d : diag) {
        os << number(d.x) << ',' << to_string(d.flavor) << ',' << d.iterations << ',' << number(d.residual) << '\n';
    }
}

} // namespace csv

double relative_l2(const Field& a, const Field& b) {
    if (a.size() != b.size()) throw PreconditionError("relative_l2: size mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        num += std::norm(a[k] - b[k]);
        den += std::norm(b[k]);
    }
    if (den == 0.0) return std::sqrt(num);
    return std::sqrt(num / den);
}

int dispatch(const std::string& command, const Config& cfg, std::ostream& out, std::ostream& err) {
    try {
        validate(cfg);
        if (command == "check") return run_check(cfg, out);
        if (command == "scatter") return run_scatter(cfg, 0.0, out);
        if (command == "evolve") return run_scatter(cfg, cfg.time_t, out);
        if (command == "solve") return run_solve(cfg, out);
        if (command == "oracle") return run_oracle(cfg, out);
        if (command == "compare") return run_compare(cfg, out);
        throw ConfigError("unknown command '" + command + "'");
    } catch (const GateError& e) {
        err << "gate: " << e.what() << '\n';
        return kExitGate;
    } catch (const SpectralSingularityError& e) {
        err << "spectral singularity: " << e.what() << '\n';
        return kExitGate;
    } catch (const BranchError& e) {
        err << "branch: " << e.what() << '\n';
        return kExitGate;
    } catch (const ConvergenceError& e) {
        err << "convergence: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const BlowUpError& e) {
        err << "blow-up: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const DomainError& e) {
        err << "domain: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const ConfigError& e) {
        err << "config: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitOther;
    }
}

} // namespace ndnls
