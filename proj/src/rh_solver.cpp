#include "ndnls/rh_solver.hpp"

#include "ndnls/cauchy.hpp"
#include "ndnls/error.hpp"
#include "ndnls/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace ndnls {
namespace {

// C+ or C- on a periodization window `factor` times the grid.
struct Projection {
    bool upper;
    std::size_t factor;
    Field operator()(const Field& f) const {
        return upper ? cauchy::plus_line(f, factor) : cauchy::minus_line(f, factor);
    }
};

Field times(const Field& a, const Field& b) {
    Field out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
    return out;
}

// The scalar pair alpha = f_a + A(beta w_a), beta = f_b + B(alpha w_b).
struct ScalarPair {
    Projection A;
    Projection B;
    const Field& wa;
    const Field& wb;
    cplx fa;
    cplx fb;

    Field apply_a(const Field& beta) const {
        Field out = A(times(beta, wa));
        for (auto& c : out) c += fa;
        return out;
    }
    Field apply_b(const Field& alpha) const {
        Field out = B(times(alpha, wb));
        for (auto& c : out) c += fb;
        return out;
    }
    double defect(const Field& alpha, const Field& beta) const {
        const Field ra = apply_a(beta);
        const Field rb = apply_b(alpha);
        double m = 0.0;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            m = std::max({m, std::abs(alpha[j] - ra[j]), std::abs(beta[j] - rb[j])});
        }
        return m;
    }
};

struct PairResult {
    Field alpha, beta;
    double residual = 0.0;
    std::size_t iterations = 0;
    double contraction = 0.0;
    bool krylov = false;
};

cplx dot(const Field& a, const Field& b) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += std::conj(a[j]) * b[j];
    return s;
}

double norm2(const Field& a) { return std::sqrt(std::real(dot(a, a))); }

// Restarted GMRES for (I - K) y = f with the stacked unknown y = (alpha, beta).
// Stops once the sup-norm defect is below tol or the budget is spent.
void gmres(const ScalarPair& sp, PairResult& res, double tol, std::size_t budget) {
    const std::size_t m = res.alpha.size();
    const std::size_t restart = 40;
    auto op = [&](const Field& y) {
        Field a(y.begin(), y.begin() + static_cast<long>(m));
        Field b(y.begin() + static_cast<long>(m), y.end());
        Field ka = sp.A(times(b, sp.wa));
        Field kb = sp.B(times(a, sp.wb));
        Field out(2 * m);
        for (std::size_t j = 0; j < m; ++j) {
            out[j] = a[j] - ka[j];
            out[m + j] = b[j] - kb[j];
        }
        return out;
    };
    Field rhs(2 * m);
    for (std::size_t j = 0; j < m; ++j) {
        rhs[j] = sp.fa;
        rhs[m + j] = sp.fb;
    }
    Field y(2 * m);
    std::copy(res.alpha.begin(), res.alpha.end(), y.begin());
    std::copy(res.beta.begin(), res.beta.end(), y.begin() + static_cast<long>(m));

    std::size_t used = 0;
    while (used < budget) {
        Field r = op(y);
        for (std::size_t j = 0; j < 2 * m; ++j) r[j] = rhs[j] - r[j];
        const double beta0 = norm2(r);
        if (beta0 == 0.0) break;
        const std::size_t kmax = std::min(restart, budget - used);
        std::vector<Field> V{r};
        for (auto& c : V[0]) c /= beta0;
        std::vector<std::vector<cplx>> H(kmax + 1, std::vector<cplx>(kmax, 0.0));
        std::vector<cplx> cs(kmax), sn(kmax), g(kmax + 1, 0.0);
        g[0] = beta0;
        std::size_t k = 0;
        for (; k < kmax; ++k) {
            Field w = op(V[k]);
            for (std::size_t i = 0; i <= k; ++i) {
                H[i][k] = dot(V[i], w);
                for (std::size_t j = 0; j < w.size(); ++j) w[j] -= H[i][k] * V[i][j];
            }
            const double hn = norm2(w);
            H[k + 1][k] = hn;
            for (std::size_t i = 0; i < k; ++i) {
                const cplx t = std::conj(cs[i]) * H[i][k] + std::conj(sn[i]) * H[i + 1][k];
                H[i + 1][k] = -sn[i] * H[i][k] + cs[i] * H[i + 1][k];
                H[i][k] = t;
            }
            const double den = std::hypot(std::abs(H[k][k]), hn);
            cs[k] = den == 0.0 ? 1.0 : H[k][k] / den;
            sn[k] = den == 0.0 ? 0.0 : hn / den;
            H[k][k] = den;
            H[k + 1][k] = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] = std::conj(cs[k]) * g[k];
            ++used;
            // Euclidean residual bounds the sup norm.
            if (std::abs(g[k + 1]) <= 0.1 * tol || hn == 0.0) {
                ++k;
                break;
            }
            for (auto& c : w) c /= hn;
            V.push_back(std::move(w));
        }
        std::vector<cplx> coef(k, 0.0);
        for (std::size_t i = k; i-- > 0;) {
            cplx s = g[i];
            for (std::size_t j = i + 1; j < k; ++j) s -= H[i][j] * coef[j];
            coef[i] = s / H[i][i];
        }
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < y.size(); ++j) y[j] += coef[i] * V[i][j];

        Field a(y.begin(), y.begin() + static_cast<long>(m));
        Field b(y.begin() + static_cast<long>(m), y.end());
        res.residual = sp.defect(a, b);
        res.alpha = std::move(a);
        res.beta = std::move(b);
        if (res.residual <= tol) break;
    }
    res.iterations += used;
    res.krylov = true;
}

PairResult solve_pair(const ScalarPair& sp, std::size_t m, double tol, std::size_t max_iter) {
    PairResult res;
    res.alpha = Field(m, sp.fa);
    res.beta = Field(m, sp.fb);
    res.residual = sp.defect(res.alpha, res.beta);
    if (res.residual <= tol) return res;

    const std::size_t sweeps = max_iter / 2;
    double prev = res.residual;
    double worst_ratio = 0.0;
    bool stalled = false;
    while (res.iterations < sweeps) {
        res.beta = sp.apply_b(res.alpha);
        res.alpha = sp.apply_a(res.beta);
        ++res.iterations;
        const double r = sp.defect(res.alpha, res.beta);
        const double ratio = r / prev;
        // Ratios at the rounding floor say nothing about the contraction.
        if (r > 1e3 * tol) worst_ratio = std::max(worst_ratio, ratio);
        res.residual = r;
        prev = r;
        if (r <= tol) break;
        if (!std::isfinite(r) || ratio > 0.95) {
            stalled = true;
            break;
        }
    }
    res.contraction = worst_ratio;
    if (res.residual <= tol) return res;

    if (!std::isfinite(res.residual) || stalled) {
        res.alpha = Field(m, sp.fa);
        res.beta = Field(m, sp.fb);
    }
    gmres(sp, res, tol, max_iter - res.iterations);
    if (!(res.residual <= tol)) {
        throw ConvergenceError("boundary system did not reach tolerance: residual " +
                                   std::to_string(res.residual),
                               res.residual, res.contraction);
    }
    return res;
}

BoundaryPair solve_generic(Projection A, Projection B, const SpectralGrid& g, const Field& r_for_m,
                           const Field& r_for_n, double x, double tol, std::size_t max_iter,
                           Flavor flavor) {
    if (A.factor == 0) throw PreconditionError("Cauchy padding factor must be positive");
    const std::size_t M = g.size();
    Field wa(M), wb(M);
    for (std::size_t j = 0; j < M; ++j) {
        const cplx e = std::exp(2.0 * I * g.node(j) * x);
        wa[j] = r_for_m[j] * e;
        wb[j] = r_for_n[j] / e;
    }
    const ScalarPair first{A, B, wa, wb, 1.0, 0.0};
    const ScalarPair second{A, B, wa, wb, 0.0, 1.0};
    PairResult p1 = solve_pair(first, M, tol, max_iter);
    PairResult p2 = solve_pair(second, M, tol, max_iter);

    BoundaryPair bp;
    bp.x = x;
    bp.flavor = flavor;
    bp.padding = A.factor;
    bp.m.first = std::move(p1.alpha);
    bp.n.first = std::move(p1.beta);
    bp.m.second = std::move(p2.alpha);
    bp.n.second = std::move(p2.beta);
    bp.residual = std::max(p1.residual, p2.residual);
    bp.iterations = std::max(p1.iterations, p2.iterations);
    bp.contraction = std::max(p1.contraction, p2.contraction);
    bp.used_krylov = p1.krylov || p2.krylov;
    return bp;
}

} // namespace

std::string to_string(Flavor f) { return f == Flavor::plain ? "plain" : "deltified"; }

BoundaryPair solve_boundary_pair(const ReflectionData& r, double x, double tol, std::size_t max_iter,
                                 std::size_t padding) {
    return solve_generic({false, padding}, {true, padding}, r.grid, r.r_minus, r.r_plus, x, tol, max_iter,
                         Flavor::plain);
}

BoundaryPair solve_boundary_pair_delta(const DeltifiedReflection& rd, double x, double tol,
                                       std::size_t max_iter, std::size_t padding) {
    return solve_generic({true, padding}, {false, padding}, rd.grid, rd.r_delta_minus, rd.r_delta_plus, x,
                         tol, max_iter, Flavor::deltified);
}

double boundary_pair_defect(const BoundaryPair& bp, const Field& r_plus_like, const Field& r_minus_like,
                            const SpectralGrid& g) {
    const bool plain = bp.flavor == Flavor::plain;
    const Projection A{!plain, bp.padding};
    const Projection B{plain, bp.padding};
    const std::size_t M = g.size();
    Field wa(M), wb(M);
    for (std::size_t j = 0; j < M; ++j) {
        const cplx e = std::exp(2.0 * I * g.node(j) * bp.x);
        wa[j] = r_minus_like[j] * e;
        wb[j] = r_plus_like[j] / e;
    }
    const ScalarPair first{A, B, wa, wb, 1.0, 0.0};
    const ScalarPair second{A, B, wa, wb, 0.0, 1.0};
    return std::max(first.defect(bp.m.first, bp.n.first), second.defect(bp.m.second, bp.n.second));
}

double frequency_leakage(const BoundaryPair& bp) {
    const bool plain = bp.flavor == Flavor::plain;
    const std::size_t padding = bp.padding;
    // Plain: m - e1 = C-(...) has no lambda >= 0 content, n - e2 = C+(...) none below.
    auto leak = [padding](const Field& f, cplx shift, bool should_be_minus) {
        Field g = f;
        for (auto& c : g) c -= shift;
        const Field wrong = should_be_minus ? cauchy::plus_line(g, padding) : cauchy::minus_line(g, padding);
        return quad::sup_norm(wrong);
    };
    return std::max({leak(bp.m.first, 1.0, plain), leak(bp.m.second, 0.0, plain),
                     leak(bp.n.first, 0.0, !plain), leak(bp.n.second, 1.0, !plain)});
}

DeltaPair solve_scalar_delta(const ReflectionData& r, std::size_t padding) {
    const std::size_t M = r.grid.size();
    Field log_jump(M);
    for (std::size_t j = 0; j < M; ++j) {
        const cplx w = 1.0 + r.r_plus[j] * r.r_minus[j];
        if (std::abs(w) <= kBranchMargin || std::abs(r.r_plus[j] * r.r_minus[j]) >= 1.0) {
            throw BranchError("1 + r+ r- too close to the branch cut at z = " + std::to_string(r.grid.node(j)));
        }
        log_jump[j] = std::log(w);
    }
    DeltaPair d{cauchy::plus_line(log_jump, padding), cauchy::minus_line(log_jump, padding)};
    for (auto& c : d.delta_plus) c = std::exp(c);
    for (auto& c : d.delta_minus) c = std::exp(c);
    return d;
}

DeltifiedReflection deltify(const ReflectionData& r, const DeltaPair& d) {
    const std::size_t M = r.grid.size();
    DeltifiedReflection out{r.grid, Field(M), Field(M)};
    for (std::size_t j = 0; j < M; ++j) {
        const cplx dd = d.delta_plus[j] * d.delta_minus[j];
        out.r_delta_plus[j] = dd * r.r_plus[j];
        out.r_delta_minus[j] = r.r_minus[j] / dd;
    }
    return out;
}

} // namespace ndnls
