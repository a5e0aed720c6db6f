#include "ndnls/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace ndnls::fft {
namespace {

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [n, p] : plans_) {
            fftw_destroy_plan(p.forward);
            fftw_destroy_plan(p.backward);
        }
    }

    fftw_plan get(std::size_t n, Direction dir) {
        std::lock_guard lock(mutex_);
        auto it = plans_.find(n);
        if (it == plans_.end()) {
            // Planning only needs a scratch buffer; execution uses the new-array interface.
            Field scratch(n);
            auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
            const int len = static_cast<int>(n);
            const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
            PlanPair p;
            p.forward = fftw_plan_dft_1d(len, buf, buf, FFTW_FORWARD, flags);
            p.backward = fftw_plan_dft_1d(len, buf, buf, FFTW_BACKWARD, flags);
            it = plans_.emplace(n, p).first;
        }
        return dir == Direction::forward ? it->second.forward : it->second.backward;
    }

private:
    std::mutex mutex_;
    std::map<std::size_t, PlanPair> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

} // namespace

void transform(Field& data, Direction dir) {
    if (data.empty()) return;
    fftw_plan plan = cache().get(data.size(), dir);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

Field derivative(const Field& f, double period, int order) {
    const std::size_t n = f.size();
    Field spec = f;
    transform(spec, Direction::forward);
    const double base = 2.0 * std::numbers::pi / period;
    for (std::size_t k = 0; k < n; ++k) {
        const long kk = signed_bin(k, n);
        // The Nyquist mode has no well-defined odd derivative.
        if (order % 2 == 1 && n % 2 == 0 && k == n / 2) {
            spec[k] = 0.0;
            continue;
        }
        spec[k] *= std::pow(I * (base * static_cast<double>(kk)), order) / static_cast<double>(n);
    }
    transform(spec, Direction::backward);
    return spec;
}

Field upsample(const Field& f, std::size_t factor) {
    const std::size_t n = f.size();
    const std::size_t nf = n * factor;
    if (factor == 1) return f;
    Field spec = f;
    transform(spec, Direction::forward);
    Field fine(nf, 0.0);
    const std::size_t half = n / 2;
    for (std::size_t k = 0; k < half; ++k) fine[k] = spec[k];
    for (std::size_t k = half + 1; k < n; ++k) fine[nf - n + k] = spec[k];
    // Split the Nyquist coefficient so the interpolant stays reflection-symmetric.
    fine[half] = 0.5 * spec[half];
    fine[nf - half] = 0.5 * spec[half];
    transform(fine, Direction::backward);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& c : fine) c *= scale;
    return fine;
}

} // namespace ndnls::fft
