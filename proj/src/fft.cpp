// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#include "gpr/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace gpr::fft {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
// Plans are created once per (size, sign) and live for the process lifetime.
class PlanCache {
public:
    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
        fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                       reinterpret_cast<fftw_complex*>(out.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& [key, p] : plans_) fftw_destroy_plan(p);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

std::vector<cplx> run(std::vector<cplx> in, int sign) {
    std::vector<cplx> out(in.size());
    if (in.empty()) return out;
    fftw_plan p = cache().get(static_cast<int>(in.size()), sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace

std::vector<cplx> forward(std::span<const cplx> x) {
    return run(std::vector<cplx>(x.begin(), x.end()), FFTW_FORWARD);
}

std::vector<cplx> forward(std::span<const double> x) {
    std::vector<cplx> in(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) in[i] = x[i];
    return run(std::move(in), FFTW_FORWARD);
}

std::vector<cplx> inverse(std::span<const cplx> X) {
    auto out = run(std::vector<cplx>(X.begin(), X.end()), FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(X.size());
    for (auto& v : out) v *= scale;
    return out;
}

double bin_frequency(std::size_t k, std::size_t n) {
    const auto half = (n + 1) / 2;
    const double kk = k < half ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    return kk / static_cast<double>(n);
}

}  // namespace gpr::fft
