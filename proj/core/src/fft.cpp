#include "intermap/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace intermap {
namespace {

std::mutex plan_mutex;

fftw_plan plan_for(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    const auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // Plan once on a scratch buffer; FFTW_UNALIGNED lets the plan execute
    // on arbitrary caller arrays via the new-array interface.
    std::vector<cdouble> scratch(n);
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, plan);
    return plan;
}

StateVector transform(const StateVector& in, int sign) {
    const std::size_t n = in.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw ConfigError("fourier transform: length must be a power of two");
    }
    StateVector out(n);
    fftw_plan plan = plan_for(n, sign);
    auto* src = reinterpret_cast<fftw_complex*>(
        const_cast<cdouble*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, src, dst);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (cdouble& z : out) z *= scale;
    return out;
}

}  // namespace

// FFTW's BACKWARD sign is e^{+2 i pi p q / N}, matching the W kernel.
StateVector fourier_to_momentum(const StateVector& position_amplitudes) {
    return transform(position_amplitudes, FFTW_BACKWARD);
}

StateVector fourier_to_position(const StateVector& momentum_amplitudes) {
    return transform(momentum_amplitudes, FFTW_FORWARD);
}

}  // namespace intermap
