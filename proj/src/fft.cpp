#include "moyal/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace moyal::fft {

namespace {

std::mutex plan_mutex;

fftw_plan get_plan(int n, int sign) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // UNALIGNED lets the plan execute on any buffer, so std::vector memory
    // works with the new-array interface.
    std::vector<fftw_complex> scratch(n);
    fftw_plan p = fftw_plan_dft_1d(n, scratch.data(), scratch.data(), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, p);
    return p;
}

}  // namespace

void forward(cplx* data, int n) {
    fftw_plan p = get_plan(n, FFTW_FORWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

void backward(cplx* data, int n) {
    fftw_plan p = get_plan(n, FFTW_BACKWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

}  // namespace moyal::fft
