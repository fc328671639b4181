// Timing comparison of the FFT/OpenMP kernels against the serial direct-sum
// references, plus a correctness cross-check at each size.

#include "moyal/phasespace.hpp"
#include "moyal/serial_ref.hpp"
#include "moyal/states.hpp"
#include "moyal/weyl.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

using namespace moyal;

namespace {

template <typename F>
double time_of(F&& fn, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

double max_diff(const PhaseSpaceField& a, const PhaseSpaceField& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

}  // namespace

int main() {
    std::printf("%-28s %6s %12s %12s %9s %10s\n", "kernel", "n", "serial[s]",
                "fast[s]", "speedup", "max|diff|");

    for (int n : {16, 32, 64}) {
        GridSpec g(n, 16.0);
        WaveFunction psi = states::gaussian(g, 0.5, 0.4, 1.0);
        PhaseSpaceField ref, fast;
        double ts = time_of([&] { ref = serial_ref::wigner(psi); }, 3);
        double tf = time_of([&] { fast = phasespace::wigner(psi); }, 20);
        std::printf("%-28s %6d %12.3e %12.3e %9.1f %10.2e\n",
                    "wigner transform", n, ts, tf, ts / tf,
                    max_diff(fast, ref));
    }

    for (int n : {16, 32}) {
        GridSpec g(n, 12.0);
        PhaseSpaceField F =
            phasespace::wigner(states::gaussian(g, 0.3, -0.2, 0.9));
        PhaseSpaceField ref, fast;
        double ts = time_of([&] { ref = serial_ref::star_numeric(F, F); }, 1);
        double tf = time_of([&] { fast = weyl::star_numeric(F, F); }, 10);
        std::printf("%-28s %6d %12.3e %12.3e %9.1f %10.2e\n",
                    "star product", n, ts, tf, ts / tf, max_diff(fast, ref));
    }

    // large-grid throughput of the fast paths alone
    for (int n : {128, 256, 512}) {
        GridSpec g(n, 20.0);
        WaveFunction psi = states::gaussian(g, 0.5, 0.4, 1.0);
        PhaseSpaceField F, SS;
        double tw = time_of([&] { F = phasespace::wigner(psi); }, 5);
        double tstar = time_of([&] { SS = weyl::star_numeric(F, F); }, 2);
        std::printf("%-28s %6d %12s %12.3e %9s %10s\n", "wigner (fast only)",
                    n, "-", tw, "-", "-");
        std::printf("%-28s %6d %12s %12.3e %9s %10s\n", "star (fast only)", n,
                    "-", tstar, "-", "-");
    }
    return 0;
}
