#include "moyal/serial_ref.hpp"

#include <cmath>

namespace moyal::serial_ref {

PhaseSpaceField wigner(const WaveFunction& psi) {
    const int n = psi.grid.n;
    const double hbar = psi.grid.hbar;
    const double dtau = psi.grid.dtau();
    const double pref = dtau / (2.0 * GridSpec::pi() * hbar);
    PhaseSpaceField out(psi.grid, psi.time);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double p = psi.grid.p(k);
            cplx acc = 0.0;
            for (int m = 0; m < n; ++m) {
                // signed tau; x +- tau/2 beyond the box contributes nothing
                int ms = m < n / 2 ? m : m - n;
                int lo = j - ms, hi = j + ms;
                if (lo < 0 || lo >= n || hi < 0 || hi >= n) continue;
                double tau = ms * dtau;
                cplx v = std::conj(psi.values[lo]) * psi.values[hi];
                double arg = -p * tau / hbar;
                acc += v * cplx(std::cos(arg), std::sin(arg));
            }
            out.at(j, k) = acc * pref;
        }
    return out;
}

PhaseSpaceField star_numeric(const PhaseSpaceField& a, const PhaseSpaceField& b) {
    require_same_grid(a.grid, b.grid);
    const int n = a.grid.n;
    const GridSpec& g = a.grid;
    const double hbar = g.hbar;
    const double w = g.dx() * g.dp() / (GridSpec::pi() * hbar);
    PhaseSpaceField out(g, a.time);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double x = g.x(j), p = g.p(k);
            cplx acc = 0.0;
            for (int j1 = 0; j1 < n; ++j1)
                for (int k1 = 0; k1 < n; ++k1) {
                    cplx av = a.at(j1, k1);
                    if (av == cplx(0.0)) continue;
                    double x1 = g.x(j1), p1 = g.p(k1);
                    for (int j2 = 0; j2 < n; ++j2)
                        for (int k2 = 0; k2 < n; ++k2) {
                            double x2 = g.x(j2), p2 = g.p(k2);
                            double arg = 2.0 / hbar *
                                         ((x - x1) * (p - p2) - (x - x2) * (p - p1));
                            acc += av * b.at(j2, k2) *
                                   cplx(std::cos(arg), std::sin(arg));
                        }
                }
            out.at(j, k) = acc * w * w;
        }
    return out;
}

}  // namespace moyal::serial_ref
