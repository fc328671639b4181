#include "moyal/dynamics.hpp"

#include "moyal/fft.hpp"
#include "moyal/phasespace.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace moyal::dynamics {

namespace {

constexpr int kMaxPolyDegree = 6;

// signed FFT frequency for index l on an n-lattice with spacing d
double freq(int l, int n, double d) {
    int ls = l < n / 2 ? l : l - n;
    return 2.0 * GridSpec::pi() * ls / (n * d);
}

cplx phase(double a) { return {std::cos(a), std::sin(a)}; }

// coefficients c[k] of V = sum c_k x^k from the polynomial form
std::array<double, kMaxPolyDegree + 1> poly_coeffs(const symcalc::PolySymbol& V) {
    std::array<double, kMaxPolyDegree + 1> c{};
    for (const auto& [mono, coef] : V.terms())
        c[mono.kx] = static_cast<double>(coef.re);
    return c;
}

// d-th derivative of a sampled periodic function, spectral
std::vector<double> spectral_derivative(const std::vector<double>& f, int d,
                                        double dx) {
    const int n = int(f.size());
    std::vector<cplx> buf(f.begin(), f.end());
    fft::forward(buf);
    for (int l = 0; l < n; ++l) {
        cplx ik(0.0, freq(l, n, dx));
        cplx w = 1.0;
        for (int r = 0; r < d; ++r) w *= ik;
        buf[l] *= w / double(n);
    }
    fft::backward(buf);
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = buf[j].real();
    return out;
}

// d^order F / dp^order (axis = 1) or / dx^order (axis = 0), spectral
PhaseSpaceField field_derivative(const PhaseSpaceField& F, int axis, int order) {
    const int n = F.grid.n;
    const double d = axis == 0 ? F.grid.dx() : F.grid.dp();
    PhaseSpaceField out(F.grid, F.time);
    std::vector<cplx> weight(n);
    for (int l = 0; l < n; ++l) {
        cplx ik(0.0, freq(l, n, d));
        cplx w = 1.0;
        for (int r = 0; r < order; ++r) w *= ik;
        weight[l] = w / double(n);
    }
#pragma omp parallel
    {
        std::vector<cplx> line(n);
#pragma omp for
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b)
                line[b] = axis == 0 ? F.at(b, a) : F.at(a, b);
            fft::forward(line.data(), n);
            for (int l = 0; l < n; ++l) line[l] *= weight[l];
            fft::backward(line.data(), n);
            for (int b = 0; b < n; ++b)
                (axis == 0 ? out.at(b, a) : out.at(a, b)) = line[b];
        }
    }
    return out;
}

void record(std::vector<PhaseSpaceField>& series, const PhaseSpaceField& F,
            int step, const EvolutionConfig& cfg) {
    if ((step + 1) % cfg.record_every == 0 || step + 1 == cfg.steps)
        series.push_back(F);
}

void record(std::vector<WaveFunction>& series, const WaveFunction& psi, int step,
            const EvolutionConfig& cfg) {
    if ((step + 1) % cfg.record_every == 0 || step + 1 == cfg.steps)
        series.push_back(psi);
}

// One split-step substep pair shared by the quantum and classical flows.
struct PhaseSpaceStepper {
    const GridSpec grid;
    std::vector<cplx> pot_half;  // n*n phases in the (x, tau) representation
    std::vector<cplx> kin;       // n*n phases, kappa-major, for the x-shear

    PhaseSpaceStepper(const GridSpec& g, const HamiltonianSpec& H, double dt,
                      bool classical)
        : grid(g), pot_half(size_t(g.n) * g.n, cplx(1.0)),
          kin(size_t(g.n) * g.n) {
        const int n = g.n;
        std::vector<double> V = H.potential_values(g, 0);
        std::vector<double> dV = H.potential_values(g, 1);
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m) {
                int ms = m < n / 2 ? m : m - n;
                int lo = j - ms, hi = j + ms;
                if (lo < 0 || lo >= n || hi < 0 || hi >= n) continue;
                double dv = classical ? dV[j] * (2.0 * ms * g.dx())
                                      : V[hi] - V[lo];
                pot_half[size_t(j) * n + m] = phase(-dv * dt / (2.0 * g.hbar));
            }
        for (int l = 0; l < n; ++l) {
            double kappa = freq(l, n, g.dx());
            for (int k = 0; k < n; ++k)
                kin[size_t(l) * n + k] = phase(-kappa * g.p(k) * dt / H.mass);
        }
    }

    void potential_half(PhaseSpaceField& F) const {
        const int n = grid.n;
#pragma omp parallel
        {
            std::vector<cplx> row(n);
#pragma omp for
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) row[k] = F.at(j, k);
                fft::backward(row.data(), n);
                for (int m = 0; m < n; ++m)
                    row[m] *= pot_half[size_t(j) * n + m] / double(n);
                fft::forward(row.data(), n);
                for (int k = 0; k < n; ++k) F.at(j, k) = row[k];
            }
        }
    }

    void kinetic_full(PhaseSpaceField& F) const {
        const int n = grid.n;
#pragma omp parallel
        {
            std::vector<cplx> col(n);
#pragma omp for
            for (int k = 0; k < n; ++k) {
                for (int j = 0; j < n; ++j) col[j] = F.at(j, k);
                fft::forward(col.data(), n);
                for (int l = 0; l < n; ++l)
                    col[l] *= kin[size_t(l) * n + k] / double(n);
                fft::backward(col.data(), n);
                for (int j = 0; j < n; ++j) F.at(j, k) = col[j];
            }
        }
    }
};

PhaseSpaceField bracket_rhs(const PhaseSpaceField& F, const HamiltonianSpec& H,
                            bool classical) {
    const GridSpec& g = F.grid;
    const int n = g.n;
    std::vector<double> dV = H.potential_values(g, 1);
    PhaseSpaceField Fx = field_derivative(F, 0, 1);
    PhaseSpaceField Fp = field_derivative(F, 1, 1);
    PhaseSpaceField out(g, F.time);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            out.at(j, k) = -(g.p(k) / H.mass) * Fx.at(j, k) +
                           dV[j] * Fp.at(j, k);
    if (!classical) {
        std::vector<double> d3V = H.potential_values(g, 3);
        bool any3 = std::any_of(d3V.begin(), d3V.end(),
                                [](double v) { return v != 0.0; });
        if (any3) {
            PhaseSpaceField F3 = field_derivative(F, 1, 3);
            double c = g.hbar * g.hbar / 24.0;
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    out.at(j, k) -= c * d3V[j] * F3.at(j, k);
        }
        std::vector<double> d5V = H.potential_values(g, 5);
        bool any5 = std::any_of(d5V.begin(), d5V.end(),
                                [](double v) { return v != 0.0; });
        if (any5) {
            PhaseSpaceField F5 = field_derivative(F, 1, 5);
            double c = std::pow(g.hbar, 4) / 1920.0;
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    out.at(j, k) += c * d5V[j] * F5.at(j, k);
        }
    }
    return out;
}

std::vector<PhaseSpaceField> evolve_phase_space(const PhaseSpaceField& F0,
                                                const HamiltonianSpec& H,
                                                const EvolutionConfig& cfg,
                                                bool classical) {
    H.validate(F0.grid);
    cfg.validate();
    std::vector<PhaseSpaceField> series;
    series.push_back(F0);
    PhaseSpaceField F = F0;

    if (cfg.scheme == Scheme::SplitStep) {
        PhaseSpaceStepper stepper(F0.grid, H, cfg.dt, classical);
        for (int s = 0; s < cfg.steps; ++s) {
            stepper.potential_half(F);
            stepper.kinetic_full(F);
            stepper.potential_half(F);
            F.time += cfg.dt;
            record(series, F, s, cfg);
        }
    } else {
        if (H.tabulated() && !classical)
            throw Error("rk4-series scheme needs a polynomial potential");
        const double dt = cfg.dt;
        auto axpy = [](PhaseSpaceField& y, double a, const PhaseSpaceField& x) {
            for (size_t i = 0; i < y.values.size(); ++i)
                y.values[i] += a * x.values[i];
        };
        for (int s = 0; s < cfg.steps; ++s) {
            PhaseSpaceField k1 = bracket_rhs(F, H, classical);
            PhaseSpaceField t = F;
            axpy(t, dt / 2, k1);
            PhaseSpaceField k2 = bracket_rhs(t, H, classical);
            t = F;
            axpy(t, dt / 2, k2);
            PhaseSpaceField k3 = bracket_rhs(t, H, classical);
            t = F;
            axpy(t, dt, k3);
            PhaseSpaceField k4 = bracket_rhs(t, H, classical);
            axpy(F, dt / 6, k1);
            axpy(F, dt / 3, k2);
            axpy(F, dt / 3, k3);
            axpy(F, dt / 6, k4);
            F.time += dt;
            record(series, F, s, cfg);
        }
    }
    return series;
}

}  // namespace

void HamiltonianSpec::validate(const GridSpec& g) const {
    if (mass <= 0) throw Error("HamiltonianSpec: mass must be positive");
    if (tabulated()) {
        if (int(table.size()) != g.n)
            throw Error("HamiltonianSpec: potential table size must match the grid");
        return;
    }
    for (const auto& [mono, coef] : potential.terms()) {
        if (mono.kp != 0 || mono.kh != 0)
            throw Error("HamiltonianSpec: potential must depend on x only");
        if (coef.im != 0)
            throw Error("HamiltonianSpec: potential must be real");
        if (int(mono.kx) > kMaxPolyDegree)
            throw Error("HamiltonianSpec: potential degree above 6");
    }
}

std::vector<double> HamiltonianSpec::potential_values(const GridSpec& g,
                                                      int d) const {
    if (tabulated()) {
        if (d == 0) return table;
        return spectral_derivative(table, d, g.dx());
    }
    auto c = poly_coeffs(potential);
    // d-th derivative coefficients: c_k <- c_{k+d} (k+d)! / k!
    std::array<double, kMaxPolyDegree + 1> cd{};
    for (int k = 0; k + d <= kMaxPolyDegree; ++k) {
        double f = 1.0;
        for (int r = k + 1; r <= k + d; ++r) f *= r;
        cd[k] = c[k + d] * f;
    }
    std::vector<double> out(g.n);
    for (int j = 0; j < g.n; ++j) {
        double x = g.x(j), v = 0.0;
        for (int k = kMaxPolyDegree; k >= 0; --k) v = v * x + cd[k];
        out[j] = v;
    }
    return out;
}

HamiltonianSpec HamiltonianSpec::free_particle(double mass) {
    return {mass, {}, {}};
}

HamiltonianSpec HamiltonianSpec::harmonic(double mass, double omega) {
    // V = (m omega^2 / 2) x^2; exact rational only when the coefficient is —
    // store through from_coefficients for uniformity.
    return from_coefficients({0.0, 0.0, 0.5 * mass * omega * omega}, mass);
}

HamiltonianSpec HamiltonianSpec::from_coefficients(
    const std::vector<double>& coeffs, double mass) {
    if (int(coeffs.size()) > kMaxPolyDegree + 1)
        throw Error("HamiltonianSpec: potential degree above 6");
    symcalc::PolySymbol V;
    for (unsigned k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0.0) continue;
        V.add_term({k, 0, 0},
                   symcalc::CRational(symcalc::Rational(coeffs[k])));
    }
    return {mass, std::move(V), {}};
}

void EvolutionConfig::validate() const {
    if (dt <= 0) throw Error("EvolutionConfig: dt must be positive");
    if (steps <= 0) throw Error("EvolutionConfig: steps must be positive");
    if (record_every <= 0)
        throw Error("EvolutionConfig: record_every must be positive");
}

std::vector<WaveFunction> schrodinger_evolve(const WaveFunction& psi0,
                                             const HamiltonianSpec& H,
                                             const EvolutionConfig& cfg) {
    const GridSpec& g = psi0.grid;
    H.validate(g);
    cfg.validate();
    const int n = g.n;
    std::vector<double> V = H.potential_values(g, 0);
    std::vector<cplx> vh(n), kin(n);
    for (int j = 0; j < n; ++j)
        vh[j] = phase(-V[j] * cfg.dt / (2.0 * g.hbar));
    for (int l = 0; l < n; ++l) {
        double p = g.hbar * freq(l, n, g.dx());
        kin[l] = phase(-p * p * cfg.dt / (2.0 * H.mass * g.hbar)) / double(n);
    }

    std::vector<WaveFunction> series;
    series.push_back(psi0);
    WaveFunction psi = psi0;
    for (int s = 0; s < cfg.steps; ++s) {
        for (int j = 0; j < n; ++j) psi.values[j] *= vh[j];
        fft::forward(psi.values);
        for (int l = 0; l < n; ++l) psi.values[l] *= kin[l];
        fft::backward(psi.values);
        for (int j = 0; j < n; ++j) psi.values[j] *= vh[j];
        psi.time += cfg.dt;
        record(series, psi, s, cfg);
    }
    return series;
}

std::vector<PhaseSpaceField> moyal_evolve(const PhaseSpaceField& F0,
                                          const HamiltonianSpec& H,
                                          const EvolutionConfig& cfg) {
    return evolve_phase_space(F0, H, cfg, false);
}

std::vector<PhaseSpaceField> classical_liouville_evolve(
    const PhaseSpaceField& F0, const HamiltonianSpec& H,
    const EvolutionConfig& cfg) {
    return evolve_phase_space(F0, H, cfg, true);
}

PhaseSpaceField moyal_rhs(const PhaseSpaceField& F, const HamiltonianSpec& H) {
    H.validate(F.grid);
    return bracket_rhs(F, H, false);
}

PhaseSpaceField hamiltonian_symbol(const HamiltonianSpec& H, const GridSpec& g) {
    std::vector<double> V = H.potential_values(g, 0);
    PhaseSpaceField out(g);
    for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k) {
            double p = g.p(k);
            out.at(j, k) = p * p / (2.0 * H.mass) + V[j];
        }
    return out;
}

PhaseSpaceField baker_with_hamiltonian(const HamiltonianSpec& H,
                                       const PhaseSpaceField& F) {
    H.validate(F.grid);
    const GridSpec& g = F.grid;
    const int n = g.n;
    PhaseSpaceField out = hamiltonian_symbol(H, g);
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] *= F.values[i];
    out.time = F.time;

    const double h2 = g.hbar * g.hbar;
    PhaseSpaceField Fxx = field_derivative(F, 0, 2);
    PhaseSpaceField Fpp = field_derivative(F, 1, 2);
    std::vector<double> d2V = H.potential_values(g, 2);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            out.at(j, k) -= (h2 / 8.0) * (Fxx.at(j, k) / H.mass +
                                          d2V[j] * Fpp.at(j, k));

    std::vector<double> d4V = H.potential_values(g, 4);
    if (std::any_of(d4V.begin(), d4V.end(), [](double v) { return v != 0.0; })) {
        PhaseSpaceField F4 = field_derivative(F, 1, 4);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                out.at(j, k) += (h2 * h2 / 384.0) * d4V[j] * F4.at(j, k);
    }
    std::vector<double> d6V = H.potential_values(g, 6);
    if (std::any_of(d6V.begin(), d6V.end(), [](double v) { return v != 0.0; })) {
        PhaseSpaceField F6 = field_derivative(F, 1, 6);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                out.at(j, k) -= (h2 * h2 * h2 / 46080.0) * d6V[j] * F6.at(j, k);
    }
    return out;
}

PhaseSpaceField star_hamiltonian_left(const HamiltonianSpec& H,
                                      const PhaseSpaceField& F) {
    // H * F = {H,F}_BB + (i hbar / 2) {H,F}_MB
    PhaseSpaceField out = baker_with_hamiltonian(H, F);
    PhaseSpaceField mb = bracket_rhs(F, H, false);
    cplx w(0.0, F.grid.hbar / 2.0);
    for (size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += w * mb.values[i];
    return out;
}

PhaseSpaceField star_hamiltonian_right(const HamiltonianSpec& H,
                                       const PhaseSpaceField& F) {
    PhaseSpaceField out = baker_with_hamiltonian(H, F);
    PhaseSpaceField mb = bracket_rhs(F, H, false);
    cplx w(0.0, -F.grid.hbar / 2.0);
    for (size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += w * mb.values[i];
    return out;
}

BakerEnergyCheck baker_energy_field(const WaveFunction& before,
                                    const WaveFunction& after,
                                    const HamiltonianSpec& H) {
    require_same_grid(before.grid, after.grid);
    const double dt = after.time - before.time;
    if (dt <= 0) throw Error("baker_energy_field: snapshots out of order");
    const int n = before.grid.n;

    WaveFunction mid(before.grid, 0.5 * (before.time + after.time));
    WaveFunction dpsi(before.grid, mid.time);
    for (int j = 0; j < n; ++j) {
        mid.values[j] = 0.5 * (before.values[j] + after.values[j]);
        dpsi.values[j] = (after.values[j] - before.values[j]) / dt;
    }

    BakerEnergyCheck out{
        baker_with_hamiltonian(H, phasespace::cross_wigner(mid, mid)),
        PhaseSpaceField(before.grid, mid.time), 0.0};

    PhaseSpaceField wa = phasespace::cross_wigner(mid, dpsi);
    PhaseSpaceField wb = phasespace::cross_wigner(dpsi, mid);
    cplx w(0.0, before.grid.hbar / 2.0);
    for (size_t i = 0; i < wa.values.size(); ++i)
        out.time_side.values[i] = w * (wa.values[i] - wb.values[i]);

    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < wa.values.size(); ++i) {
        num += std::norm(out.bracket.values[i] - out.time_side.values[i]);
        den += std::norm(out.bracket.values[i]);
    }
    out.relative_gap = std::sqrt(num / den);
    return out;
}

double cross_energy_check(const WaveFunction& psi1, double e1,
                          const WaveFunction& psi2, double e2,
                          const HamiltonianSpec& H) {
    PhaseSpaceField F12 = phasespace::cross_wigner(psi1, psi2);
    PhaseSpaceField bb = baker_with_hamiltonian(H, F12);
    const double mean = 0.5 * (e1 + e2);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < bb.values.size(); ++i) {
        num += std::norm(bb.values[i] - mean * F12.values[i]);
        den += std::norm(F12.values[i]);
    }
    return std::sqrt(num / den);
}

WaveFunction apply_hamiltonian(const WaveFunction& psi, const HamiltonianSpec& H) {
    const GridSpec& g = psi.grid;
    H.validate(g);
    const int n = g.n;
    std::vector<cplx> kinbuf = psi.values;
    fft::forward(kinbuf);
    for (int l = 0; l < n; ++l) {
        double p = g.hbar * freq(l, n, g.dx());
        kinbuf[l] *= p * p / (2.0 * H.mass * n);
    }
    fft::backward(kinbuf);
    std::vector<double> V = H.potential_values(g, 0);
    WaveFunction out(g, psi.time);
    for (int j = 0; j < n; ++j)
        out.values[j] = kinbuf[j] + V[j] * psi.values[j];
    return out;
}

double energy_expectation(const WaveFunction& psi, const HamiltonianSpec& H) {
    WaveFunction hpsi = apply_hamiltonian(psi, H);
    cplx acc = 0.0;
    for (int j = 0; j < psi.grid.n; ++j)
        acc += std::conj(psi.values[j]) * hpsi.values[j];
    return acc.real() * psi.grid.dx();
}

PolarFields polar_decompose(const WaveFunction& psi) {
    const int n = psi.grid.n;
    const double mask_level = 1e-8;
    PolarFields pf{psi.grid, std::vector<double>(n), std::vector<double>(n, 0.0),
                   std::vector<char>(n, 0)};
    bool have_prev = false;
    double prev = 0.0;
    for (int j = 0; j < n; ++j) {
        pf.amplitude[j] = std::abs(psi.values[j]);
        if (pf.amplitude[j] < mask_level) {
            pf.mask[j] = 1;
            have_prev = false;  // next segment unwraps from scratch
            continue;
        }
        double phi = std::arg(psi.values[j]);
        if (have_prev) {
            const double two_pi = 2.0 * GridSpec::pi();
            while (phi - prev > GridSpec::pi()) phi -= two_pi;
            while (phi - prev < -GridSpec::pi()) phi += two_pi;
        }
        pf.phase[j] = psi.grid.hbar * phi;
        prev = phi;
        have_prev = true;
    }
    return pf;
}

std::vector<double> quantum_potential(const PolarFields& pf, double mass,
                                      double sign) {
    const int n = pf.grid.n;
    std::vector<double> rpp = spectral_derivative(pf.amplitude, 2, pf.grid.dx());
    std::vector<double> out(n, 0.0);
    const double c = pf.grid.hbar * pf.grid.hbar / (2.0 * mass);
    for (int j = 0; j < n; ++j)
        if (!pf.mask[j]) out[j] = sign * (-c) * rpp[j] / pf.amplitude[j];
    return out;
}

std::vector<double> qhj_residual(const WaveFunction& before,
                                 const WaveFunction& after,
                                 const HamiltonianSpec& H, double q_sign) {
    require_same_grid(before.grid, after.grid);
    const GridSpec& g = before.grid;
    H.validate(g);
    const double dt = after.time - before.time;
    if (dt <= 0) throw Error("qhj_residual: snapshots out of order");
    const int n = g.n;
    const double tail = 1e-5;

    std::vector<cplx> mid(n), dpsi(n);
    for (int j = 0; j < n; ++j) {
        mid[j] = 0.5 * (before.values[j] + after.values[j]);
        dpsi[j] = (after.values[j] - before.values[j]) / dt;
    }

    // spectral d psi / dx of the midpoint state
    std::vector<cplx> dmid = mid;
    fft::forward(dmid);
    for (int l = 0; l < n; ++l)
        dmid[l] *= cplx(0.0, freq(l, n, g.dx())) / double(n);
    fft::backward(dmid);

    std::vector<double> R(n);
    for (int j = 0; j < n; ++j) R[j] = std::abs(mid[j]);
    std::vector<double> rpp = spectral_derivative(R, 2, g.dx());
    std::vector<double> V = H.potential_values(g, 0);

    std::vector<double> out(n, 0.0);
    const double qc = g.hbar * g.hbar / (2.0 * H.mass);
    for (int j = 0; j < n; ++j) {
        if (R[j] < tail) continue;
        double r2 = R[j] * R[j];
        // local phase derivatives: dS = hbar Im(psi* d psi) / |psi|^2
        double dtS = g.hbar * (std::conj(mid[j]) * dpsi[j]).imag() / r2;
        double dxS = g.hbar * (std::conj(mid[j]) * dmid[j]).imag() / r2;
        double Q = q_sign * (-qc) * rpp[j] / R[j];
        out[j] = dtS + dxS * dxS / (2.0 * H.mass) + Q + V[j];
    }
    return out;
}

}  // namespace moyal::dynamics
