#include "moyal/phasespace.hpp"

#include "moyal/fft.hpp"
#include "moyal/weyl.hpp"

#include <algorithm>
#include <cmath>

namespace moyal::phasespace {

namespace {

// Shared bilinear transform behind wigner and cross_wigner:
// W[phi, chi](x, p) = (1/2 pi hbar) int phi*(x - tau/2) chi(x + tau/2)
//                     e^{-i p tau / hbar} dtau
PhaseSpaceField bilinear_wigner(const WaveFunction& phi, const WaveFunction& chi) {
    require_same_grid(phi.grid, chi.grid);
    const int n = phi.grid.n;
    const double pref = phi.grid.dx() / (GridSpec::pi() * phi.grid.hbar);
    PhaseSpaceField out(phi.grid, chi.time);

#pragma omp parallel
    {
        std::vector<cplx> row(n);
#pragma omp for
        for (int j = 0; j < n; ++j) {
            for (int m = 0; m < n; ++m) {
                // signed tau offset; x +- tau/2 outside the box contributes
                // nothing (no periodic wrap, which would alias the state onto
                // the antipodal edge)
                int ms = m < n / 2 ? m : m - n;
                int lo = j - ms;
                int hi = j + ms;
                row[m] = (lo < 0 || lo >= n || hi < 0 || hi >= n)
                             ? cplx(0.0)
                             : std::conj(phi.values[lo]) * chi.values[hi] *
                                   double(m % 2 ? -1 : 1);
            }
            fft::forward(row.data(), n);
            for (int k = 0; k < n; ++k) out.at(j, k) = row[k] * pref;
        }
    }
    return out;
}

}  // namespace

PhaseSpaceField wigner(const WaveFunction& psi) {
    PhaseSpaceField F = bilinear_wigner(psi, psi);
    double worst = 0.0;
    for (const cplx& v : F.values) worst = std::max(worst, std::abs(v.imag()));
    if (worst > 1e-8)
        throw Error("wigner: imaginary residue " + std::to_string(worst) +
                    " exceeds 1e-8");
    for (cplx& v : F.values) v = v.real();
    return F;
}

PhaseSpaceField cross_wigner(const WaveFunction& psi, const WaveFunction& phi) {
    return bilinear_wigner(psi, phi);
}

CharacteristicField characteristic_function(const WaveFunction& psi) {
    const int n = psi.grid.n;
    const double dx = psi.grid.dx();
    CharacteristicField M(psi.grid, psi.time);

#pragma omp parallel
    {
        std::vector<cplx> row(n);
#pragma omp for
        for (int m = 0; m < n; ++m) {
            // signed tau offset, same no-wrap convention as the distribution
            int ms = m < n / 2 ? m : m - n;
            // e^{i theta_l x_j} = (-1)^{l - n/2} (-1)^j e^{2 pi i j l / n}
            for (int j = 0; j < n; ++j) {
                int lo = j - ms;
                int hi = j + ms;
                row[j] = (lo < 0 || lo >= n || hi < 0 || hi >= n)
                             ? cplx(0.0)
                             : std::conj(psi.values[lo]) * psi.values[hi] * dx *
                                   double(j % 2 ? -1 : 1);
            }
            fft::backward(row.data(), n);
            for (int l = 0; l < n; ++l)
                M.at(m, l) = row[l] * double((l - n / 2) % 2 ? -1 : 1);
        }
    }
    return M;
}

PhaseSpaceField char_to_distribution(const CharacteristicField& M) {
    const int n = M.grid.n;
    const double dtheta = 2.0 * GridSpec::pi() / M.grid.length;
    const double dtau = M.grid.dtau();
    // dtheta is applied in stage 1, so only dtau / (2 pi) (2 pi hbar) here
    const double pref =
        dtau / (4.0 * GridSpec::pi() * GridSpec::pi() * M.grid.hbar);

    // stage 1: C(m, j) = sum_l M(m, l) e^{-i theta_l x_j} dtheta
    std::vector<cplx> mixed(size_t(n) * n);
#pragma omp parallel
    {
        std::vector<cplx> row(n);
#pragma omp for
        for (int m = 0; m < n; ++m) {
            for (int l = 0; l < n; ++l)
                row[l] = M.at(m, l) * double((l - n / 2) % 2 ? -1 : 1);
            fft::forward(row.data(), n);
            for (int j = 0; j < n; ++j)
                mixed[size_t(m) * n + j] = row[j] * double(j % 2 ? -1 : 1) * dtheta;
        }
    }

    // stage 2: F(j, k) = pref' sum_m C(m, j) e^{-i p_k tau_m / hbar} dtau
    PhaseSpaceField F(M.grid, M.time);
#pragma omp parallel
    {
        std::vector<cplx> col(n);
#pragma omp for
        for (int j = 0; j < n; ++j) {
            for (int m = 0; m < n; ++m)
                col[m] = mixed[size_t(m) * n + j] * double(m % 2 ? -1 : 1);
            fft::forward(col.data(), n);
            for (int k = 0; k < n; ++k) F.at(j, k) = col[k] * pref;
        }
    }
    return F;
}

Marginals marginals(const PhaseSpaceField& F) {
    const int n = F.grid.n;
    Marginals out;
    out.position.assign(n, 0.0);
    out.momentum.assign(n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double v = F.at(j, k).real();
            out.position[j] += v;
            out.momentum[k] += v;
        }
    for (double& v : out.position) v *= F.grid.dp();
    for (double& v : out.momentum) v *= F.grid.dx();
    return out;
}

cplx expectation(const PhaseSpaceField& F, const PhaseSpaceField& a) {
    require_same_grid(F.grid, a.grid);
    cplx acc = 0.0;
    for (size_t i = 0; i < F.values.size(); ++i) acc += a.values[i] * F.values[i];
    return acc * F.grid.dx() * F.grid.dp();
}

Negativity negativity(const PhaseSpaceField& F) {
    const int n = F.grid.n;
    Negativity out{0.0, 0.0, 0.0, 0.0};
    bool first = true;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double v = F.at(j, k).real();
            if (first || v < out.min_value) {
                out.min_value = v;
                out.x = F.grid.x(j);
                out.p = F.grid.p(k);
                first = false;
            }
            if (v < 0) out.negative_mass += v;
        }
    out.negative_mass *= F.grid.dx() * F.grid.dp();
    return out;
}

double purity(const PhaseSpaceField& F) {
    double acc = 0.0;
    for (const cplx& v : F.values) acc += v.real() * v.real();
    return acc * 2.0 * GridSpec::pi() * F.grid.hbar * F.grid.dx() * F.grid.dp();
}

double field_norm2(const PhaseSpaceField& F) {
    double acc = 0.0;
    for (const cplx& v : F.values) acc += std::norm(v);
    return std::sqrt(acc * F.grid.dx() * F.grid.dp());
}

double purity_check(const PhaseSpaceField& F) {
    const double scale = 2.0 * GridSpec::pi() * F.grid.hbar;
    double mass = 0.0;
    for (const cplx& v : F.values) mass += v.real();
    mass *= F.grid.dx() * F.grid.dp();
    if (std::abs(mass - 1.0) > 1e-6)
        throw Error("purity_check: field is not normalized (mass " +
                    std::to_string(mass) + ")");

    PhaseSpaceField ss = weyl::star_numeric(F, F);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < F.values.size(); ++i) {
        num += std::norm(scale * ss.values[i] - F.values[i]);
        den += std::norm(F.values[i]);
    }
    return std::sqrt(num / den);
}

DensityMatrixField density_matrix(const WaveFunction& psi) {
    const int n = psi.grid.n;
    DensityMatrixField rho(psi.grid);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            rho.at(a, b) = psi.values[a] * std::conj(psi.values[b]);
    return rho;
}

DensityMatrixField density_from_wigner(const PhaseSpaceField& F) {
    PhaseSpaceField scaled = F;
    const double s = 2.0 * GridSpec::pi() * F.grid.hbar;
    for (cplx& v : scaled.values) v *= s;
    weyl::OperatorKernel K = weyl::weyl_quantize(scaled);
    DensityMatrixField rho(F.grid);
    rho.values = std::move(K.values);
    return rho;
}

WaveFunction recover_wavefunction(const PhaseSpaceField& F) {
    double residual = purity_check(F);
    if (residual > 1e-4)
        throw Error("recover_wavefunction: non-pure input (idempotency residual " +
                    std::to_string(residual) + ")");

    DensityMatrixField rho = density_from_wigner(F);
    const int n = F.grid.n;

    std::vector<double> amp(n);
    int peak = 0;
    for (int j = 0; j < n; ++j) {
        amp[j] = std::sqrt(std::max(rho.at(j, j).real(), 0.0));
        if (amp[j] > amp[peak]) peak = j;
    }

    const double mask = 1e-8;
    // rho(j, peak) = psi(x_j) psi*(x_peak) hands every phase relative to the
    // peak directly; the peak column stays above the noise floor wherever the
    // amplitude itself does.
    std::vector<double> phase(n, 0.0);
    for (int j = 0; j < n; ++j)
        if (amp[j] >= mask) phase[j] = std::arg(rho.at(j, peak));

    WaveFunction g(F.grid, F.time);
    for (int j = 0; j < n; ++j)
        g.values[j] = amp[j] < mask
                          ? cplx(0.0)
                          : amp[j] * cplx(std::cos(phase[j]), std::sin(phase[j]));
    g.renormalize();
    return g;
}

}  // namespace moyal::phasespace
