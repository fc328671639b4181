#include "moyal/weyl.hpp"

#include "moyal/fft.hpp"

#include <cmath>

namespace moyal::weyl {

double OperatorKernel::max_asymmetry() const {
    double worst = 0.0;
    for (int a = 0; a < grid.n; ++a)
        for (int b = 0; b <= a; ++b)
            worst = std::max(worst, std::abs(at(a, b) - std::conj(at(b, a))));
    return worst;
}

PhaseSpaceField weyl_symbol(const OperatorKernel& A) {
    const int n = A.grid.n;
    const double dtau = A.grid.dtau();
    PhaseSpaceField out(A.grid);

#pragma omp parallel
    {
        std::vector<cplx> row(n);
#pragma omp for
        for (int j = 0; j < n; ++j) {
            for (int m = 0; m < n; ++m) {
                // signed tau offset without periodic wrap, matching the
                // quantization inverse on the even-offset sector
                int ms = m < n / 2 ? m : m - n;
                int a = j + ms;
                int b = j - ms;
                // e^{-i p_k tau_m / hbar} = (-1)^m e^{-2 pi i k m / n}
                row[m] = (a < 0 || a >= n || b < 0 || b >= n)
                             ? cplx(0.0)
                             : A.at(a, b) * double(m % 2 ? -1 : 1);
            }
            fft::forward(row.data(), n);
            for (int k = 0; k < n; ++k) out.at(j, k) = row[k] * dtau;
        }
    }
    return out;
}

OperatorKernel weyl_quantize(const PhaseSpaceField& a) {
    const int n = a.grid.n;
    const int n2 = 2 * n;
    const double dp = a.grid.dp();
    const double pref = dp / (2.0 * GridSpec::pi() * a.grid.hbar);

    // Symbol sampled on the doubled-x midpoint lattice: ext(s, k) with
    // x = -L/2 + s dx/2.  Odd s comes from band-limited interpolation.
    std::vector<cplx> ext(size_t(n2) * n);
#pragma omp parallel
    {
        std::vector<cplx> col(n);
#pragma omp for
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) col[j] = a.at(j, k);
            fft::forward(col.data(), n);
            // half-sample shift: multiply mode l by e^{i pi l~ / n}
            for (int l = 0; l < n; ++l) {
                int ls = l < n / 2 ? l : l - n;
                if (l == n / 2) {
                    col[l] = 0.0;  // Nyquist bin has no symmetric half-shift
                    continue;
                }
                double ph = GridSpec::pi() * double(ls) / n;
                col[l] *= cplx(std::cos(ph), std::sin(ph));
            }
            fft::backward(col.data(), n);
            for (int j = 0; j < n; ++j) {
                ext[size_t(2 * j) * n + k] = a.at(j, k);
                ext[size_t(2 * j + 1) * n + k] = col[j] / double(n);
            }
        }
    }

    // B_s[d] = sum_k ext(s, k) e^{i pi (k - n/2) d / n}, via a zero-padded
    // length-2n transform.
    std::vector<cplx> bmat(size_t(n2) * n2);
#pragma omp parallel
    {
        std::vector<cplx> z(n2);
#pragma omp for
        for (int s = 0; s < n2; ++s) {
            for (int k = 0; k < n; ++k) z[k] = ext[size_t(s) * n + k];
            for (int k = n; k < n2; ++k) z[k] = 0.0;
            fft::backward(z.data(), n2);  // sum_k z_k e^{+2 pi i k d / (2n)}
            for (int d = 0; d < n2; ++d) {
                // e^{-i pi d~ / 2}; d~ is the signed offset, period 4 phase
                int ds = d < n ? d : d - n2;
                double ph = -GridSpec::pi() * double(ds) / 2.0;
                bmat[size_t(s) * n2 + d] = z[d] * cplx(std::cos(ph), std::sin(ph));
            }
        }
    }

    OperatorKernel A(a.grid);
#pragma omp parallel for
    for (int ai = 0; ai < n; ++ai)
        for (int b = 0; b < n; ++b) {
            int s = ai + b;
            int d = (ai - b + n2) % n2;
            A.at(ai, b) = pref * bmat[size_t(s) * n2 + d];
        }
    return A;
}

WaveFunction apply_kernel(const OperatorKernel& A, const WaveFunction& psi) {
    require_same_grid(A.grid, psi.grid);
    const int n = A.grid.n;
    const double dx = A.grid.dx();
    WaveFunction out(psi.grid, psi.time);
#pragma omp parallel for
    for (int a = 0; a < n; ++a) {
        cplx acc = 0.0;
        for (int b = 0; b < n; ++b) acc += A.at(a, b) * psi.values[b];
        out.values[a] = acc * dx;
    }
    return out;
}

OperatorKernel kernel_product(const OperatorKernel& A, const OperatorKernel& B) {
    require_same_grid(A.grid, B.grid);
    const int n = A.grid.n;
    const double dx = A.grid.dx();
    OperatorKernel C(A.grid);
#pragma omp parallel for
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            cplx v = A.at(a, c) * dx;
            if (v == cplx(0.0)) continue;
            for (int b = 0; b < n; ++b) C.at(a, b) += v * B.at(c, b);
        }
    return C;
}

cplx trace(const OperatorKernel& A) {
    cplx t = 0.0;
    for (int a = 0; a < A.grid.n; ++a) t += A.at(a, a);
    return t * A.grid.dx();
}

namespace {

// Mixed representation: mt(j, m) = sum_k f(j, k) e^{-i p_k tau_m / hbar} dp.
std::vector<cplx> mixed_tau(const PhaseSpaceField& f) {
    const int n = f.grid.n;
    const double dp = f.grid.dp();
    std::vector<cplx> out(size_t(n) * n);
#pragma omp parallel
    {
        std::vector<cplx> row(n);
#pragma omp for
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) row[k] = f.at(j, k);
            fft::forward(row.data(), n);
            for (int m = 0; m < n; ++m)
                out[size_t(j) * n + m] = row[m] * dp * double(m % 2 ? -1 : 1);
        }
    }
    return out;
}

}  // namespace

PhaseSpaceField star_numeric(const PhaseSpaceField& a, const PhaseSpaceField& b) {
    require_same_grid(a.grid, b.grid);
    const int n = a.grid.n;
    const double hbar = a.grid.hbar;
    const double dx = a.grid.dx();
    const double pi = GridSpec::pi();
    const double pref =
        dx * dx / (pi * hbar) / (pi * hbar);

    std::vector<cplx> at = mixed_tau(a);
    std::vector<cplx> bt = mixed_tau(b);

    PhaseSpaceField out(a.grid, a.time);
#pragma omp parallel
    {
        std::vector<cplx> g(n);
#pragma omp for
        for (int j = 0; j < n; ++j) {
            std::fill(g.begin(), g.end(), cplx(0.0));
            // g_j[s] = sum over alpha+beta = s (mod n) of
            //          at(j - beta, alpha) bt(j + alpha, beta)
            for (int alpha = 0; alpha < n; ++alpha) {
                const cplx* brow = &bt[size_t((j + alpha) % n) * n];
                for (int beta = 0; beta < n; ++beta) {
                    int s = alpha + beta;
                    if (s >= n) s -= n;
                    g[s] += at[size_t((j - beta + n) % n) * n + alpha] * brow[beta];
                }
            }
            // c(j, k) = pref * sum_s g[s] e^{+2 pi i (k - n/2) s / n}
            for (int s = 1; s < n; s += 2) g[s] = -g[s];
            fft::backward(g.data(), n);
            for (int k = 0; k < n; ++k) out.at(j, k) = g[k] * pref;
        }
    }
    return out;
}

double symplectic_form(const DisplacementLabel& s1, const DisplacementLabel& s2) {
    return s2.alpha * s1.beta - s1.alpha * s2.beta;
}

Composition compose_displacements(const DisplacementLabel& s1,
                                  const DisplacementLabel& s2, double hbar) {
    double phi = hbar * symplectic_form(s1, s2) / 2.0;
    return {cplx(std::cos(phi), std::sin(phi)),
            {s1.alpha + s2.alpha, s1.beta + s2.beta}};
}

cplx exchange_phase(const DisplacementLabel& s1, const DisplacementLabel& s2,
                    double hbar) {
    double phi = hbar * symplectic_form(s1, s2);
    return {std::cos(phi), std::sin(phi)};
}

OperatorKernel displacement_kernel(const GridSpec& g, const DisplacementLabel& s) {
    const int n = g.n;
    const double hbar = g.hbar;
    const double shift = s.alpha * hbar;
    // S = e^{i alpha p} e^{i beta x} e^{-i alpha beta hbar / 2};
    // the momentum shift acts as a band-limited Dirichlet kernel.
    std::vector<cplx> shift_col(n);
    for (int d = 0; d < n; ++d) {
        cplx acc = 0.0;
        for (int l = 0; l < n; ++l) {
            double k_l = g.p_full(l) / hbar;  // 2 pi (l - n/2) / L
            double arg = k_l * (d * g.dx() + shift);
            // wrapped offsets: d and d - n give the same lattice site
            acc += cplx(std::cos(arg), std::sin(arg));
        }
        shift_col[d] = acc / (double(n) * g.dx());
    }
    double phi0 = -s.alpha * s.beta * hbar / 2.0;
    cplx global(std::cos(phi0), std::sin(phi0));

    OperatorKernel K(g);
#pragma omp parallel for
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int d = (a - b + n) % n;
            K.at(a, b) = global * cplx(std::cos(s.beta * g.x(b)),
                                       std::sin(s.beta * g.x(b))) *
                         shift_col[d];
        }
    return K;
}

}  // namespace moyal::weyl
