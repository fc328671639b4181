#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace moyal {

using cplx = std::complex<double>;

class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Uniform periodic position grid with the even-tau Wigner convention:
// tau runs over even multiples of dx so x +- tau/2 stays on grid nodes, and
// the phase-space momentum lattice has dp = pi*hbar/L with Nyquist
// pi*hbar/(2 dx).  The wavefunction (Schroedinger) momentum lattice is the
// usual full one with dp_full = 2*pi*hbar/L.
struct GridSpec {
    int n = 256;
    double length = 20.0;
    double hbar = 1.0;

    GridSpec() = default;
    GridSpec(int n_, double length_, double hbar_ = 1.0)
        : n(n_), length(length_), hbar(hbar_) {
        validate();
    }

    void validate() const {
        if (n < 16 || (n & (n - 1)) != 0)
            throw Error("GridSpec: n must be a power of two >= 16");
        if (length <= 0) throw Error("GridSpec: length must be positive");
        if (hbar <= 0) throw Error("GridSpec: hbar must be positive");
    }

    double dx() const { return length / n; }
    double dp() const { return pi() * hbar / length; }
    double dp_full() const { return 2.0 * pi() * hbar / length; }
    double dtau() const { return 2.0 * dx(); }

    double x(int j) const { return -length / 2 + j * dx(); }
    double p(int k) const { return (k - n / 2) * dp(); }
    double p_full(int k) const { return (k - n / 2) * dp_full(); }
    double tau(int m) const { return m * dtau(); }  // periodic; m > n/2 wraps
    double theta(int l) const { return (l - n / 2) * 2.0 * pi() / length; }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

    static constexpr double pi() { return 3.14159265358979323846; }
};

// Complex field on the (x, p) product grid, row-major over x: value(j, k)
// with x_j = grid.x(j), p_k = grid.p(k).
struct PhaseSpaceField {
    GridSpec grid;
    std::vector<cplx> values;  // n*n
    double time = 0.0;

    PhaseSpaceField() = default;
    explicit PhaseSpaceField(const GridSpec& g, double t = 0.0)
        : grid(g), values(size_t(g.n) * g.n), time(t) {}

    cplx& at(int j, int k) { return values[size_t(j) * grid.n + k]; }
    const cplx& at(int j, int k) const { return values[size_t(j) * grid.n + k]; }
};

// Characteristic function samples on the Fourier-dual (tau, theta) lattice,
// row-major over tau: value(m, l) with tau_m = grid.tau(m), theta_l =
// grid.theta(l).
struct CharacteristicField {
    GridSpec grid;
    std::vector<cplx> values;  // n*n
    double time = 0.0;

    CharacteristicField() = default;
    explicit CharacteristicField(const GridSpec& g, double t = 0.0)
        : grid(g), values(size_t(g.n) * g.n), time(t) {}

    cplx& at(int m, int l) { return values[size_t(m) * grid.n + l]; }
    const cplx& at(int m, int l) const { return values[size_t(m) * grid.n + l]; }
};

// Two-point density matrix rho(x', x''), row-major: value(a, b).
struct DensityMatrixField {
    GridSpec grid;
    std::vector<cplx> values;  // n*n

    DensityMatrixField() = default;
    explicit DensityMatrixField(const GridSpec& g)
        : grid(g), values(size_t(g.n) * g.n) {}

    cplx& at(int a, int b) { return values[size_t(a) * grid.n + b]; }
    const cplx& at(int a, int b) const { return values[size_t(a) * grid.n + b]; }
};

struct WaveFunction {
    GridSpec grid;
    std::vector<cplx> values;  // n
    double time = 0.0;

    WaveFunction() = default;
    explicit WaveFunction(const GridSpec& g, double t = 0.0)
        : grid(g), values(g.n), time(t) {}

    double norm2() const {
        double s = 0;
        for (const cplx& v : values) s += std::norm(v);
        return s * grid.dx();
    }

    void renormalize() {
        double s = norm2();
        if (s <= 0) throw Error("WaveFunction: cannot normalize zero state");
        double inv = 1.0 / std::sqrt(s);
        for (cplx& v : values) v *= inv;
    }
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) throw Error("grid mismatch");
}

}  // namespace moyal
