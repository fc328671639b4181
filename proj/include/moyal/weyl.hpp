#pragma once

#include "moyal/grid.hpp"

namespace moyal::weyl {

// Two-point kernel A(x', x'') of a bounded operator; matrix action carries
// the dx measure: (A psi)(x') = sum_b A(x', x_b) psi(x_b) dx.
struct OperatorKernel {
    GridSpec grid;
    std::vector<cplx> values;  // n*n, row-major over x'

    OperatorKernel() = default;
    explicit OperatorKernel(const GridSpec& g)
        : grid(g), values(size_t(g.n) * g.n) {}

    cplx& at(int a, int b) { return values[size_t(a) * grid.n + b]; }
    const cplx& at(int a, int b) const { return values[size_t(a) * grid.n + b]; }

    double max_asymmetry() const;  // max |A(a,b) - conj(A(b,a))|
};

// a(x, p) = integral over the even-tau lattice of <x+tau/2| A |x-tau/2>
// e^{-i p tau / hbar} dtau.  Hermitian kernels give real symbols.
PhaseSpaceField weyl_symbol(const OperatorKernel& A);

// Inverse map, A(x', x'') = (1/2 pi hbar) int a((x'+x'')/2, p)
// e^{i p (x'-x'')/hbar} dp; midpoints between grid nodes use band-limited
// interpolation of the symbol in x.
OperatorKernel weyl_quantize(const PhaseSpaceField& a);

// Unnormalized result; callers renormalize if they need a state.
WaveFunction apply_kernel(const OperatorKernel& A, const WaveFunction& psi);

// Operator product with the dx measure: C = A B.
OperatorKernel kernel_product(const OperatorKernel& A, const OperatorKernel& B);

cplx trace(const OperatorKernel& A);

// von Neumann integral star product, evaluated through the mixed (x, tau)
// representation of both factors: exact on the grid, O(n^3).
PhaseSpaceField star_numeric(const PhaseSpaceField& a, const PhaseSpaceField& b);

// Heisenberg-group displacement S(alpha, beta) = e^{i(alpha p + beta x)}.
struct DisplacementLabel {
    double alpha = 0.0;
    double beta = 0.0;
};

// sigma(s1, s2) = alpha2 beta1 - alpha1 beta2, the symplectic form in the
// composition phase.
double symplectic_form(const DisplacementLabel& s1, const DisplacementLabel& s2);

struct Composition {
    cplx phase;  // unit modulus
    DisplacementLabel label;
};

// "s1 followed by s2": S(s2) S(s1) = phase * S(s1 + s2) with
// phase = e^{i hbar sigma(s1, s2) / 2}.
Composition compose_displacements(const DisplacementLabel& s1,
                                  const DisplacementLabel& s2, double hbar);

// Phase relating the two orderings: S(s2) S(s1) = exchange * S(s1) S(s2),
// exchange = e^{i hbar sigma(s1, s2)}.
cplx exchange_phase(const DisplacementLabel& s1, const DisplacementLabel& s2,
                    double hbar);

// Grid realization of S(alpha, beta); spectral (momentum-space) shift, so
// off-grid alpha*hbar displacements stay exactly unitary.
OperatorKernel displacement_kernel(const GridSpec& g, const DisplacementLabel& s);

}  // namespace moyal::weyl
