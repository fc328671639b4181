#pragma once

#include "moyal/grid.hpp"

namespace moyal::phasespace {

// Wigner distribution on the even-tau lattice; real (imaginary residue above
// 1e-8 throws), normalized to sum F dx dp = 1 for a normalized state.
PhaseSpaceField wigner(const WaveFunction& psi);

// Transition (cross-Wigner) distribution W[psi, phi]; complex in general,
// cross_wigner(psi, psi) == wigner(psi).
PhaseSpaceField cross_wigner(const WaveFunction& psi, const WaveFunction& phi);

CharacteristicField characteristic_function(const WaveFunction& psi);

PhaseSpaceField char_to_distribution(const CharacteristicField& M);

struct Marginals {
    std::vector<double> position;  // sum_k F dp
    std::vector<double> momentum;  // sum_j F dx
};
Marginals marginals(const PhaseSpaceField& F);

// sum a F dx dp
cplx expectation(const PhaseSpaceField& F, const PhaseSpaceField& a);

struct Negativity {
    double min_value;
    double x, p;           // location of the minimum
    double negative_mass;  // sum min(F, 0) dx dp
};
Negativity negativity(const PhaseSpaceField& F);

// (2 pi hbar) sum F^2 dx dp; 1 for pure states, < 1 for mixtures.
double purity(const PhaseSpaceField& F);

// Idempotency residual |(2 pi hbar) F * F - F|_2 / |F|_2 under the numeric
// star product; ~0 for pure-state Wigner functions.
double purity_check(const PhaseSpaceField& F);

// Baker's reconstruction: requires purity_check(F) <= 1e-4.  Amplitude from
// the density-matrix diagonal, phase read off the density-matrix column at
// the amplitude peak, with an amplitude mask at 1e-8; global phase fixed so
// the state is real positive at the peak.
WaveFunction recover_wavefunction(const PhaseSpaceField& F);

DensityMatrixField density_matrix(const WaveFunction& psi);
DensityMatrixField density_from_wigner(const PhaseSpaceField& F);

double field_norm2(const PhaseSpaceField& F);  // L2 norm sqrt(sum |F|^2 dx dp)

}  // namespace moyal::phasespace
