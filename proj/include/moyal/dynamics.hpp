#pragma once

#include "moyal/grid.hpp"
#include "moyal/symcalc.hpp"

#include <vector>

namespace moyal::dynamics {

// H = p^2 / 2m + V(x) with V either a real polynomial in x (degree <= 6,
// used by the exact odd-derivative bracket series) or a table on the grid.
struct HamiltonianSpec {
    double mass = 1.0;
    symcalc::PolySymbol potential;  // polynomial in x only
    std::vector<double> table;      // non-empty: tabulated V, one value per node

    bool tabulated() const { return !table.empty(); }
    void validate(const GridSpec& g) const;

    // d-th derivative of V on the grid nodes; exact for polynomials,
    // spectral for tables.
    std::vector<double> potential_values(const GridSpec& g, int d = 0) const;

    static HamiltonianSpec free_particle(double mass = 1.0);
    static HamiltonianSpec harmonic(double mass = 1.0, double omega = 1.0);
    // V(x) = sum_k coeffs[k] x^k
    static HamiltonianSpec from_coefficients(const std::vector<double>& coeffs,
                                             double mass = 1.0);
};

enum class Scheme { SplitStep, Rk4Series };

struct EvolutionConfig {
    double dt = 1e-3;
    int steps = 1000;
    Scheme scheme = Scheme::SplitStep;
    int record_every = 100;  // snapshot cadence; the final state is always kept

    void validate() const;
};

// Strang split-step spectral propagator, the position-representation oracle.
std::vector<WaveFunction> schrodinger_evolve(const WaveFunction& psi0,
                                             const HamiltonianSpec& H,
                                             const EvolutionConfig& cfg);

// Phase-space flow dF/dt = {H, F}_MB.  Split-step applies the potential
// exactly in the (x, tau) representation (two-point phase
// e^{-i[V(x+tau/2)-V(x-tau/2)] dt/hbar}) and the kinetic part as a spectral
// x-shear; rk4-series integrates the terminating odd-derivative bracket.
std::vector<PhaseSpaceField> moyal_evolve(const PhaseSpaceField& F0,
                                          const HamiltonianSpec& H,
                                          const EvolutionConfig& cfg);

// Same scheme with the two-point potential phase replaced by its first-order
// (Poisson) form V'(x) tau; coincides with moyal_evolve for quadratic V.
std::vector<PhaseSpaceField> classical_liouville_evolve(const PhaseSpaceField& F0,
                                                        const HamiltonianSpec& H,
                                                        const EvolutionConfig& cfg);

// Instantaneous generator dF/dt = {H,F}_MB via the terminating series
// (spectral derivatives of F, exact derivatives of V):
//   -(p/m) dF/dx + V' dF/dp - (hbar^2/24) V''' d^3F/dp^3
//                           + (hbar^4/1920) V^(5) d^5F/dp^5
PhaseSpaceField moyal_rhs(const PhaseSpaceField& F, const HamiltonianSpec& H);

// H(x, p) sampled on the grid.
PhaseSpaceField hamiltonian_symbol(const HamiltonianSpec& H, const GridSpec& g);

// {H, F}_BB through the terminating even-derivative series:
//   H F - (hbar^2/8)(F_xx/m + V'' F_pp) + (hbar^4/384) V'''' F_pppp
//       - (hbar^6/46080) V^(6) F_pppppp
PhaseSpaceField baker_with_hamiltonian(const HamiltonianSpec& H,
                                       const PhaseSpaceField& F);

// One-sided products H * F and F * H assembled from the two bracket series.
PhaseSpaceField star_hamiltonian_left(const HamiltonianSpec& H,
                                      const PhaseSpaceField& F);
PhaseSpaceField star_hamiltonian_right(const HamiltonianSpec& H,
                                       const PhaseSpaceField& F);

// Two-sided energy identity from a pair of adjacent oracle snapshots:
// bracket = {H, F}_BB at the midpoint, time_side = (i hbar / 2)
// (W[psi, dpsi/dt] - W[dpsi/dt, psi]) with a centered difference.
struct BakerEnergyCheck {
    PhaseSpaceField bracket;
    PhaseSpaceField time_side;
    double relative_gap;  // |bracket - time_side|_2 / |bracket|_2
};
BakerEnergyCheck baker_energy_field(const WaveFunction& before,
                                    const WaveFunction& after,
                                    const HamiltonianSpec& H);

// |{H, F12}_BB - ((e1+e2)/2) F12|_2 / |F12|_2 for the transition
// distribution of two eigenstates.
double cross_energy_check(const WaveFunction& psi1, double e1,
                          const WaveFunction& psi2, double e2,
                          const HamiltonianSpec& H);

WaveFunction apply_hamiltonian(const WaveFunction& psi, const HamiltonianSpec& H);
double energy_expectation(const WaveFunction& psi, const HamiltonianSpec& H);

// psi = R e^{i S / hbar}; S is unwrapped within each contiguous unmasked
// segment (amplitude >= 1e-8) and undefined on masked nodes.
struct PolarFields {
    GridSpec grid;
    std::vector<double> amplitude;
    std::vector<double> phase;  // action units
    std::vector<char> mask;     // 1 where the phase is undefined
};
PolarFields polar_decompose(const WaveFunction& psi);

// sign = +1: the standard form -(hbar^2 / 2m) R'' / R; sign = -1 flips it
// (convention tripwire).  Masked nodes report 0.
std::vector<double> quantum_potential(const PolarFields& pf, double mass,
                                      double sign = 1.0);

// dS/dt + (dS/dx)^2 / 2m + Q + V on the midpoint of a snapshot pair, using
// the local (unwrap-free) phase-gradient formulas; points with amplitude
// below 1e-5 report 0 (the residual is meaningless in the far tails).
std::vector<double> qhj_residual(const WaveFunction& before,
                                 const WaveFunction& after,
                                 const HamiltonianSpec& H, double q_sign = 1.0);

}  // namespace moyal::dynamics
