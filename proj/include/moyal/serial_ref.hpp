#pragma once

#include "moyal/grid.hpp"

// Serial direct-sum reference implementations.  No FFTs, no OpenMP: these
// evaluate the defining quadratures literally and exist as independent
// oracles for the fast kernels (and as the baseline in the benchmark tool).

namespace moyal::serial_ref {

PhaseSpaceField wigner(const WaveFunction& psi);

// von Neumann twisted integral evaluated as the literal four-fold lattice
// sum; O(n^6), only usable on small grids.
PhaseSpaceField star_numeric(const PhaseSpaceField& a, const PhaseSpaceField& b);

}  // namespace moyal::serial_ref
