#pragma once

#include "moyal/grid.hpp"

#include <string_view>

namespace moyal::states {

// Normalized Gaussian packet; sigma is the position-space standard deviation
// of |psi|^2, so the harmonic ground state (m = omega = hbar = 1) is
// gaussian(sigma = 1/sqrt(2)).
WaveFunction gaussian(const GridSpec& g, double x0, double p0, double sigma);

// Harmonic-oscillator eigenstate via the stable normalized Hermite-function
// recurrence.
WaveFunction ho_eigenstate(const GridSpec& g, int n, double mass = 1.0,
                           double omega = 1.0);

double ho_energy(const GridSpec& g, int n, double omega = 1.0);

// Descriptor mini-language:
//   state     := term (('+'|'-') term)*
//   term      := [weight '*'] base
//   weight    := float | '(' float (('+'|'-') float 'i')? ')'
//   base      := gaussian(x0=..,p0=..,sigma=..) | ho(n=..,m=..,omega=..)
// Missing keys take defaults (x0=0, p0=0, sigma=1, n=0, m=1, omega=1).
// The result is renormalized.  Throws Error on malformed descriptors.
WaveFunction state_factory(std::string_view descriptor, const GridSpec& g);

// True when the state has decayed below 1e-12 amplitude at the box edge.
bool boundary_decay_ok(const WaveFunction& psi);

}  // namespace moyal::states
