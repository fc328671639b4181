#pragma once

#include "moyal/grid.hpp"

namespace moyal::fft {

// Unnormalized in-place DFTs: forward uses e^{-2 pi i j k / n}, backward
// e^{+2 pi i j k / n}.  Plans are cached per length and safe to execute from
// concurrent threads.
void forward(cplx* data, int n);
void backward(cplx* data, int n);

inline void forward(std::vector<cplx>& v) { forward(v.data(), int(v.size())); }
inline void backward(std::vector<cplx>& v) { backward(v.data(), int(v.size())); }

}  // namespace moyal::fft
