#pragma once

#include "displab/grid.hpp"

namespace displab::fft {

// Unnormalized in-place transforms:
//   forward:  X_k = sum_j x_j e^{-2 pi i jk/N}
//   backward: x_j = sum_k X_k e^{+2 pi i jk/N}
// Plans are cached per size and shared; execution is thread-safe.
void forward(cvec& data);
void backward(cvec& data);

}  // namespace displab::fft
