#pragma once

#include <complex>
#include <vector>

namespace shearlab {

/// Unnormalized complex DFT, X[k] = sum_j x[j] exp(-2 pi i j k / n).
/// Plans are cached per size behind a mutex; execution is thread-safe.
void dft_forward(std::vector<std::complex<double>>& data);

/// Unnormalized inverse, x[j] = sum_k X[k] exp(+2 pi i j k / n) (no 1/n).
void dft_backward(std::vector<std::complex<double>>& data);

}  // namespace shearlab
