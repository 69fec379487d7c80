// faddeeva.hpp - Faddeeva function w(z) = exp(-z^2) erfc(-iz)

#pragma once

#include <complex>

namespace phonospec {

// Weideman's rational approximation; valid on the whole plane
// (the lower half-plane goes through the reflection formula).
std::complex<double> faddeeva_w(std::complex<double> z);

}  // namespace phonospec
