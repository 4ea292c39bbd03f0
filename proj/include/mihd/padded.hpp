#pragma once

#include <vector>

#include "mihd/field.hpp"

namespace mihd::detail {

/// Zero-padded transform size for alias-free quadratic products.
int padded_size(int n);

/// Real samples of f on the m^3 grid, m >= padded_size(n). Nyquist rows of
/// the source are dropped (inputs are band-limited by contract).
std::vector<double> padded_samples(const SpectralScalarField& f, int m);

/// Transform m^3 real samples back to the n-lattice: forward DFT, 1/m^3
/// scaling, truncation to the dealias ball, Hermitian cleanup.
SpectralScalarField harvest_padded(const Lattice& lat, int m,
                                   const std::vector<double>& samples);

} // namespace mihd::detail
