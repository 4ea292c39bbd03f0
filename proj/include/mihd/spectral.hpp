#pragma once

#include "mihd/field.hpp"

namespace mihd {

/// Product evaluation rule for nonlinear terms.
///  - Collocation: pointwise multiplication on the n^3 grid, full DFT content
///    retained. Grid samples of the result equal the pointwise product of the
///    factors' samples exactly, which is what the exact-algebra identity
///    checks (cofactor/determinant/Piola) require.
///  - Dealiased: zero-padded transforms (size >= 3n/2), exact convolution on
///    the retained band, then truncation to the dealias ball. Used by the
///    time stepper, where alias-free dynamics matter more than pointwise
///    exactness.
enum class ProductRule { Collocation, Dealiased };

/// d/dy_axis as the spectral multiplier 2*pi*i*k_axis. The Nyquist row has no
/// signed frequency and its odd-derivative multiplier is taken as zero.
SpectralScalarField axis_derivative(const SpectralScalarField& f, int axis);

/// Directional derivative along a unit vector: multiplier 2*pi*i*(k.omega).
SpectralScalarField directional_derivative(const SpectralScalarField& f,
                                           const std::array<double, 3>& omega);
SpectralVectorField directional_derivative(const SpectralVectorField& v,
                                           const std::array<double, 3>& omega);

SpectralScalarField laplacian(const SpectralScalarField& f);

SpectralVectorField gradient(const SpectralScalarField& f);
SpectralScalarField divergence(const SpectralVectorField& v);

/// H^s multiplier norm: (sum_k (1+|2 pi k|^2)^s |coeff(k)|^2)^{1/2}.
/// Summation runs in storage order so reruns are bit-identical.
double sobolev_norm(const SpectralScalarField& f, int s);
double sobolev_norm(const SpectralVectorField& v, int s);
inline double l2_norm(const SpectralScalarField& f) { return sobolev_norm(f, 0); }
inline double l2_norm(const SpectralVectorField& v) { return sobolev_norm(v, 0); }

/// L^2 inner product of real fields from spectral data (fixed traversal).
double l2_inner(const SpectralScalarField& f, const SpectralScalarField& g);
double l2_inner(const SpectralVectorField& f, const SpectralVectorField& g);

/// Exact spectral product of two band-limited fields on all modes inside the
/// dealias ball (zero-padded transforms), zero outside it.
SpectralScalarField dealiased_product(const SpectralScalarField& f,
                                      const SpectralScalarField& g);

/// Grid-pointwise product; the raw DFT of the sample product is kept, so the
/// result's samples are bit-exact pointwise products.
SpectralScalarField collocation_product(const SpectralScalarField& f,
                                        const SpectralScalarField& g);

SpectralScalarField product(const SpectralScalarField& f, const SpectralScalarField& g,
                            ProductRule rule);

/// Solve Laplace u = f for mean-zero f; coeff_out(k) = -coeff(k)/|2 pi k|^2.
/// Rejects sources with nonzero mean ("incompatible source").
SpectralScalarField inverse_laplacian(const SpectralScalarField& f);

/// Remove the gradient part per mode: v - k (k.v)/|k|^2, mean untouched.
SpectralVectorField leray_project(const SpectralVectorField& v);

} // namespace mihd
