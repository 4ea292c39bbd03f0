#pragma once

#include <array>
#include <vector>

#include "mihd/spectral.hpp"

namespace mihd {

using GridMat3 = std::array<std::array<std::vector<double>, 3>, 3>;

/// Exact nonlinear algebra of the flow map zeta = y + eta: gradient of eta,
/// cofactor matrix of grad(zeta) (equal to the paper's A when det = 1), the
/// split cof - I = tildeA_L + tildeA_N into linear and quadratic parts, the
/// determinant, and the divergence residual r_eta with div eta - r_eta =
/// det - 1 as a polynomial identity.
///
/// Grid sample caches of the gradient and cofactor entries are kept so that
/// pointwise assembly (collocation rule) and guard diagnostics are cheap.
/// Under the dealiased rule, padded-grid samples of the cofactor are cached
/// for the fused div_A / grad_A paths.
struct GeometryBundle {
    Lattice lattice{2};
    ProductRule rule = ProductRule::Collocation;
    double source_state_time = 0.0;

    Mat3Field grad_eta; // (i,j) entry is d_j eta_i
    Mat3Field cof;      // cofactor matrix of I + grad eta
    Mat3Field tildeA_L; // linear part of cof - I
    Mat3Field tildeA_N; // quadratic part of cof - I
    SpectralScalarField det_field;
    SpectralScalarField r_eta;

    GridMat3 grad_s;
    GridMat3 cof_s;
    std::vector<double> det_s;

    int pad_n = 0;     // padded grid size (dealiased rule only)
    GridMat3 cof_pad;  // padded samples of cof entries
    GridMat3 grad_pad; // padded samples of grad eta entries

    /// sup over grid and entries of |d_j eta_i|
    double grad_sup() const;
    /// sup over grid of |det(grad zeta) - 1|
    double det_sup_err() const;
};

GeometryBundle build_geometry(const SpectralVectorField& eta,
                              ProductRule rule = ProductRule::Collocation,
                              double source_state_time = 0.0);

/// r_eta = r2 + r3 (quadratic + cubic divergence residual).
SpectralScalarField div_residual(const SpectralVectorField& eta,
                                 ProductRule rule = ProductRule::Collocation);

/// div_A X = A_{lk} d_k X_l with A the cofactor matrix of the bundle.
SpectralScalarField div_A(const SpectralVectorField& v, const GeometryBundle& g);
/// div with A replaced by tildeA = A - I.
SpectralScalarField div_tildeA(const SpectralVectorField& v, const GeometryBundle& g);

/// grad_A f = (A_{1k} d_k f, A_{2k} d_k f, A_{3k} d_k f)^T.
SpectralVectorField grad_A(const SpectralScalarField& f, const GeometryBundle& g);
SpectralVectorField grad_tildeA(const SpectralScalarField& f, const GeometryBundle& g);

SpectralScalarField laplacian_A(const SpectralScalarField& f, const GeometryBundle& g);
SpectralVectorField laplacian_A(const SpectralVectorField& v, const GeometryBundle& g);

/// B = m (d_omega eta + omega): constant part m*omega plus the fluctuation.
/// Negative m is rejected; m = 0 gives the zero field.
SpectralVectorField recover_magnetic(const SpectralVectorField& eta, double m,
                                     const std::array<double, 3>& omega);

/// Polarized cofactor entry on grid samples:
///   bil(X,Y)_ij = X_{i+1,j+1} Y_{i+2,j+2} - X_{i+1,j+2} Y_{i+2,j+1}
/// (cyclic indices), so cof(M) = bil(M,M) and the cofactor chain rule is
/// d cof(M)[H] = bil(M,H) + bil(H,M).
std::vector<double> cofactor_bilinear_entry(const GridMat3& X, const GridMat3& Y, int i,
                                            int j);

} // namespace mihd
