#pragma once

#include "mihd/evolution.hpp"

namespace mihd {

struct PressureOptions {
    double tol = 1e-10;
    int max_iter = 100;
    /// Contraction guard on sup |grad eta|; exceedances are reported, the
    /// hard failure conditions are non-contraction and the iteration limit.
    double guard_sup = 0.1;
};

struct PressureSolveReport {
    SpectralScalarField q; // mean-zero
    int iterations = 0;
    double residual = 0.0; // ||Delta q - f(q)||_0 / max(||f(q)||_0, eps)
    double contraction_estimate = 0.0;
    bool guard_exceeded = false;
    double grad_sup = 0.0;
};

/// Elliptic source of the pressure equation Delta q = f(q):
/// f = div(A_t^T u) - div((tildeA + tildeA^T) grad q + tildeA^T grad_tildeA q)
///     + m^2 (d_omega^2 div eta + div_tildeA d_omega^2 eta),
/// with A_t assembled from the cofactor chain rule and eta_t = u. The output
/// mean is forced to zero.
SpectralScalarField pressure_source(const FlowState& state, const GeometryBundle& g,
                                    const SpectralScalarField& q_guess,
                                    const std::array<double, 3>& omega, double m, double nu);

/// Picard iteration q_{j+1} = inv_laplacian(f(q_j)) from q_0 = 0 (or the
/// seed) until the relative update drops below tol.
PressureSolveReport solve_pressure(const FlowState& state, const GeometryBundle& g,
                                   const std::array<double, 3>& omega, double m, double nu,
                                   const PressureOptions& opts = {},
                                   const SpectralScalarField* seed_q = nullptr);

} // namespace mihd
