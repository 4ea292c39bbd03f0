#pragma once

#include <vector>

#include "mihd/evolution.hpp"

namespace mihd {

/// Per-cadence diagnostics row; the CSV schema mirrors these fields.
struct DiagnosticsRecord {
    double t = 0.0;
    std::array<double, 4> E{};  // energies at hierarchy orders {0, s, 2s, 3s}
    std::array<double, 4> D{};  // dissipations at the same orders
    double EH = 0.0;            // highest-order energy analog
    double det_err = 0.0;       // sup |det(grad zeta) - 1|
    double divA_res = 0.0;      // ||div_A u||_0 after restoration
    double energy_resid = 0.0;  // mechanical-energy law residual
    int pressure_iters = 0;
};

/// Per-step sample of the mechanical energy ||u||_0^2 + m^2 ||d_omega eta||_0^2
/// and the dissipation integrand ||grad_A u||_0^2.
struct EnergySample {
    double t = 0.0;
    double mech = 0.0;
    double dissipation = 0.0;
};

struct TrajectoryLog {
    std::array<int, 4> orders{};
    double nu = 0.0;
    double m = 0.0;
    std::vector<DiagnosticsRecord> records;
    std::vector<EnergySample> energy_samples; // one per accepted step
    FlowState final_state;
};

/// E_i = ||(grad eta, u, m d_omega eta)||_i^2.
double energy_functional(const FlowState& state, const std::array<double, 3>& omega,
                         double m, int order);
/// D_i = ||(grad u, m d_omega eta)||_i^2.
double dissipation_functional(const FlowState& state, const std::array<double, 3>& omega,
                              double m, int order);
/// E_{h-1} + ||eta||_{h+1}^2 + m^{-2/3} ||(u, m d_omega eta)||_h^2.
double highest_energy_analog(const FlowState& state, const std::array<double, 3>& omega,
                             double m, int base_order);

/// Mechanical energy ||u||_0^2 + m^2 ||d_omega eta||_0^2 (normalized form of
/// rho |u|^2 + lambda varpi^2 |d_omega eta|^2 / 4 pi).
double mechanical_energy(const FlowState& state, const std::array<double, 3>& omega,
                         double m);

struct InitialParams {
    double Xi = 0.0;
    double vartheta = 0.0;
    /// m^{-1} max{(c1 EH0 e^{c2 theta})^{1/2}, c1 EH0 e^{c2 theta}} with the
    /// reporting conventions c1 = 4, c2 = 1 (<= 1 plays the role of c3).
    double mhd_condition_lhs = 0.0;
    std::array<int, 4> orders{};
};

InitialParams initial_params(const FlowState& state0, const std::array<double, 3>& omega,
                             double m, const std::array<int, 4>& orders, int top_order);

/// |LHS(t) - LHS(0)| / LHS(0) with LHS = ||u||_0^2 + m^2 ||d_omega eta||_0^2
/// + 2 nu int ||grad_A u||_0^2 (trapezoid); absolute when LHS(0) = 0.
std::vector<std::pair<double, double>> energy_law_residual(const TrajectoryLog& log,
                                                           double nu);

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_ratio = 0.0; // max over the series of <t>^p E / normalizer
    double argmax_t = 0.0;
    int excluded = 0; // nonpositive entries dropped from the log-log fit
};

/// Least-squares slope of log E against log<t> = log(t+1) over the window,
/// plus the weighted-ratio certificate max <t>^p E / normalizer.
DecayFit decay_fit(const std::vector<std::pair<double, double>>& series, double window_lo,
                   double window_hi, double weight_exponent, double normalizer);

/// One diagnostics row for a state (energy_resid and pressure_iters are
/// filled by the runner).
DiagnosticsRecord diagnose_state(const FlowState& state, const std::array<double, 3>& omega,
                                 double nu, double m, const std::array<int, 4>& orders,
                                 int top_order, ProductRule rule = ProductRule::Collocation);

} // namespace mihd
