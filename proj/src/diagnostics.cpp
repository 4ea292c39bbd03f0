#include "mihd/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace mihd {

namespace {

double grad_norm_sq(const SpectralVectorField& v, int order) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double c = sobolev_norm(axis_derivative(v[i], j), order);
            acc += c * c;
        }
    return acc;
}

double norm_sq(const SpectralVectorField& v, int order) {
    const double c = sobolev_norm(v, order);
    return c * c;
}

} // namespace

double energy_functional(const FlowState& state, const std::array<double, 3>& omega,
                         double m, int order) {
    const SpectralVectorField dw = directional_derivative(state.eta, omega);
    return grad_norm_sq(state.eta, order) + norm_sq(state.u, order) +
           m * m * norm_sq(dw, order);
}

double dissipation_functional(const FlowState& state, const std::array<double, 3>& omega,
                              double m, int order) {
    const SpectralVectorField dw = directional_derivative(state.eta, omega);
    return grad_norm_sq(state.u, order) + m * m * norm_sq(dw, order);
}

double mechanical_energy(const FlowState& state, const std::array<double, 3>& omega,
                         double m) {
    const SpectralVectorField dw = directional_derivative(state.eta, omega);
    return norm_sq(state.u, 0) + m * m * norm_sq(dw, 0);
}

double highest_energy_analog(const FlowState& state, const std::array<double, 3>& omega,
                             double m, int base_order) {
    if (base_order < 1)
        throw std::invalid_argument("highest_energy_analog: base order must be >= 1");
    const SpectralVectorField dw = directional_derivative(state.eta, omega);
    const double weight = m > 0.0 ? std::pow(m, -2.0 / 3.0) : 1.0;
    return energy_functional(state, omega, m, base_order - 1) +
           norm_sq(state.eta, base_order + 1) +
           weight * (norm_sq(state.u, base_order) + m * m * norm_sq(dw, base_order));
}

InitialParams initial_params(const FlowState& state0, const std::array<double, 3>& omega,
                             double m, const std::array<int, 4>& orders, int top_order) {
    InitialParams p;
    p.orders = orders;
    const double w = m > 0.0 ? 1.0 + 1.0 / (m * m) : 2.0;
    double wi = 1.0;
    std::array<double, 4> E{};
    for (int i = 0; i < 4; ++i) {
        E[i] = energy_functional(state0, omega, m, orders[i]);
        p.Xi += wi * E[i];
        wi *= w;
    }
    const int s = orders[1];
    const int mid = (3 * s + 1) / 2; // ceil(3s/2)
    const double E_mid = energy_functional(state0, omega, m, mid);
    p.vartheta = std::pow(E[3], 0.125) * (1.0 + std::pow(E[1], 1.5)) *
                     std::pow(p.Xi, 0.375) +
                 E_mid + E_mid * E_mid;
    if (m > 0.0) {
        const double eh = highest_energy_analog(state0, omega, m, top_order);
        const double base = 4.0 * eh * std::exp(p.vartheta);
        p.mhd_condition_lhs = std::max(std::sqrt(base), base) / m;
    }
    return p;
}

std::vector<std::pair<double, double>> energy_law_residual(const TrajectoryLog& log,
                                                           double nu) {
    std::vector<std::pair<double, double>> out;
    if (log.energy_samples.empty())
        return out;
    const double e0 = log.energy_samples.front().mech;
    double integral = 0.0;
    for (std::size_t j = 0; j < log.energy_samples.size(); ++j) {
        const auto& s = log.energy_samples[j];
        if (j > 0) {
            const auto& p = log.energy_samples[j - 1];
            integral += 0.5 * (s.dissipation + p.dissipation) * (s.t - p.t);
        }
        double resid = std::abs(s.mech + 2.0 * nu * integral - e0);
        if (e0 > 0.0)
            resid /= e0;
        out.emplace_back(s.t, resid);
    }
    return out;
}

DecayFit decay_fit(const std::vector<std::pair<double, double>>& series, double window_lo,
                   double window_hi, double weight_exponent, double normalizer) {
    DecayFit fit;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (const auto& [t, e] : series) {
        const double w = std::pow(1.0 + t, weight_exponent);
        if (normalizer > 0.0) {
            const double ratio = w * e / normalizer;
            if (ratio > fit.max_ratio) {
                fit.max_ratio = ratio;
                fit.argmax_t = t;
            }
        }
        if (t < window_lo || t > window_hi)
            continue;
        if (!(e > 0.0)) {
            ++fit.excluded;
            continue;
        }
        const double x = std::log(1.0 + t);
        const double y = std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count >= 2) {
        const double denom = count * sxx - sx * sx;
        if (denom != 0.0) {
            fit.slope = (count * sxy - sx * sy) / denom;
            fit.intercept = (sy - fit.slope * sx) / count;
        }
    }
    return fit;
}

DiagnosticsRecord diagnose_state(const FlowState& state, const std::array<double, 3>& omega,
                                 double nu, double m, const std::array<int, 4>& orders,
                                 int top_order, ProductRule rule) {
    (void)nu;
    DiagnosticsRecord rec;
    rec.t = state.t;
    for (int i = 0; i < 4; ++i) {
        rec.E[i] = energy_functional(state, omega, m, orders[i]);
        rec.D[i] = dissipation_functional(state, omega, m, orders[i]);
    }
    rec.EH = highest_energy_analog(state, omega, m, top_order);
    const GeometryBundle g = build_geometry(state.eta, rule, state.t);
    rec.det_err = g.det_sup_err();
    rec.divA_res = l2_norm(div_A(state.u, g));
    return rec;
}

} // namespace mihd
