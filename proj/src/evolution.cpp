#include "mihd/evolution.hpp"

#include <cmath>

#include "mihd/errors.hpp"
#include "mihd/pressure.hpp"

namespace mihd {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.14159265358979323846;
} // namespace

double dt_max(Scheme, int n, double /*nu*/, double m) {
    return 2.0 / (kPi * n * std::sqrt(std::max(1.0, m)));
}

void SimConfig::validate() const {
    if (n <= 0 || n % 2 != 0)
        throw ConfigError("grid_n must be even and positive");
    if (dt <= 0.0)
        throw ConfigError("dt must be positive");
    if (t_end < 0.0)
        throw ConfigError("t_end must be nonnegative");
    if (nu <= 0.0)
        throw ConfigError("nu must be positive");
    if (m < 0.0)
        throw ConfigError("m must be nonnegative");
    if (epsilon < 0.0 || epsilon > 0.2)
        throw ConfigError("epsilon must lie in [0, 0.2]");
    if (hierarchy_s < 1)
        throw ConfigError("hierarchy_s must be >= 1");
    if (project_cadence < 1)
        throw ConfigError("project_cadence must be >= 1");
    if (pressure_tol <= 0.0 || pressure_max_iter < 1)
        throw ConfigError("invalid pressure solver settings");
    const double bound = dt_max(scheme, n, nu, m);
    if (dt > bound)
        throw ConfigError("dt exceeds the stability bound dt_max = " + std::to_string(bound));
}

std::array<double, 4> linear_propagator_ab(double a, double b, double dt) {
    // z' = [[0,1],[-b,-a]] z; with B = A + (a/2) I, B^2 = (a^2/4 - b) I the
    // flow is e^{-a dt/2} (C I + S B), C/S trig or hyperbolic by the sign of
    // the discriminant. The hyperbolic branch uses expm1 so the critically
    // damped limit comes out smoothly.
    const double d = 0.25 * a * a - b;
    double c_part, s_part; // e^{-a dt/2} C and e^{-a dt/2} S
    if (d >= 0.0) {
        const double rho = std::sqrt(d);
        const double ep = std::exp((-0.5 * a + rho) * dt); // exponents are <= 0
        const double em = std::exp((-0.5 * a - rho) * dt);
        c_part = 0.5 * (ep + em);
        const double z = 2.0 * rho * dt;
        if (z < 1.0)
            s_part = em * (z == 0.0 ? dt : std::expm1(z) / (2.0 * rho));
        else
            s_part = (ep - em) / (2.0 * rho);
    } else {
        const double sig = std::sqrt(-d);
        const double e = std::exp(-0.5 * a * dt);
        c_part = e * std::cos(sig * dt);
        s_part = e * (std::sin(sig * dt) / sig);
    }
    return {c_part + 0.5 * a * s_part, s_part, -b * s_part, c_part - 0.5 * a * s_part};
}

std::array<double, 4> linear_propagator(const std::array<int, 3>& k,
                                        const std::array<double, 3>& omega, double nu,
                                        double m, double dt) {
    const double k2 = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
    const double a = nu * kTwoPi * kTwoPi * k2;
    const double kw = k[0] * omega[0] + k[1] * omega[1] + k[2] * omega[2];
    const double b = (kTwoPi * m * kw) * (kTwoPi * m * kw);
    return linear_propagator_ab(a, b, dt);
}

namespace {

int signed_freq(const Lattice& lat, int j) {
    const int k = lat.freq(j);
    return k == lat.n() / 2 ? 0 : k; // Nyquist rows carry no dynamics
}

void apply_propagator_table(const std::array<std::vector<double>, 4>& P, FlowState& s) {
    const Lattice& lat = s.eta.lattice();
    const std::size_t npts = lat.size();
    for (int c = 0; c < 3; ++c) {
        auto& e = s.eta[c].coeffs();
        auto& u = s.u[c].coeffs();
        for (std::size_t i = 0; i < npts; ++i) {
            const Complex e0 = e[i], u0 = u[i];
            e[i] = P[0][i] * e0 + P[1][i] * u0;
            u[i] = P[2][i] * e0 + P[3][i] * u0;
        }
    }
}

std::array<std::vector<double>, 4> build_propagator_table(const Lattice& lat,
                                                          const std::array<double, 3>& omega,
                                                          double nu, double m, double dt) {
    std::array<std::vector<double>, 4> P;
    for (auto& v : P)
        v.resize(lat.size());
    const int n = lat.n();
    for (int j0 = 0; j0 < n; ++j0)
        for (int j1 = 0; j1 < n; ++j1)
            for (int j2 = 0; j2 < n; ++j2) {
                const std::array<int, 3> k{signed_freq(lat, j0), signed_freq(lat, j1),
                                           signed_freq(lat, j2)};
                const auto e = linear_propagator(k, omega, nu, m, dt);
                const std::size_t idx = lat.flat(j0, j1, j2);
                for (int c = 0; c < 4; ++c)
                    P[c][idx] = e[c];
            }
    return P;
}

} // namespace

FlowState evolve_linear(const FlowState& initial, const std::array<double, 3>& omega,
                        double nu, double m, double t) {
    const double scale = std::max({1.0, l2_norm(initial.eta), l2_norm(initial.u)});
    if (l2_norm(divergence(initial.eta)) > 1e-10 * scale ||
        l2_norm(divergence(initial.u)) > 1e-10 * scale)
        throw NumericalError("evolve_linear: initial data is not divergence-free");
    FlowState out = initial;
    if (t == 0.0)
        return out;
    const auto P = build_propagator_table(initial.eta.lattice(), omega, nu, m, t);
    apply_propagator_table(P, out);
    out.t = initial.t + t;
    return out;
}

RestoreResult restore_divergence(const SpectralVectorField& u, const GeometryBundle& g,
                                 double tol, int max_iter) {
    RestoreResult res;
    SpectralScalarField rhs = div_A(u, g);
    rhs.set_mean_zero();
    SpectralScalarField phi(g.lattice);
    double prev = -1.0;
    int growth = 0;
    for (int it = 1; it <= max_iter; ++it) {
        SpectralScalarField src = rhs + laplacian(phi) - laplacian_A(phi, g);
        src.set_mean_zero();
        SpectralScalarField next = inverse_laplacian(src);
        const double delta = l2_norm(next - phi);
        phi = std::move(next);
        res.iterations = it;
        if (delta <= tol * std::max(l2_norm(phi), 1e-30))
            break;
        if (prev >= 0.0) {
            growth = (prev > 0.0 && delta / prev >= 1.0) ? growth + 1 : 0;
            if (growth >= 3)
                throw NumericalError("divergence restoration: no contraction");
        }
        prev = delta;
    }
    res.u = u - grad_A(phi, g);
    res.u.set_mean_zero();
    res.residual = l2_norm(div_A(res.u, g));
    return res;
}

NonlinearStepper::NonlinearStepper(const Lattice& lat, const SimConfig& cfg)
    : lat_(lat), cfg_(cfg) {
    prop_ = build_propagator_table(lat_, cfg_.direction.omega, cfg_.nu, cfg_.m, cfg_.dt);
}

const GeometryBundle& NonlinearStepper::current_geometry(const FlowState& state) {
    if (!geom_cache_ || geom_cache_t_ != state.t) {
        geom_cache_ = build_geometry(state.eta, cfg_.stepper_rule, state.t);
        geom_cache_t_ = state.t;
    }
    return *geom_cache_;
}

double NonlinearStepper::dissipation_integrand(const FlowState& state) {
    const GeometryBundle& g = current_geometry(state);
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double nrm = l2_norm(grad_A(state.u[i], g));
        acc += nrm * nrm;
    }
    return acc;
}

SpectralVectorField NonlinearStepper::remainder(const FlowState& state,
                                                const GeometryBundle& g, StepInfo& info) {
    // nu (Laplace_A - Laplace) u - grad_A q, decomposed so no identity part
    // passes through product truncation:
    //   (Laplace_A - Laplace) f = div_tildeA(grad f) + div(T) + div_tildeA(T),
    //   T = grad_tildeA f;   grad_A q = grad q + grad_tildeA q.
    PressureOptions popt;
    popt.tol = cfg_.pressure_tol;
    popt.max_iter = cfg_.pressure_max_iter;
    popt.guard_sup = cfg_.pressure_guard;
    const SpectralScalarField* seed = q_warm_ ? &*q_warm_ : nullptr;
    PressureSolveReport rep = solve_pressure(state, g, cfg_.direction.omega, cfg_.m,
                                             cfg_.nu, popt, seed);
    info.pressure_iterations += rep.iterations;
    info.pressure_residual = rep.residual;
    info.pressure_contraction = rep.contraction_estimate;
    info.pressure_guard_exceeded = info.pressure_guard_exceeded || rep.guard_exceeded;
    info.grad_sup = std::max(info.grad_sup, rep.grad_sup);

    SpectralVectorField out(lat_);
    for (int i = 0; i < 3; ++i) {
        SpectralVectorField T = grad_tildeA(state.u[i], g);
        SpectralScalarField visc = div_tildeA(gradient(state.u[i]), g);
        visc += divergence(T);
        visc += div_tildeA(T, g);
        visc *= cfg_.nu;
        out[i] = visc;
    }
    SpectralVectorField gq = grad_tildeA(rep.q, g);
    SpectralVectorField gq_lin = gradient(rep.q);
    for (int i = 0; i < 3; ++i) {
        out[i] -= gq[i];
        out[i] -= gq_lin[i];
        out[i].set_mean_zero();
    }
    q_warm_ = std::move(rep.q);
    return out;
}

FlowState NonlinearStepper::step(const FlowState& state) {
    info_ = StepInfo{};
    const double h = cfg_.dt;

    FlowState out = state;
    apply_propagator_table(prop_, out); // Phi_h z0
    out.t = state.t + h;

    if (!cfg_.linear_only) {
        const GeometryBundle& g0 = current_geometry(state);
        const SpectralVectorField n0 = remainder(state, g0, info_);

        // predictor z_p = Phi_h z0 + h Phi_h (0, n0)
        FlowState pred = out;
        for (int c = 0; c < 3; ++c) {
            const auto& nc = n0[c].coeffs();
            auto& pe = pred.eta[c].coeffs();
            auto& pu = pred.u[c].coeffs();
            for (std::size_t i = 0; i < nc.size(); ++i) {
                pe[i] += h * prop_[1][i] * nc[i];
                pu[i] += h * prop_[3][i] * nc[i];
            }
        }
        GeometryBundle gp = build_geometry(pred.eta, cfg_.stepper_rule, pred.t);
        const SpectralVectorField n1 = remainder(pred, gp, info_);

        // corrector z1 = Phi_h z0 + h/2 (Phi_h (0,n0) + (0,n1))
        for (int c = 0; c < 3; ++c) {
            const auto& a = n0[c].coeffs();
            const auto& b = n1[c].coeffs();
            auto& oe = out.eta[c].coeffs();
            auto& ou = out.u[c].coeffs();
            for (std::size_t i = 0; i < a.size(); ++i) {
                oe[i] += 0.5 * h * prop_[1][i] * a[i];
                ou[i] += 0.5 * h * (prop_[3][i] * a[i] + b[i]);
            }
        }
    }

    out.eta.set_mean_zero();
    out.u.set_mean_zero();
    out.eta.zero_nyquist();
    out.u.zero_nyquist();

    ++step_count_;
    geom_cache_ = build_geometry(out.eta, cfg_.stepper_rule, out.t);
    geom_cache_t_ = out.t;

    if (!cfg_.linear_only && step_count_ % cfg_.project_cadence == 0) {
        const double resid = l2_norm(div_A(out.u, *geom_cache_));
        info_.divA_residual = resid;
        if (resid > cfg_.restore_trigger) {
            RestoreResult r = restore_divergence(out.u, *geom_cache_, cfg_.restore_tol, 200);
            out.u = std::move(r.u);
            info_.restore_iterations = r.iterations;
            info_.divA_residual = r.residual;
            if (r.residual > 1e-2)
                throw NumericalError("step: constraint blowup after restoration");
        }
    } else if (!cfg_.linear_only) {
        info_.divA_residual = l2_norm(div_A(out.u, *geom_cache_));
    }
    return out;
}

} // namespace mihd
