#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mihd/diagnostics.hpp"
#include "mihd/errors.hpp"
#include "mihd/evolution.hpp"
#include "oracles.hpp"

using namespace mihd;

namespace {

const std::array<double, 3> kOmega = algebraic_direction();

SimConfig base_config(int n, double dt, double m) {
    SimConfig cfg;
    cfg.n = n;
    cfg.dt = dt;
    cfg.m = m;
    cfg.nu = 1.0;
    cfg.direction = sample_direction(Direction::Provenance::Algebraic);
    return cfg;
}

double state_distance(const FlowState& a, const FlowState& b) {
    double acc = 0.0;
    for (int c = 0; c < 3; ++c) {
        acc = std::max(acc, l2_norm(a.eta[c] - b.eta[c]));
        acc = std::max(acc, l2_norm(a.u[c] - b.u[c]));
    }
    return acc;
}

} // namespace

TEST_CASE("propagator: heat limit, zero step, zero mode") {
    // m = 0: u decays as e^{-a t}, eta integrates u
    const double nu = 0.7, dt = 0.13;
    const std::array<int, 3> k{2, -1, 3};
    const double a = nu * oracles::kTwoPi * oracles::kTwoPi * 14.0;
    auto P = linear_propagator(k, kOmega, nu, 0.0, dt);
    CHECK(P[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(P[1] == doctest::Approx((1.0 - std::exp(-a * dt)) / a).epsilon(1e-13));
    CHECK(P[2] == doctest::Approx(0.0));
    CHECK(P[3] == doctest::Approx(std::exp(-a * dt)).epsilon(1e-13));

    auto I = linear_propagator(k, kOmega, 1.0, 5.0, 0.0);
    CHECK(I[0] == 1.0);
    CHECK(I[1] == 0.0);
    CHECK(I[2] == 0.0);
    CHECK(I[3] == 1.0);

    auto Z = linear_propagator({0, 0, 0}, kOmega, 3.0, 7.0, 0.25);
    CHECK(Z[0] == 1.0);
    CHECK(Z[1] == 0.25);
    CHECK(Z[2] == 0.0);
    CHECK(Z[3] == 1.0);
}

TEST_CASE("propagator matches high-accuracy ODE integration") {
    const double nu = 1.0, m = 10.0, dt = 0.01;
    const std::array<int, 3> k{1, 0, 0};
    const double a = nu * oracles::kTwoPi * oracles::kTwoPi;
    const double kw = kOmega[0];
    const double b = (oracles::kTwoPi * m * kw) * (oracles::kTwoPi * m * kw);
    auto P = linear_propagator(k, kOmega, nu, m, dt);
    auto R = oracles::rk4_companion(a, b, dt, 1e-6);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(P[i] - R[i]) <= 1e-10);
}

TEST_CASE("propagator is continuous across the critical damping line") {
    // pick a, b with a^2/4 = b, then nudge b to both sides
    const double a = 37.0;
    const double b = a * a / 4.0;
    const double dt = 0.02;
    auto mid = linear_propagator_ab(a, b, dt);
    auto lo = linear_propagator_ab(a, b * (1.0 - 1e-12), dt);
    auto hi = linear_propagator_ab(a, b * (1.0 + 1e-12), dt);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(mid[i] - lo[i]) <= 1e-10 * std::max(1.0, std::abs(mid[i])));
        CHECK(std::abs(mid[i] - hi[i]) <= 1e-10 * std::max(1.0, std::abs(mid[i])));
    }
}

TEST_CASE("evolve_linear: identity at t=0, heat decay, divergence preserved") {
    Lattice lat(8);
    FlowState st(lat);
    st.eta = leray_project(oracles::random_vector_field(lat, 3.0, 0.1, 5));
    st.u = leray_project(oracles::random_vector_field(lat, 3.0, 1.0, 6));

    auto same = evolve_linear(st, kOmega, 1.0, 4.0, 0.0);
    CHECK(state_distance(same, st) == 0.0);

    double prev = l2_norm(st.u);
    for (double t : {0.05, 0.1, 0.2, 0.4}) {
        auto out = evolve_linear(st, kOmega, 1.0, 0.0, t);
        const double cur = l2_norm(out.u);
        CHECK(cur <= prev);
        prev = cur;
        CHECK(l2_norm(divergence(out.u)) <= 1e-11);
        CHECK(l2_norm(divergence(out.eta)) <= 1e-11);
    }

    FlowState bad(lat);
    bad.u = oracles::random_vector_field(lat, 3.0, 1.0, 7); // not projected
    CHECK_THROWS_AS(evolve_linear(bad, kOmega, 1.0, 1.0, 0.5), NumericalError);
}

TEST_CASE("linear-only stepper matches the closed form over 100 steps") {
    SimConfig cfg = base_config(8, 1e-3, 16.0);
    cfg.epsilon = 0.05;
    cfg.linear_only = true;
    FlowState st0 = linearized_initial_data(make_initial_data(cfg));
    const Lattice lat(cfg.n);

    NonlinearStepper stepper(lat, cfg);
    FlowState st = st0;
    for (int i = 0; i < 100; ++i)
        st = stepper.step(st);
    auto ref = evolve_linear(st0, cfg.direction.omega, cfg.nu, cfg.m, 0.1);
    const double scale = std::max(
        {l2_norm(ref.eta), l2_norm(ref.u), 1e-30});
    CHECK(state_distance(st, ref) / scale <= 1e-8);
}

TEST_CASE("rest state is a fixed point of the nonlinear stepper") {
    SimConfig cfg = base_config(8, 1e-3, 8.0);
    const Lattice lat(cfg.n);
    NonlinearStepper stepper(lat, cfg);
    FlowState rest(lat);
    auto out = stepper.step(rest);
    CHECK(l2_norm(out.eta) == 0.0);
    CHECK(l2_norm(out.u) == 0.0);
    CHECK(stepper.last_info().pressure_iterations >= 1);
}

TEST_CASE("Richardson: two half steps vs one full step, local order 3") {
    SimConfig cfg = base_config(16, 4e-3, 8.0);
    cfg.epsilon = 0.01;
    cfg.restore_trigger = 1e9; // measure the scheme order without projection
    FlowState st0 = make_initial_data(cfg);
    const Lattice lat(cfg.n);

    // one-vs-two-half-step differences; dt = 4e-3 is pre-asymptotic for the
    // m = 8 tension oscillations (dt * omega_max ~ 0.6), so the fit window
    // sits one octave lower where the ratios have settled near 8
    std::vector<double> dts{2e-3, 1e-3, 5e-4};
    std::vector<double> diffs;
    for (double dt : dts) {
        SimConfig big = cfg;
        big.dt = dt;
        SimConfig small = cfg;
        small.dt = dt / 2;
        NonlinearStepper sb(lat, big);
        NonlinearStepper ss(lat, small);
        FlowState one = sb.step(st0);
        FlowState two = ss.step(ss.step(st0));
        diffs.push_back(state_distance(one, two));
    }
    // least squares slope of log diff vs log dt
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < dts.size(); ++i) {
        const double x = std::log(dts[i]), y = std::log(diffs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = double(dts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope >= 2.8);
}

TEST_CASE("make_initial_data: rest at eps=0, corrections scale as eps^2") {
    SimConfig cfg = base_config(16, 1e-3, 8.0);
    cfg.epsilon = 0.0;
    auto rest = make_initial_data(cfg);
    CHECK(l2_norm(rest.eta) == 0.0);
    CHECK(l2_norm(rest.u) == 0.0);

    const Lattice lat(cfg.n);
    const SpectralVectorField bar = reference_flow(lat);
    std::vector<double> eps_list{0.02, 0.01, 0.005};
    std::vector<double> corr;
    for (double e : eps_list) {
        SimConfig c = cfg;
        c.epsilon = e;
        auto st = make_initial_data(c);
        SpectralVectorField d = st.eta - e * bar;
        corr.push_back(l2_norm(d));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        const double x = std::log(eps_list[i]), y = std::log(corr[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = double(eps_list.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::abs(slope - 2.0) <= 0.1);
}

TEST_CASE("make_initial_data: volume and constraint residuals") {
    // Desk-scale baseline: the pointwise determinant carries the alias floor
    // of the unresolved residual band; the constraint residual in the
    // scheme's own (dealiased) measure reaches the fixed-point tolerance.
    SimConfig cfg = base_config(16, 1e-3, 16.0);
    cfg.epsilon = 0.05;
    auto st = make_initial_data(cfg);
    auto gc = build_geometry(st.eta, ProductRule::Collocation);
    auto gd = build_geometry(st.eta, ProductRule::Dealiased);
    CHECK(gc.det_sup_err() <= 1e-4);
    CHECK(l2_norm(div_A(st.u, gd)) <= 1e-9);
    for (int c = 0; c < 3; ++c) {
        CHECK(std::abs(st.eta[c].mean()) == 0.0);
        CHECK(std::abs(st.u[c].mean()) == 0.0);
    }

    // With the residual band resolved, the pointwise determinant meets the
    // strict tolerance.
    SimConfig fine = base_config(32, 1e-3, 16.0);
    fine.epsilon = 0.02;
    auto st32 = make_initial_data(fine);
    auto g32 = build_geometry(st32.eta, ProductRule::Collocation);
    CHECK(g32.det_sup_err() <= 1e-9);
    auto g32d = build_geometry(st32.eta, ProductRule::Dealiased);
    CHECK(l2_norm(div_A(st32.u, g32d)) <= 1e-9);
}

TEST_CASE("Stokes correction closed form: div round trip") {
    Lattice lat(16);
    auto gsrc = oracles::random_field(lat, 5.0, 1.0, 71);
    auto w = gradient(inverse_laplacian(gsrc));
    auto resid = divergence(w) - gsrc;
    CHECK(l2_norm(resid) <= 1e-12 * l2_norm(gsrc));
}

TEST_CASE("linearized_initial_data: compatibility and pinned correction size") {
    SimConfig cfg = base_config(16, 1e-3, 16.0);
    cfg.epsilon = 0.05;
    auto st = make_initial_data(cfg);
    auto lin = linearized_initial_data(st);
    CHECK(l2_norm(divergence(lin.eta)) <= 1e-12);
    CHECK(l2_norm(divergence(lin.u)) <= 1e-10);

    // corrections vanish when the input is already compatible
    FlowState clean(Lattice(16));
    clean.u = reference_flow(Lattice(16));
    auto lin2 = linearized_initial_data(clean);
    CHECK(state_distance(lin2, clean) <= 1e-14);

    // pinned size of the velocity correction at eps = 0.05
    SpectralVectorField ur = lin.u - st.u;
    CHECK(l2_norm(ur) == doctest::Approx(0.013816).epsilon(1e-4));
}

TEST_CASE("restore_divergence drives the div_A residual to tolerance") {
    Lattice lat(16);
    auto eta = oracles::random_vector_field(lat, 3.0, 0.02, 81);
    auto g = build_geometry(eta, ProductRule::Dealiased);
    auto u = oracles::random_vector_field(lat, 4.0, 0.5, 82);
    REQUIRE(l2_norm(div_A(u, g)) > 1e-3);
    auto r = restore_divergence(u, g, 1e-12, 200);
    CHECK(r.residual <= 1e-11);
}

TEST_CASE("dt stability bound accepts the baseline and rejects huge steps") {
    SimConfig cfg = base_config(16, 1e-3, 16.0);
    cfg.validate();
    cfg.dt = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
