#include "mihd/pressure.hpp"

#include <cmath>
#include <limits>

#include "mihd/errors.hpp"
#include "mihd/padded.hpp"

namespace mihd {

namespace {

/// Shared assembly state for one solve: the q-independent source part is
/// computed once, the q-dependent part re-evaluated per Picard iteration.
struct SourceAssembler {
    const FlowState& state;
    const GeometryBundle& g;
    double m2;
    double nu;
    std::array<double, 3> omega;

    bool padded;
    int grid_n; // n or pad_n
    std::size_t npts;
    GridMat3 tilde_s;       // tildeA samples on the working grid
    SpectralScalarField s0; // q-independent part (mean-zero)

    SourceAssembler(const FlowState& st, const GeometryBundle& geom,
                    const std::array<double, 3>& w, double m, double nu_)
        : state(st), g(geom), m2(m * m), nu(nu_), omega(w) {
        padded = g.rule == ProductRule::Dealiased;
        grid_n = padded ? g.pad_n : g.lattice.n();
        npts = static_cast<std::size_t>(grid_n) * grid_n * grid_n;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                tilde_s[i][j] = padded ? g.cof_pad[i][j] : g.cof_s[i][j];
                if (i == j)
                    for (auto& v : tilde_s[i][j])
                        v -= 1.0;
            }
        build_constant_part();
    }

    std::vector<double> grid_samples(const SpectralScalarField& f) const {
        return padded ? detail::padded_samples(f, grid_n) : f.samples();
    }
    SpectralScalarField to_field(const std::vector<double>& s) const {
        return padded ? detail::harvest_padded(g.lattice, grid_n, s)
                      : forward_transform_raw(g.lattice, s);
    }

    void build_constant_part() {
        // A_t = tr(grad u) I - (grad u)^T + bil(G, grad u) + bil(grad u, G)
        GridMat3 du;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                du[i][j] = grid_samples(axis_derivative(state.u[i], j));
        const GridMat3& gs = padded ? g.grad_pad : g.grad_s;

        std::vector<double> tr(npts, 0.0);
        for (std::size_t p = 0; p < npts; ++p)
            tr[p] = du[0][0][p] + du[1][1][p] + du[2][2][p];

        Mat3Field At;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                std::vector<double> quad = cofactor_bilinear_entry(gs, du, i, j);
                const std::vector<double> quad2 = cofactor_bilinear_entry(du, gs, i, j);
                for (std::size_t p = 0; p < npts; ++p) {
                    quad[p] += quad2[p] - du[j][i][p];
                    if (i == j)
                        quad[p] += tr[p];
                }
                At[i][j] = to_field(quad);
            }

        // div(A_t^T u): Y_i = (A_t)_{li} u_l, nested product levels
        std::array<std::vector<double>, 3> us;
        for (int l = 0; l < 3; ++l)
            us[l] = grid_samples(state.u[l]);
        SpectralVectorField Y(g.lattice);
        for (int i = 0; i < 3; ++i) {
            std::vector<double> acc(npts, 0.0);
            for (int l = 0; l < 3; ++l) {
                const std::vector<double> at = grid_samples(At[l][i]);
                for (std::size_t p = 0; p < npts; ++p)
                    acc[p] += at[p] * us[l][p];
            }
            Y[i] = to_field(acc);
        }
        s0 = divergence(Y);

        // m^2 (d_omega^2 div eta + div_tildeA d_omega^2 eta)
        SpectralVectorField w2 =
            directional_derivative(directional_derivative(state.eta, omega), omega);
        std::vector<double> acc(npts, 0.0);
        for (int l = 0; l < 3; ++l)
            for (int k = 0; k < 3; ++k) {
                const std::vector<double> dw = grid_samples(axis_derivative(w2[l], k));
                const auto& ts = tilde_s[l][k];
                for (std::size_t p = 0; p < npts; ++p)
                    acc[p] += ts[p] * dw[p];
            }
        SpectralScalarField tension = to_field(acc);
        tension += directional_derivative(
            directional_derivative(divergence(state.eta), omega), omega);
        tension *= m2;
        s0 += tension;
        s0.set_mean_zero();
    }

    /// -div((tildeA + tildeA^T) grad q + tildeA^T grad_tildeA q)
    SpectralScalarField q_part(const SpectralScalarField& q) const {
        std::array<std::vector<double>, 3> dq;
        for (int k = 0; k < 3; ++k)
            dq[k] = grid_samples(axis_derivative(q, k));

        // W = grad_tildeA q, truncated before re-entering the next product
        SpectralVectorField W(g.lattice);
        for (int i = 0; i < 3; ++i) {
            std::vector<double> acc(npts, 0.0);
            for (int k = 0; k < 3; ++k)
                for (std::size_t p = 0; p < npts; ++p)
                    acc[p] += tilde_s[i][k][p] * dq[k][p];
            W[i] = to_field(acc);
        }

        SpectralVectorField Z(g.lattice);
        for (int i = 0; i < 3; ++i) {
            std::vector<double> acc(npts, 0.0);
            for (int k = 0; k < 3; ++k) {
                const std::vector<double> wk = grid_samples(W[k]);
                for (std::size_t p = 0; p < npts; ++p)
                    acc[p] += (tilde_s[i][k][p] + tilde_s[k][i][p]) * dq[k][p] +
                              tilde_s[k][i][p] * wk[p];
            }
            Z[i] = to_field(acc);
        }
        SpectralScalarField out = divergence(Z);
        out *= -1.0;
        return out;
    }

    SpectralScalarField source(const SpectralScalarField& q) const {
        SpectralScalarField f = s0 + q_part(q);
        f.set_mean_zero();
        return f;
    }
};

} // namespace

SpectralScalarField pressure_source(const FlowState& state, const GeometryBundle& g,
                                    const SpectralScalarField& q_guess,
                                    const std::array<double, 3>& omega, double m,
                                    double nu) {
    SourceAssembler a(state, g, omega, m, nu);
    return a.source(q_guess);
}

PressureSolveReport solve_pressure(const FlowState& state, const GeometryBundle& g,
                                   const std::array<double, 3>& omega, double m, double nu,
                                   const PressureOptions& opts,
                                   const SpectralScalarField* seed_q) {
    SourceAssembler a(state, g, omega, m, nu);

    PressureSolveReport rep;
    rep.grad_sup = g.grad_sup();
    rep.guard_exceeded = rep.grad_sup > opts.guard_sup;

    SpectralScalarField q = seed_q ? *seed_q : SpectralScalarField(g.lattice);
    double prev_delta = -1.0;
    int growth_streak = 0;
    bool converged = false;

    for (int it = 1; it <= opts.max_iter; ++it) {
        SpectralScalarField q_next = inverse_laplacian(a.source(q));
        const double delta = l2_norm(q_next - q);
        q = std::move(q_next);
        rep.iterations = it;
        if (prev_delta >= 0.0) {
            const double ratio =
                prev_delta > 0.0
                    ? delta / prev_delta
                    : (delta > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
            rep.contraction_estimate = ratio;
            growth_streak = ratio >= 1.0 ? growth_streak + 1 : 0;
            if (growth_streak >= 3)
                throw NumericalError("pressure solve: no contraction");
        }
        prev_delta = delta;
        if (delta <= opts.tol * std::max(l2_norm(q), 1e-30)) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericalError("pressure solve: tolerance not met within max iterations");

    const SpectralScalarField f = a.source(q);
    const double fn = l2_norm(f);
    rep.residual =
        l2_norm(laplacian(q) - f) / std::max(fn, std::numeric_limits<double>::epsilon());
    rep.q = std::move(q);
    return rep;
}

} // namespace mihd
