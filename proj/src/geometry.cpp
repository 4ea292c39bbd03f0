#include "mihd/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "mihd/padded.hpp"

namespace mihd {

namespace {

// cof(M)_ij = M_{i+1,j+1} M_{i+2,j+2} - M_{i+1,j+2} M_{i+2,j+1}, indices
// cyclic mod 3. Polarized form with the first factor from X and the second
// from Y; cof(M) = bil(M, M), d cof(M)[H] = bil(M, H) + bil(H, M).
struct CofIdx {
    int a0, a1, b0, b1, c0, c1, d0, d1;
};
CofIdx cof_idx(int i, int j) {
    const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    return {i1, j1, i2, j2, i1, j2, i2, j1};
}

} // namespace

std::vector<double> cofactor_bilinear_entry(const GridMat3& X, const GridMat3& Y, int i,
                                            int j) {
    const CofIdx ix = cof_idx(i, j);
    const auto& xa = X[ix.a0][ix.a1];
    const auto& yb = Y[ix.b0][ix.b1];
    const auto& xc = X[ix.c0][ix.c1];
    const auto& yd = Y[ix.d0][ix.d1];
    std::vector<double> out(xa.size());
    for (std::size_t p = 0; p < out.size(); ++p)
        out[p] = xa[p] * yb[p] - xc[p] * yd[p];
    return out;
}

double GeometryBundle::grad_sup() const {
    double m = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (double v : grad_s[i][j])
                m = std::max(m, std::abs(v));
    return m;
}

double GeometryBundle::det_sup_err() const {
    double m = 0.0;
    for (double v : det_s)
        m = std::max(m, std::abs(v - 1.0));
    return m;
}

GeometryBundle build_geometry(const SpectralVectorField& eta, ProductRule rule,
                              double source_state_time) {
    GeometryBundle g;
    g.lattice = eta.lattice();
    g.rule = rule;
    g.source_state_time = source_state_time;

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            g.grad_eta[i][j] = axis_derivative(eta[i], j);
            g.grad_s[i][j] = g.grad_eta[i][j].samples();
        }

    // linear part: tildeA_L = tr(G) I - G^T
    SpectralScalarField trace = g.grad_eta[0][0];
    trace += g.grad_eta[1][1];
    trace += g.grad_eta[2][2];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            g.tildeA_L[i][j] = SpectralScalarField(g.lattice);
            if (i == j)
                g.tildeA_L[i][j] += trace;
            g.tildeA_L[i][j] -= g.grad_eta[j][i];
        }

    const std::size_t npts = g.lattice.size();

    if (rule == ProductRule::Collocation) {
        // quadratic part and residuals assembled pointwise on the grid
        GridMat3 n_s;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                n_s[i][j] = cofactor_bilinear_entry(g.grad_s, g.grad_s, i, j);
                g.tildeA_N[i][j] = forward_transform_raw(g.lattice, n_s[i][j]);
            }
        std::vector<double> r(npts, 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const auto& gij = g.grad_s[i][j];
                const auto& gji = g.grad_s[j][i];
                const auto& gii = g.grad_s[i][i];
                const auto& gjj = g.grad_s[j][j];
                for (std::size_t p = 0; p < npts; ++p)
                    r[p] += gij[p] * gji[p] - gii[p] * gjj[p];
            }
        for (int j = 0; j < 3; ++j) {
            const auto& g0j = g.grad_s[0][j];
            const auto& n0j = n_s[0][j];
            for (std::size_t p = 0; p < npts; ++p)
                r[p] -= g0j[p] * n0j[p];
        }
        g.r_eta = forward_transform_raw(g.lattice, r);
    } else {
        const int m = detail::padded_size(g.lattice.n());
        g.pad_n = m;
        GridMat3& gp = g.grad_pad;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                gp[i][j] = detail::padded_samples(g.grad_eta[i][j], m);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                g.tildeA_N[i][j] =
                    detail::harvest_padded(g.lattice, m, cofactor_bilinear_entry(gp, gp, i, j));
        std::vector<double> r2(gp[0][0].size(), 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                for (std::size_t p = 0; p < r2.size(); ++p)
                    r2[p] += gp[i][j][p] * gp[j][i][p] - gp[i][i][p] * gp[j][j][p];
        g.r_eta = detail::harvest_padded(g.lattice, m, r2);
        // cubic residual as nested dealiased quadratics
        for (int j = 0; j < 3; ++j)
            g.r_eta -= dealiased_product(g.grad_eta[0][j], g.tildeA_N[0][j]);
    }

    // cof = I + tildeA_L + tildeA_N; det = 1 + div eta - r_eta
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            g.cof[i][j] = g.tildeA_L[i][j] + g.tildeA_N[i][j];
            if (i == j)
                g.cof[i][j].set_coeff(0, 0, 0, g.cof[i][j].coeff(0, 0, 0) + 1.0);
            g.cof_s[i][j] = g.cof[i][j].samples();
        }
    g.det_field = trace - g.r_eta;
    g.det_field.set_coeff(0, 0, 0, g.det_field.coeff(0, 0, 0) + 1.0);
    g.det_s = g.det_field.samples();

    if (rule == ProductRule::Dealiased) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                g.cof_pad[i][j] = detail::padded_samples(g.cof[i][j], g.pad_n);
    }
    return g;
}

SpectralScalarField div_residual(const SpectralVectorField& eta, ProductRule rule) {
    return build_geometry(eta, rule).r_eta;
}

namespace {

/// sum_{l,k} W_{lk} d_k v_l with W = cof or cof - I, on the rule's grid.
SpectralScalarField contract_matrix_gradient(const SpectralVectorField& v,
                                             const GeometryBundle& g,
                                             bool subtract_identity) {
    if (v.lattice() != g.lattice)
        throw std::invalid_argument("div_A: lattice mismatch");
    if (g.rule == ProductRule::Collocation) {
        std::vector<double> acc(g.lattice.size(), 0.0);
        for (int l = 0; l < 3; ++l)
            for (int k = 0; k < 3; ++k) {
                const std::vector<double> dv = axis_derivative(v[l], k).samples();
                const auto& w = g.cof_s[l][k];
                const double shift = (subtract_identity && l == k) ? 1.0 : 0.0;
                for (std::size_t p = 0; p < acc.size(); ++p)
                    acc[p] += (w[p] - shift) * dv[p];
            }
        return forward_transform_raw(g.lattice, acc);
    }
    const int m = g.pad_n;
    std::vector<double> acc(static_cast<std::size_t>(m) * m * m, 0.0);
    for (int l = 0; l < 3; ++l)
        for (int k = 0; k < 3; ++k) {
            const std::vector<double> dv =
                detail::padded_samples(axis_derivative(v[l], k), m);
            const auto& w = g.cof_pad[l][k];
            const double shift = (subtract_identity && l == k) ? 1.0 : 0.0;
            for (std::size_t p = 0; p < acc.size(); ++p)
                acc[p] += (w[p] - shift) * dv[p];
        }
    return detail::harvest_padded(g.lattice, m, acc);
}

/// (W_{ik} d_k f)_i with W = cof or cof - I.
SpectralVectorField apply_matrix_rows(const SpectralScalarField& f, const GeometryBundle& g,
                                      bool subtract_identity) {
    if (f.lattice() != g.lattice)
        throw std::invalid_argument("grad_A: lattice mismatch");
    SpectralVectorField out(g.lattice);
    if (g.rule == ProductRule::Collocation) {
        std::array<std::vector<double>, 3> df;
        for (int k = 0; k < 3; ++k)
            df[k] = axis_derivative(f, k).samples();
        for (int i = 0; i < 3; ++i) {
            std::vector<double> acc(g.lattice.size(), 0.0);
            for (int k = 0; k < 3; ++k) {
                const auto& w = g.cof_s[i][k];
                const double shift = (subtract_identity && i == k) ? 1.0 : 0.0;
                for (std::size_t p = 0; p < acc.size(); ++p)
                    acc[p] += (w[p] - shift) * df[k][p];
            }
            out[i] = forward_transform_raw(g.lattice, acc);
        }
        return out;
    }
    const int m = g.pad_n;
    std::array<std::vector<double>, 3> df;
    for (int k = 0; k < 3; ++k)
        df[k] = detail::padded_samples(axis_derivative(f, k), m);
    for (int i = 0; i < 3; ++i) {
        std::vector<double> acc(df[0].size(), 0.0);
        for (int k = 0; k < 3; ++k) {
            const auto& w = g.cof_pad[i][k];
            const double shift = (subtract_identity && i == k) ? 1.0 : 0.0;
            for (std::size_t p = 0; p < acc.size(); ++p)
                acc[p] += (w[p] - shift) * df[k][p];
        }
        out[i] = detail::harvest_padded(g.lattice, m, acc);
    }
    return out;
}

} // namespace

SpectralScalarField div_A(const SpectralVectorField& v, const GeometryBundle& g) {
    return contract_matrix_gradient(v, g, false);
}

SpectralScalarField div_tildeA(const SpectralVectorField& v, const GeometryBundle& g) {
    return contract_matrix_gradient(v, g, true);
}

SpectralVectorField grad_A(const SpectralScalarField& f, const GeometryBundle& g) {
    return apply_matrix_rows(f, g, false);
}

SpectralVectorField grad_tildeA(const SpectralScalarField& f, const GeometryBundle& g) {
    return apply_matrix_rows(f, g, true);
}

SpectralScalarField laplacian_A(const SpectralScalarField& f, const GeometryBundle& g) {
    return div_A(grad_A(f, g), g);
}

SpectralVectorField laplacian_A(const SpectralVectorField& v, const GeometryBundle& g) {
    SpectralVectorField out(v.lattice());
    for (int i = 0; i < 3; ++i)
        out[i] = laplacian_A(v[i], g);
    return out;
}

SpectralVectorField recover_magnetic(const SpectralVectorField& eta, double m,
                                     const std::array<double, 3>& omega) {
    if (m < 0.0)
        throw std::invalid_argument("recover_magnetic: field intensity must be nonnegative");
    SpectralVectorField b(eta.lattice());
    for (int i = 0; i < 3; ++i) {
        b[i] = directional_derivative(eta[i], omega);
        b[i] *= m;
        b[i].set_coeff(0, 0, 0, b[i].coeff(0, 0, 0) + m * omega[i]);
    }
    return b;
}

} // namespace mihd
