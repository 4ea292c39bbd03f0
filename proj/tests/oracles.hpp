// Test-only oracles: independent reference computations the unit and
// acceptance suites check the library against. Everything here is written
// the slow, obviously-correct way (direct summation, finite differences,
// pointwise linear algebra) and must stay independent of the spectral
// implementation paths it is used to verify.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "mihd/field.hpp"
#include "mihd/rng.hpp"

namespace oracles {

using mihd::Complex;
using mihd::Lattice;
using mihd::SpectralScalarField;
using mihd::SpectralVectorField;

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Direct O(N^2) forward DFT of real samples, normalized by 1/N.
inline std::vector<Complex> dft3_direct(const std::vector<double>& samples, int n) {
    const Lattice lat(n);
    std::vector<Complex> out(lat.size(), Complex(0, 0));
    for (int k0 = 0; k0 < n; ++k0)
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = 0; k2 < n; ++k2) {
                Complex acc(0, 0);
                for (int j0 = 0; j0 < n; ++j0)
                    for (int j1 = 0; j1 < n; ++j1)
                        for (int j2 = 0; j2 < n; ++j2) {
                            const double phase =
                                -kTwoPi *
                                (double(k0) * j0 + double(k1) * j1 + double(k2) * j2) / n;
                            acc += samples[lat.flat(j0, j1, j2)] *
                                   Complex(std::cos(phase), std::sin(phase));
                        }
                out[lat.flat(k0, k1, k2)] = acc / double(lat.size());
            }
    return out;
}

/// Evaluate a spectral field at an arbitrary point by direct mode summation.
inline double eval_field(const SpectralScalarField& f, double y0, double y1, double y2) {
    const Lattice& lat = f.lattice();
    const int n = lat.n();
    Complex acc(0, 0);
    for (int j0 = 0; j0 < n; ++j0)
        for (int j1 = 0; j1 < n; ++j1)
            for (int j2 = 0; j2 < n; ++j2) {
                const Complex c = f.coeffs()[lat.flat(j0, j1, j2)];
                if (c == Complex(0, 0))
                    continue;
                const double phase =
                    kTwoPi * (lat.freq(j0) * y0 + lat.freq(j1) * y1 + lat.freq(j2) * y2);
                acc += c * Complex(std::cos(phase), std::sin(phase));
            }
    return acc.real();
}

/// 4th-order centered finite difference of f along a unit direction.
inline double fd_directional(const SpectralScalarField& f, const std::array<double, 3>& w,
                             double y0, double y1, double y2, double h) {
    auto at = [&](double s) {
        return eval_field(f, y0 + s * w[0], y1 + s * w[1], y2 + s * w[2]);
    };
    return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
}

/// H^s norm through the derivative route: ||f||_s^2 = sum_j C(s,j) ||D^j f||_0^2
/// with the L2 pieces evaluated by grid quadrature of |D^j f|^2, where D^j f is
/// accumulated by j repeated multiplications with |2 pi k|^2 weights. Uses the
/// binomial expansion of (1+|2 pi k|^2)^s, so it never forms the multiplier
/// (1+|2 pi k|^2)^s directly.
inline double sobolev_direct(const SpectralScalarField& f, int s) {
    const Lattice& lat = f.lattice();
    const int n = lat.n();
    // binomials C(s, j)
    std::vector<double> binom(s + 1, 1.0);
    for (int j = 1; j <= s; ++j)
        binom[j] = binom[j - 1] * double(s - j + 1) / double(j);
    double total = 0.0;
    SpectralScalarField g = f;
    for (int j = 0; j <= s; ++j) {
        // grid quadrature of |g|^2
        const std::vector<double> smp = g.samples();
        double l2 = 0.0;
        for (double v : smp)
            l2 += v * v;
        l2 /= double(lat.size());
        total += binom[j] * l2;
        if (j == s)
            break;
        // g <- |2 pi k| g (half-Laplacian weight per factor)
        for (int j0 = 0; j0 < n; ++j0)
            for (int j1 = 0; j1 < n; ++j1)
                for (int j2 = 0; j2 < n; ++j2) {
                    const double k0 = lat.freq(j0), k1 = lat.freq(j1), k2 = lat.freq(j2);
                    g.coeffs()[lat.flat(j0, j1, j2)] *=
                        kTwoPi * std::sqrt(k0 * k0 + k1 * k1 + k2 * k2);
                }
    }
    return std::sqrt(total);
}

/// Exact convolution of two band-limited coefficient sets, restricted to
/// output modes with |k| <= out_band. Direct double sum over mode pairs.
inline SpectralScalarField convolve_direct(const SpectralScalarField& f,
                                           const SpectralScalarField& g, double out_band) {
    const Lattice& lat = f.lattice();
    const int n = lat.n();
    const int h = n / 2;
    struct Mode {
        int k0, k1, k2;
        Complex c;
    };
    auto collect = [&](const SpectralScalarField& x) {
        std::vector<Mode> modes;
        for (int k0 = -h + 1; k0 <= h; ++k0)
            for (int k1 = -h + 1; k1 <= h; ++k1)
                for (int k2 = -h + 1; k2 <= h; ++k2) {
                    const Complex c = x.coeff(k0, k1, k2);
                    if (c != Complex(0, 0))
                        modes.push_back({k0, k1, k2, c});
                }
        return modes;
    };
    const auto fm = collect(f);
    const auto gm = collect(g);
    SpectralScalarField out(lat);
    for (const auto& a : fm)
        for (const auto& b : gm) {
            const int k0 = a.k0 + b.k0, k1 = a.k1 + b.k1, k2 = a.k2 + b.k2;
            if (double(k0) * k0 + double(k1) * k1 + double(k2) * k2 >
                out_band * out_band + 1e-9)
                continue;
            if (k0 <= -h || k0 > h || k1 <= -h || k1 > h || k2 <= -h || k2 > h)
                continue;
            out.set_coeff(k0, k1, k2, out.coeff(k0, k1, k2) + a.c * b.c);
        }
    return out;
}

/// Random band-limited Hermitian field: mean zero, |k| <= band, coefficients
/// from a seeded generator, rescaled so the sup of |samples| is `amplitude`.
inline SpectralScalarField random_field(const Lattice& lat, double band, double amplitude,
                                        std::uint64_t seed) {
    mihd::SplitMix64 rng(seed);
    SpectralScalarField f(lat);
    const int b = static_cast<int>(band);
    for (int k0 = -b; k0 <= b; ++k0)
        for (int k1 = -b; k1 <= b; ++k1)
            for (int k2 = -b; k2 <= b; ++k2) {
                if (k0 == 0 && k1 == 0 && k2 == 0)
                    continue;
                if (double(k0) * k0 + double(k1) * k1 + double(k2) * k2 > band * band)
                    continue;
                f.set_coeff(k0, k1, k2, Complex(rng.symmetric(), rng.symmetric()));
            }
    f.enforce_hermitian();
    f.zero_nyquist();
    f.set_mean_zero();
    double sup = 0.0;
    for (double v : f.samples())
        sup = std::max(sup, std::abs(v));
    if (sup > 0.0)
        f *= amplitude / sup;
    return f;
}

inline SpectralVectorField random_vector_field(const Lattice& lat, double band,
                                               double amplitude, std::uint64_t seed) {
    SpectralVectorField v(lat);
    for (int i = 0; i < 3; ++i)
        v[i] = random_field(lat, band, amplitude, seed + 1000003ULL * (i + 1));
    return v;
}

/// max_j |samples_j|
inline double sup_abs(const std::vector<double>& s) {
    double m = 0.0;
    for (double v : s)
        m = std::max(m, std::abs(v));
    return m;
}

/// max over grid samples of |f|
inline double sup_abs(const SpectralScalarField& f) { return sup_abs(f.samples()); }

// --- pointwise 3x3 helpers -------------------------------------------------

using Mat3 = std::array<std::array<double, 3>, 3>;

inline double det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Cofactor matrix: cof(M)^T M = det(M) I.
inline Mat3 cof3(const Mat3& m) {
    Mat3 c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
            const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
            c[i][j] = m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1];
        }
    return c;
}

/// Fixed-step RK4 for the per-mode companion system
///   eta' = u, u' = -b eta - a u,
/// used as the independent reference for the closed-form propagator.
inline std::array<double, 4> rk4_companion(double a, double b, double t, double dt) {
    // integrates the matrix ODE M' = A M, M(0) = I
    std::array<double, 4> M{1, 0, 0, 1}; // row-major [[m00,m01],[m10,m11]]
    auto deriv = [&](const std::array<double, 4>& m) {
        return std::array<double, 4>{m[2], m[3], -b * m[0] - a * m[2], -b * m[1] - a * m[3]};
    };
    const long steps = std::lround(t / dt);
    for (long s = 0; s < steps; ++s) {
        auto add = [](const std::array<double, 4>& x, const std::array<double, 4>& y,
                      double c) {
            std::array<double, 4> r;
            for (int i = 0; i < 4; ++i)
                r[i] = x[i] + c * y[i];
            return r;
        };
        const auto k1 = deriv(M);
        const auto k2 = deriv(add(M, k1, dt / 2));
        const auto k3 = deriv(add(M, k2, dt / 2));
        const auto k4 = deriv(add(M, k3, dt));
        for (int i = 0; i < 4; ++i)
            M[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return M;
}

} // namespace oracles
