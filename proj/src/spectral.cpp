#include "mihd/spectral.hpp"

#include <cmath>

#include "mihd/errors.hpp"
#include "mihd/fft.hpp"
#include "mihd/padded.hpp"

namespace mihd {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double ipow(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i)
        r *= x;
    return r;
}

/// Signed frequency used by odd-order derivative multipliers: the Nyquist row
/// maps to zero.
inline int odd_freq(const Lattice& lat, int j) {
    const int k = lat.freq(j);
    return k == lat.n() / 2 ? 0 : k;
}

} // namespace

SpectralScalarField axis_derivative(const SpectralScalarField& f, int axis) {
    const Lattice& lat = f.lattice();
    const int n = lat.n();
    SpectralScalarField out(lat);
    for (int j0 = 0; j0 < n; ++j0)
        for (int j1 = 0; j1 < n; ++j1)
            for (int j2 = 0; j2 < n; ++j2) {
                const int k = odd_freq(lat, axis == 0 ? j0 : axis == 1 ? j1 : j2);
                const std::size_t idx = lat.flat(j0, j1, j2);
                out.coeffs()[idx] = Complex(0.0, kTwoPi * k) * f.coeffs()[idx];
            }
    return out;
}

SpectralScalarField directional_derivative(const SpectralScalarField& f,
                                           const std::array<double, 3>& omega) {
    const Lattice& lat = f.lattice();
    const int n = lat.n();
    SpectralScalarField out(lat);
    for (int j0 = 0; j0 < n; ++j0) {
        const double a0 = omega[0] * odd_freq(lat, j0);
        for (int j1 = 0; j1 < n; ++j1) {
            const double a01 = a0 + omega[1] * odd_freq(lat, j1);
            for (int j2 = 0; j2 < n; ++j2) {
                const double kdotw = a01 + omega[2] * odd_freq(lat, j2);
                const std::size_t idx = lat.flat(j0, j1, j2);
                out.coeffs()[idx] = Complex(0.0, kTwoPi * kdotw) * f.coeffs()[idx];
            }
        }
    }
    return out;
}

SpectralVectorField directional_derivative(const SpectralVectorField& v,
                                           const std::array<double, 3>& omega) {
    SpectralVectorField out(v.lattice());
    for (int i = 0; i < 3; ++i)
        out[i] = directional_derivative(v[i], omega);
    return out;
}

SpectralScalarField laplacian(const SpectralScalarField& f) {
    const Lattice& lat = f.lattice();
    const int n = lat.n();
    SpectralScalarField out(lat);
    for (int j0 = 0; j0 < n; ++j0)
        for (int j1 = 0; j1 < n; ++j1)
            for (int j2 = 0; j2 < n; ++j2) {
                const double k0 = lat.freq(j0), k1 = lat.freq(j1), k2 = lat.freq(j2);
                const double k2abs = kTwoPi * kTwoPi * (k0 * k0 + k1 * k1 + k2 * k2);
                const std::size_t idx = lat.flat(j0, j1, j2);
                out.coeffs()[idx] = -k2abs * f.coeffs()[idx];
            }
    return out;
}

SpectralVectorField gradient(const SpectralScalarField& f) {
    SpectralVectorField out(f.lattice());
    for (int i = 0; i < 3; ++i)
        out[i] = axis_derivative(f, i);
    return out;
}

SpectralScalarField divergence(const SpectralVectorField& v) {
    SpectralScalarField out = axis_derivative(v[0], 0);
    out += axis_derivative(v[1], 1);
    out += axis_derivative(v[2], 2);
    return out;
}

double sobolev_norm(const SpectralScalarField& f, int s) {
    const Lattice& lat = f.lattice();
    const int n = lat.n();
    double acc = 0.0;
    for (int j0 = 0; j0 < n; ++j0)
        for (int j1 = 0; j1 < n; ++j1)
            for (int j2 = 0; j2 < n; ++j2) {
                const double k0 = lat.freq(j0), k1 = lat.freq(j1), k2 = lat.freq(j2);
                const double w =
                    ipow(1.0 + kTwoPi * kTwoPi * (k0 * k0 + k1 * k1 + k2 * k2), s);
                acc += w * std::norm(f.coeffs()[lat.flat(j0, j1, j2)]);
            }
    return std::sqrt(acc);
}

double sobolev_norm(const SpectralVectorField& v, int s) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double c = sobolev_norm(v[i], s);
        acc += c * c;
    }
    return std::sqrt(acc);
}

double l2_inner(const SpectralScalarField& f, const SpectralScalarField& g) {
    if (f.lattice() != g.lattice())
        throw std::invalid_argument("l2_inner: lattice mismatch");
    double acc = 0.0;
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return acc;
}

double l2_inner(const SpectralVectorField& f, const SpectralVectorField& g) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
        acc += l2_inner(f[i], g[i]);
    return acc;
}

SpectralScalarField collocation_product(const SpectralScalarField& f,
                                        const SpectralScalarField& g) {
    if (f.lattice() != g.lattice())
        throw std::invalid_argument("product: lattice mismatch");
    const std::vector<double> a = f.samples();
    const std::vector<double> b = g.samples();
    std::vector<double> prod(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        prod[i] = a[i] * b[i];
    return forward_transform_raw(f.lattice(), prod);
}

namespace detail {

int padded_size(int n) {
    int m = (3 * n) / 2;
    if (m % 2 != 0)
        ++m;
    return m;
}

std::vector<double> padded_samples(const SpectralScalarField& f, int m) {
    const Lattice& lat = f.lattice();
    const Lattice big(m);
    const int h = lat.n() / 2;
    std::vector<Complex> work(big.size(), Complex(0.0, 0.0));
    for (int k0 = -h + 1; k0 < h; ++k0)
        for (int k1 = -h + 1; k1 < h; ++k1)
            for (int k2 = -h + 1; k2 < h; ++k2)
                work[big.flat(big.index_of_freq(k0), big.index_of_freq(k1),
                              big.index_of_freq(k2))] = f.coeff(k0, k1, k2);
    fft::backward(m, work.data());
    std::vector<double> out(work.size());
    for (std::size_t i = 0; i < work.size(); ++i)
        out[i] = work[i].real();
    return out;
}

SpectralScalarField harvest_padded(const Lattice& lat, int m,
                                   const std::vector<double>& samples) {
    const Lattice big(m);
    std::vector<Complex> work(big.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        work[i] = Complex(samples[i], 0.0);
    fft::forward(m, work.data());
    const double scale = 1.0 / static_cast<double>(big.size());

    SpectralScalarField out(lat);
    const double cutoff2 = lat.dealias_cutoff() * lat.dealias_cutoff() + 1e-9;
    const int h = lat.n() / 2;
    for (int k0 = -h + 1; k0 < h; ++k0)
        for (int k1 = -h + 1; k1 < h; ++k1)
            for (int k2 = -h + 1; k2 < h; ++k2) {
                if (double(k0) * k0 + double(k1) * k1 + double(k2) * k2 > cutoff2)
                    continue;
                out.set_coeff(k0, k1, k2,
                              scale * work[big.flat(big.index_of_freq(k0), big.index_of_freq(k1),
                                                    big.index_of_freq(k2))]);
            }
    out.enforce_hermitian();
    return out;
}

} // namespace detail

SpectralScalarField dealiased_product(const SpectralScalarField& f,
                                      const SpectralScalarField& g) {
    if (f.lattice() != g.lattice())
        throw std::invalid_argument("product: lattice mismatch");
    const Lattice& lat = f.lattice();
    const int m = detail::padded_size(lat.n());
    std::vector<double> a = detail::padded_samples(f, m);
    const std::vector<double> b = detail::padded_samples(g, m);
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = a[i] * b[i];
    return detail::harvest_padded(lat, m, a);
}

SpectralScalarField product(const SpectralScalarField& f, const SpectralScalarField& g,
                            ProductRule rule) {
    return rule == ProductRule::Collocation ? collocation_product(f, g)
                                            : dealiased_product(f, g);
}

SpectralScalarField inverse_laplacian(const SpectralScalarField& f) {
    const double mean = std::abs(f.mean());
    if (mean > 1e-12 * std::max(1.0, l2_norm(f)))
        throw NumericalError("inverse_laplacian: incompatible source (nonzero mean)");
    const Lattice& lat = f.lattice();
    const int n = lat.n();
    SpectralScalarField out(lat);
    for (int j0 = 0; j0 < n; ++j0)
        for (int j1 = 0; j1 < n; ++j1)
            for (int j2 = 0; j2 < n; ++j2) {
                if (j0 == 0 && j1 == 0 && j2 == 0)
                    continue;
                const double k0 = lat.freq(j0), k1 = lat.freq(j1), k2 = lat.freq(j2);
                const double k2abs = kTwoPi * kTwoPi * (k0 * k0 + k1 * k1 + k2 * k2);
                const std::size_t idx = lat.flat(j0, j1, j2);
                out.coeffs()[idx] = -f.coeffs()[idx] / k2abs;
            }
    return out;
}

SpectralVectorField leray_project(const SpectralVectorField& v) {
    const Lattice& lat = v.lattice();
    const int n = lat.n();
    SpectralVectorField out(lat);
    for (int j0 = 0; j0 < n; ++j0)
        for (int j1 = 0; j1 < n; ++j1)
            for (int j2 = 0; j2 < n; ++j2) {
                const std::size_t idx = lat.flat(j0, j1, j2);
                const double k0 = lat.freq(j0), k1 = lat.freq(j1), k2 = lat.freq(j2);
                const double kk = k0 * k0 + k1 * k1 + k2 * k2;
                const Complex v0 = v[0].coeffs()[idx];
                const Complex v1 = v[1].coeffs()[idx];
                const Complex v2 = v[2].coeffs()[idx];
                if (kk == 0.0) {
                    out[0].coeffs()[idx] = v0;
                    out[1].coeffs()[idx] = v1;
                    out[2].coeffs()[idx] = v2;
                    continue;
                }
                const Complex kv = (k0 * v0 + k1 * v1 + k2 * v2) / kk;
                out[0].coeffs()[idx] = v0 - k0 * kv;
                out[1].coeffs()[idx] = v1 - k1 * kv;
                out[2].coeffs()[idx] = v2 - k2 * kv;
            }
    return out;
}

} // namespace mihd
