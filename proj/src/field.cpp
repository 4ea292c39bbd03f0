#include "mihd/field.hpp"

#include <stdexcept>

#include "mihd/fft.hpp"

namespace mihd {

void SpectralScalarField::zero_nyquist() {
    const int n = lattice_.n();
    const int h = n / 2;
    for (int j0 = 0; j0 < n; ++j0)
        for (int j1 = 0; j1 < n; ++j1)
            for (int j2 = 0; j2 < n; ++j2)
                if (j0 == h || j1 == h || j2 == h)
                    coeffs_[lattice_.flat(j0, j1, j2)] = Complex(0.0, 0.0);
}

void SpectralScalarField::enforce_hermitian() {
    const int n = lattice_.n();
    for (int j0 = 0; j0 < n; ++j0) {
        const int i0 = (n - j0) % n;
        for (int j1 = 0; j1 < n; ++j1) {
            const int i1 = (n - j1) % n;
            for (int j2 = 0; j2 < n; ++j2) {
                const int i2 = (n - j2) % n;
                const std::size_t a = lattice_.flat(j0, j1, j2);
                const std::size_t b = lattice_.flat(i0, i1, i2);
                if (a > b)
                    continue;
                const Complex v = 0.5 * (coeffs_[a] + std::conj(coeffs_[b]));
                coeffs_[a] = v;
                coeffs_[b] = std::conj(v);
            }
        }
    }
}

std::vector<double> SpectralScalarField::samples() const {
    std::vector<Complex> work(coeffs_);
    fft::backward(lattice_.n(), work.data());
    std::vector<double> out(work.size());
    for (std::size_t i = 0; i < work.size(); ++i)
        out[i] = work[i].real();
    return out;
}

SpectralScalarField& SpectralScalarField::operator+=(const SpectralScalarField& o) {
    if (lattice_ != o.lattice_)
        throw std::invalid_argument("field addition: lattice mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    return *this;
}

SpectralScalarField& SpectralScalarField::operator-=(const SpectralScalarField& o) {
    if (lattice_ != o.lattice_)
        throw std::invalid_argument("field subtraction: lattice mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    return *this;
}

SpectralScalarField& SpectralScalarField::operator*=(double a) {
    for (auto& c : coeffs_)
        c *= a;
    return *this;
}

SpectralScalarField forward_transform_raw(const Lattice& lat, const std::vector<double>& samples) {
    if (samples.size() != lat.size())
        throw std::invalid_argument("forward_transform: sample count does not match lattice");
    SpectralScalarField f(lat);
    auto& c = f.coeffs();
    for (std::size_t i = 0; i < samples.size(); ++i)
        c[i] = Complex(samples[i], 0.0);
    fft::forward(lat.n(), c.data());
    const double scale = 1.0 / static_cast<double>(lat.size());
    for (auto& v : c)
        v *= scale;
    return f;
}

SpectralScalarField forward_transform(const Lattice& lat, const std::vector<double>& samples) {
    SpectralScalarField f = forward_transform_raw(lat, samples);
    f.zero_nyquist();
    f.enforce_hermitian();
    return f;
}

} // namespace mihd
