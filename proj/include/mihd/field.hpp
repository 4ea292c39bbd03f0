#pragma once

#include <array>
#include <complex>
#include <vector>

#include "mihd/lattice.hpp"

namespace mihd {

using Complex = std::complex<double>;

/// Truncated Fourier representation of a real periodic scalar field on T^3.
/// Coefficients are indexed by wrapped integer frequency; real-valuedness is
/// carried as Hermitian symmetry coeff(-k) = conj(coeff(k)).
class SpectralScalarField {
  public:
    SpectralScalarField() : lattice_(2), coeffs_(8, Complex(0.0, 0.0)) {}
    explicit SpectralScalarField(const Lattice& lat)
        : lattice_(lat), coeffs_(lat.size(), Complex(0.0, 0.0)) {}

    const Lattice& lattice() const { return lattice_; }
    int n() const { return lattice_.n(); }

    const std::vector<Complex>& coeffs() const { return coeffs_; }
    std::vector<Complex>& coeffs() { return coeffs_; }

    Complex& at(int j0, int j1, int j2) { return coeffs_[lattice_.flat(j0, j1, j2)]; }
    const Complex& at(int j0, int j1, int j2) const {
        return coeffs_[lattice_.flat(j0, j1, j2)];
    }

    /// Coefficient addressed by wrapped frequency (k in {-n/2+1,...,n/2}).
    Complex coeff(int k0, int k1, int k2) const {
        return coeffs_[lattice_.flat(lattice_.index_of_freq(k0), lattice_.index_of_freq(k1),
                                     lattice_.index_of_freq(k2))];
    }
    void set_coeff(int k0, int k1, int k2, Complex v) {
        coeffs_[lattice_.flat(lattice_.index_of_freq(k0), lattice_.index_of_freq(k1),
                              lattice_.index_of_freq(k2))] = v;
    }

    Complex mean() const { return coeffs_[0]; }
    void set_mean_zero() { coeffs_[0] = Complex(0.0, 0.0); }

    /// Zero out the Nyquist rows (k_a = n/2 has no conjugate partner).
    void zero_nyquist();
    /// Symmetrize coeff(-k) against conj(coeff(k)); Nyquist rows become real.
    void enforce_hermitian();

    /// Grid samples of the field on the n^3 collocation grid y_j = j/n,
    /// row-major. Imaginary parts (roundoff for Hermitian data) are dropped.
    std::vector<double> samples() const;

    // in-place linear algebra
    SpectralScalarField& operator+=(const SpectralScalarField& o);
    SpectralScalarField& operator-=(const SpectralScalarField& o);
    SpectralScalarField& operator*=(double a);
    friend SpectralScalarField operator+(SpectralScalarField a, const SpectralScalarField& b) {
        a += b;
        return a;
    }
    friend SpectralScalarField operator-(SpectralScalarField a, const SpectralScalarField& b) {
        a -= b;
        return a;
    }
    friend SpectralScalarField operator*(double s, SpectralScalarField a) {
        a *= s;
        return a;
    }

  private:
    Lattice lattice_;
    std::vector<Complex> coeffs_;
};

/// Forward transform of n^3 real grid samples, normalized so coeff(0) is the
/// mean. Output is Hermitian-symmetrized with Nyquist rows zeroed.
SpectralScalarField forward_transform(const Lattice& lat, const std::vector<double>& samples);

/// Forward transform that keeps the raw DFT content (Nyquist rows retained).
/// Grid samples of the result reproduce the input exactly; used for
/// collocation products where grid-pointwise exactness matters.
SpectralScalarField forward_transform_raw(const Lattice& lat, const std::vector<double>& samples);

/// Vector field: three scalar components on a shared lattice.
class SpectralVectorField {
  public:
    SpectralVectorField() = default;
    explicit SpectralVectorField(const Lattice& lat)
        : comp_{SpectralScalarField(lat), SpectralScalarField(lat), SpectralScalarField(lat)} {}

    const Lattice& lattice() const { return comp_[0].lattice(); }
    int n() const { return comp_[0].n(); }

    SpectralScalarField& operator[](int i) { return comp_[i]; }
    const SpectralScalarField& operator[](int i) const { return comp_[i]; }

    void zero_nyquist() {
        for (auto& c : comp_)
            c.zero_nyquist();
    }
    void set_mean_zero() {
        for (auto& c : comp_)
            c.set_mean_zero();
    }

    SpectralVectorField& operator+=(const SpectralVectorField& o) {
        for (int i = 0; i < 3; ++i)
            comp_[i] += o[i];
        return *this;
    }
    SpectralVectorField& operator-=(const SpectralVectorField& o) {
        for (int i = 0; i < 3; ++i)
            comp_[i] -= o[i];
        return *this;
    }
    SpectralVectorField& operator*=(double a) {
        for (auto& c : comp_)
            c *= a;
        return *this;
    }
    friend SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b) {
        a += b;
        return a;
    }
    friend SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b) {
        a -= b;
        return a;
    }
    friend SpectralVectorField operator*(double s, SpectralVectorField a) {
        a *= s;
        return a;
    }

  private:
    std::array<SpectralScalarField, 3> comp_;
};

using Mat3Field = std::array<std::array<SpectralScalarField, 3>, 3>;

} // namespace mihd
