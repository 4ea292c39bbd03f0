#pragma once

#include <cstddef>
#include <stdexcept>

namespace mihd {

/// Frequency lattice of the n^3 Fourier discretization of the unit torus
/// T^3 = (R/Z)^3. Storage is row-major over grid indices (j0,j1,j2); the
/// wrapped integer frequency of index j is j for j <= n/2 and j-n above,
/// so k ranges over {-n/2+1, ..., n/2} per axis. The k = n/2 row is the
/// Nyquist row.
class Lattice {
  public:
    explicit Lattice(int n, int dealias_num = 2, int dealias_den = 3)
        : n_(n), dealias_num_(dealias_num), dealias_den_(dealias_den) {
        if (n <= 0 || n % 2 != 0)
            throw std::invalid_argument("Lattice: grid size must be even and positive");
        if (dealias_num <= 0 || dealias_den <= 0 || dealias_num > dealias_den)
            throw std::invalid_argument("Lattice: dealias fraction must lie in (0,1]");
    }

    int n() const { return n_; }
    std::size_t size() const {
        return static_cast<std::size_t>(n_) * n_ * n_;
    }

    /// Wrapped frequency of a single grid index.
    int freq(int j) const { return j <= n_ / 2 ? j : j - n_; }
    /// Grid index of a wrapped frequency in {-n/2+1, ..., n/2}.
    int index_of_freq(int k) const { return k >= 0 ? k : k + n_; }

    std::size_t flat(int j0, int j1, int j2) const {
        return (static_cast<std::size_t>(j0) * n_ + j1) * n_ + j2;
    }

    bool is_nyquist(int j0, int j1, int j2) const {
        const int h = n_ / 2;
        return freq(j0) == h || freq(j1) == h || freq(j2) == h;
    }

    /// Euclidean dealias cutoff: modes with |k| <= cutoff are retained by
    /// dealiased products (2/3 rule by default).
    double dealias_cutoff() const {
        return static_cast<double>(dealias_num_) * (n_ / 2) / dealias_den_;
    }
    int dealias_num() const { return dealias_num_; }
    int dealias_den() const { return dealias_den_; }

    bool operator==(const Lattice& o) const {
        return n_ == o.n_ && dealias_num_ == o.dealias_num_ && dealias_den_ == o.dealias_den_;
    }
    bool operator!=(const Lattice& o) const { return !(*this == o); }

  private:
    int n_;
    int dealias_num_;
    int dealias_den_;
};

} // namespace mihd
