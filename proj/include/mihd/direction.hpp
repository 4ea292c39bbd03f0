#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace mihd {

/// A candidate impressed-field direction with its finite-truncation
/// Diophantine certificate: c_est = min over 0 < |chi| <= X of
/// |chi . omega| |chi|^tau. The certificate is truncation-only; every report
/// carries (tau, X, c_est).
struct Direction {
    enum class Provenance { Algebraic, User, Random };

    std::array<double, 3> omega{1.0, 0.0, 0.0};
    double tau = 3.0;
    long long truncation_X = 64;
    double c_est = 0.0;
    Provenance provenance = Provenance::User;
    /// Lattice vector orthogonal to omega, present when certification failed.
    std::optional<std::array<long long, 3>> witness;
    /// Minimizing lattice vector (equal to witness on failure).
    std::array<long long, 3> arg_min{0, 0, 0};

    bool certified() const { return c_est > 0.0; }
};

/// Exhaustive certification over the half-lattice 0 < |chi| <= X (the value
/// is even under chi -> -chi). Vectors are enumerated with positive leading
/// coordinate, remaining coordinates ascending, and the first exact
/// orthogonality is reported as the witness.
Direction certify_direction(const std::array<double, 3>& omega, double tau, long long X);

/// "algebraic": the pinned cubic-irrational direction (1, 2^{1/3}, 2^{2/3})
/// normalized; "random": seeded uniform point on the sphere. Both are
/// certified at tau = 3, X = 64; random draws failing certification are
/// resampled up to 16 times.
Direction sample_direction(Direction::Provenance kind, std::uint64_t seed = 0);

/// The pinned algebraic unit direction.
std::array<double, 3> algebraic_direction();

/// Sharp constant over the band: for every mean-zero f with modes |k| <= band,
/// ||f||_i <= C_P ||d_omega f||_{i+3}. Throws CertificationError when some
/// band mode is orthogonal to omega (the constant would be infinite).
double poincare_constant(const Direction& dir, int order, int band);

/// Compensated dot product chi . omega (exact-product accumulation).
double lattice_dot(const std::array<long long, 3>& chi, const std::array<double, 3>& omega);

} // namespace mihd
