#include "mihd/direction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mihd/errors.hpp"
#include "mihd/rng.hpp"

namespace mihd {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_unit(const std::array<double, 3>& w, double tol) {
    const double n2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
    if (std::abs(std::sqrt(n2) - 1.0) > tol)
        throw std::invalid_argument("direction: omega must be a unit vector");
}

double ipow_int(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i)
        r *= x;
    return r;
}

} // namespace

double lattice_dot(const std::array<long long, 3>& chi, const std::array<double, 3>& omega) {
    // Ogita-Rump-Oishi dot2: exact products via fma, compensated summation.
    double s = 0.0, comp = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double x = static_cast<double>(chi[i]);
        const double p = x * omega[i];
        const double ep = std::fma(x, omega[i], -p);
        const double t = s + p;
        const double es = (std::abs(s) >= std::abs(p)) ? (s - t) + p : (p - t) + s;
        s = t;
        comp += ep + es;
    }
    return s + comp;
}

Direction certify_direction(const std::array<double, 3>& omega, double tau, long long X) {
    check_unit(omega, 1e-12);
    if (X < 1)
        throw std::invalid_argument("certify_direction: truncation must be >= 1");

    Direction d;
    d.omega = omega;
    d.tau = tau;
    d.truncation_X = X;

    double best = std::numeric_limits<double>::infinity();
    std::array<long long, 3> best_chi{0, 0, 0};
    const double X2 = static_cast<double>(X) * static_cast<double>(X);

    auto visit = [&](long long c0, long long c1, long long c2) -> bool {
        const double n2 = double(c0) * c0 + double(c1) * c1 + double(c2) * c2;
        if (n2 > X2)
            return false;
        const std::array<long long, 3> chi{c0, c1, c2};
        const double dot = std::abs(lattice_dot(chi, omega));
        if (dot == 0.0) {
            best = 0.0;
            best_chi = chi;
            return true;
        }
        const double value = dot * std::pow(n2, tau / 2.0);
        if (value < best) {
            best = value;
            best_chi = chi;
        }
        return false;
    };

    // half-lattice: positive leading coordinate, remaining entries ascending
    bool hit = false;
    for (long long a = 1; a <= X && !hit; ++a)
        for (long long b = -X; b <= X && !hit; ++b)
            for (long long c = -X; c <= X && !hit; ++c)
                hit = visit(a, b, c);
    for (long long b = 1; b <= X && !hit; ++b)
        for (long long c = -X; c <= X && !hit; ++c)
            hit = visit(0, b, c);
    for (long long c = 1; c <= X && !hit; ++c)
        hit = visit(0, 0, c);

    d.c_est = best;
    d.arg_min = best_chi;
    if (best == 0.0)
        d.witness = best_chi;
    return d;
}

std::array<double, 3> algebraic_direction() {
    const double a = 1.0;
    const double b = std::cbrt(2.0);
    const double c = std::cbrt(4.0);
    const double n = std::sqrt(a * a + b * b + c * c);
    return {a / n, b / n, c / n};
}

Direction sample_direction(Direction::Provenance kind, std::uint64_t seed) {
    if (kind == Direction::Provenance::Algebraic) {
        Direction d = certify_direction(algebraic_direction(), 3.0, 64);
        d.provenance = Direction::Provenance::Algebraic;
        return d;
    }
    if (kind != Direction::Provenance::Random)
        throw std::invalid_argument("sample_direction: kind must be algebraic or random");

    SplitMix64 rng(seed);
    Direction d;
    for (int attempt = 0; attempt < 16; ++attempt) {
        const double z = rng.symmetric();
        const double phi = kTwoPi * rng.uniform();
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const std::array<double, 3> w{r * std::cos(phi), r * std::sin(phi), z};
        const double n = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
        d = certify_direction({w[0] / n, w[1] / n, w[2] / n}, 3.0, 64);
        d.provenance = Direction::Provenance::Random;
        if (d.certified())
            return d;
    }
    return d; // last attempt, reported with its failure witness
}

double poincare_constant(const Direction& dir, int order, int band) {
    if (band < 1)
        throw std::invalid_argument("poincare_constant: band must be >= 1");
    if (band > dir.truncation_X)
        throw std::invalid_argument(
            "poincare_constant: band exceeds the certified truncation");
    const double band2 = static_cast<double>(band) * band;
    double best = 0.0;
    for (long long k0 = -band; k0 <= band; ++k0)
        for (long long k1 = -band; k1 <= band; ++k1)
            for (long long k2 = -band; k2 <= band; ++k2) {
                if (k0 == 0 && k1 == 0 && k2 == 0)
                    continue;
                const double n2 = double(k0) * k0 + double(k1) * k1 + double(k2) * k2;
                if (n2 > band2)
                    continue;
                const double dot = lattice_dot({k0, k1, k2}, dir.omega);
                if (dot == 0.0)
                    throw CertificationError(
                        "poincare_constant: band mode orthogonal to omega (k = (" +
                            std::to_string(k0) + "," + std::to_string(k1) + "," +
                            std::to_string(k2) + "))",
                        {k0, k1, k2});
                const double w = 1.0 + kTwoPi * kTwoPi * n2;
                const double ratio2 =
                    ipow_int(w, order) /
                    ((kTwoPi * dot) * (kTwoPi * dot) * ipow_int(w, order + 3));
                best = std::max(best, ratio2);
            }
    return std::sqrt(best);
}

} // namespace mihd
