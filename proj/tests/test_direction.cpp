#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mihd/direction.hpp"
#include "mihd/errors.hpp"
#include "mihd/spectral.hpp"
#include "oracles.hpp"

using namespace mihd;

TEST_CASE("axis direction fails with witness (0,1,0)") {
    auto d = certify_direction({1.0, 0.0, 0.0}, 3.0, 1);
    CHECK(!d.certified());
    CHECK(d.c_est == 0.0);
    REQUIRE(d.witness.has_value());
    CHECK((*d.witness)[0] == 0);
    CHECK((*d.witness)[1] == 1);
    CHECK((*d.witness)[2] == 0);
}

TEST_CASE("rational-ratio direction fails with witness (1,-1,0)") {
    const double s = 1.0 / std::sqrt(3.0);
    auto d = certify_direction({s, s, s}, 3.0, 2);
    CHECK(!d.certified());
    REQUIRE(d.witness.has_value());
    CHECK((*d.witness)[0] == 1);
    CHECK((*d.witness)[1] == -1);
    CHECK((*d.witness)[2] == 0);
}

TEST_CASE("algebraic direction certifies; constant pinned at X=20") {
    auto d = certify_direction(algebraic_direction(), 3.0, 20);
    CHECK(d.certified());
    // pinned regression value from the exhaustive enumeration; equals
    // |1 - 2^{1/3}| 2^{3/2} / ||(1, 2^{1/3}, 2^{2/3})||, attained at (1,-1,0)
    CHECK(d.c_est == doctest::Approx(0.3253068277979736).epsilon(1e-12));
    CHECK(d.arg_min[0] == 1);
    CHECK(d.arg_min[1] == -1);
    CHECK(d.arg_min[2] == 0);
}

TEST_CASE("certification is monotone in the truncation") {
    auto w = algebraic_direction();
    double prev = std::numeric_limits<double>::infinity();
    for (long long X : {4LL, 8LL, 16LL, 32LL, 64LL}) {
        auto d = certify_direction(w, 3.0, X);
        CHECK(d.c_est <= prev);
        CHECK(d.c_est > 0.0);
        prev = d.c_est;
    }
}

TEST_CASE("negating omega leaves the certificate unchanged") {
    auto w = algebraic_direction();
    auto d1 = certify_direction(w, 3.0, 16);
    auto d2 = certify_direction({-w[0], -w[1], -w[2]}, 3.0, 16);
    CHECK(d1.c_est == d2.c_est);
}

TEST_CASE("non-unit omega rejected") {
    CHECK_THROWS_AS(certify_direction({1.0, 1.0, 0.0}, 3.0, 4), std::invalid_argument);
}

TEST_CASE("sample_direction: algebraic and random") {
    auto a = sample_direction(Direction::Provenance::Algebraic);
    CHECK(a.certified());
    CHECK(a.truncation_X == 64);
    CHECK(a.tau == 3.0);

    auto r1 = sample_direction(Direction::Provenance::Random, 7);
    auto r2 = sample_direction(Direction::Provenance::Random, 7);
    for (int i = 0; i < 3; ++i)
        CHECK(r1.omega[i] == r2.omega[i]);
    CHECK(r1.certified());

    auto r3 = sample_direction(Direction::Provenance::Random, 8);
    bool same = true;
    for (int i = 0; i < 3; ++i)
        same = same && (r1.omega[i] == r3.omega[i]);
    CHECK(!same);
}

TEST_CASE("poincare constant: attained, axis failure, random-field audit") {
    auto d = sample_direction(Direction::Provenance::Algebraic);

    // attained: the extremal single mode achieves the ratio
    const int band = 4;
    const double cp = poincare_constant(d, 0, band);
    double best = 0.0;
    std::array<long long, 3> bk{0, 0, 0};
    for (long long k0 = -band; k0 <= band; ++k0)
        for (long long k1 = -band; k1 <= band; ++k1)
            for (long long k2 = -band; k2 <= band; ++k2) {
                if ((k0 | k1 | k2) == 0)
                    continue;
                if (k0 * k0 + k1 * k1 + k2 * k2 > band * band)
                    continue;
                const double dot = lattice_dot({k0, k1, k2}, d.omega);
                const double w = 1.0 + oracles::kTwoPi * oracles::kTwoPi *
                                           double(k0 * k0 + k1 * k1 + k2 * k2);
                const double r2 = 1.0 / ((oracles::kTwoPi * dot) * (oracles::kTwoPi * dot) *
                                         w * w * w);
                if (r2 > best) {
                    best = r2;
                    bk = {k0, k1, k2};
                }
            }
    // ratio of norms for the single extremal mode f = sin(2 pi k.y)
    Lattice lat(16);
    SpectralScalarField f(lat);
    f.set_coeff(int(bk[0]), int(bk[1]), int(bk[2]), Complex(0.0, -0.5));
    f.enforce_hermitian();
    const double num = sobolev_norm(f, 0);
    const double den = sobolev_norm(directional_derivative(f, d.omega), 3);
    CHECK(num / den == doctest::Approx(cp).epsilon(1e-12));

    Direction e1;
    e1.omega = {1.0, 0.0, 0.0};
    e1.truncation_X = 64;
    CHECK_THROWS_AS(poincare_constant(e1, 0, 1), CertificationError);

    // audit: 100 random band-8 mean-zero fields satisfy the inequality
    Lattice lat32(32);
    const double cp8 = poincare_constant(d, 0, 8);
    int violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto g = oracles::random_field(lat32, 8.0, 1.0, 900 + trial);
        const double lhs = sobolev_norm(g, 0);
        const double rhs = cp8 * sobolev_norm(directional_derivative(g, d.omega), 3);
        if (lhs > rhs)
            ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("poincare constant: band must not exceed certification truncation") {
    auto d = certify_direction(algebraic_direction(), 3.0, 4);
    CHECK_THROWS_AS(poincare_constant(d, 0, 8), std::invalid_argument);
}
