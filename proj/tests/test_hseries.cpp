#include <doctest.h>

#include "kappa/hseries.hpp"

#include <random>

using namespace kappa;

namespace {

constexpr int N = 6;

HSeries h_pow(int k) { return HSeries::h_power(k, N); }

HSeries random_series(std::mt19937& rng, int max_low = 0) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3), low(max_low, 1);
    HSeries s = HSeries::zero(N);
    int lo = low(rng);
    for (int k = lo; k <= N; ++k)
        s.set_coeff(k, GaussianRational(Rational(num(rng), den(rng)), Rational(num(rng), den(rng))));
    return s;
}

}  // namespace

TEST_CASE("hseries basic arithmetic") {
    CHECK(hseries_arith(h_pow(1), h_pow(2), HSeriesOp::add) == HSeries::parse("0,1,1", N));
    HSeries one_plus = HSeries::parse("1,1", N);
    HSeries one_minus = HSeries::parse("1,-1", N);
    CHECK(hseries_arith(one_plus, one_minus, HSeriesOp::mul) == HSeries::parse("1,0,-1", N));
}

TEST_CASE("hseries inversion against multiplication oracle") {
    HSeries a = HSeries::parse("1,-1", N);  // 1 - h
    HSeries inv = hseries_arith(a, a, HSeriesOp::invert_first);
    // geometric series
    for (int k = 0; k <= N; ++k) CHECK(inv.coeff(k) == GaussianRational(1));
    CHECK((a * inv).is_one());

    std::mt19937 rng(7);
    for (int t = 0; t < 30; ++t) {
        HSeries s = random_series(rng);
        if (s.is_zero()) continue;
        HSeries p = s * s.inverted();
        CHECK(p.is_one());
    }
}

TEST_CASE("hseries inversion errors") {
    CHECK_THROWS_AS(HSeries::zero(N).inverted(), std::domain_error);
    CHECK_THROWS_AS(hseries_arith(HSeries::zero(N), HSeries::zero(N), HSeriesOp::invert_first),
                    std::domain_error);
    CHECK_THROWS_AS(hseries_arith(HSeries::zero(3), HSeries::zero(4), HSeriesOp::add),
                    std::invalid_argument);
}

TEST_CASE("inversion with principal parts tracks the effective order") {
    // a = h^-1 + 1: inverse must satisfy a*inv == 1 mod h^{N+1-|low|}
    HSeries a = h_pow(-1) + HSeries::constant(1, N);
    HSeries inv = a.inverted();
    CHECK(inv.low() == 1);
    CHECK(inv.order() == N - 2 * (-1));  // order N + 2 after shift bookkeeping
    HSeries p = a * inv;
    CHECK(p.is_one());
    CHECK(p.order() >= N + 1 - 1);
}

TEST_CASE("division by h lowers the trustworthy order") {
    HSeries a = HSeries::parse("0,0,3,1", N);  // 3h^2 + h^3
    HSeries b = a.shifted(-2);
    CHECK(b.order() == N - 2);
    CHECK(b.coeff(0) == GaussianRational(3));
    CHECK(b.coeff(1) == GaussianRational(1));
}

TEST_CASE("exp and log") {
    HSeries one_plus_h = HSeries::parse("1,1", N);
    CHECK(one_plus_h.log().exp() == one_plus_h);
    CHECK_THROWS_AS(one_plus_h.exp(), std::domain_error);  // nonzero constant term rejected
    HSeries g = HSeries::parse("0,1,0,-1/3", N);
    CHECK(g.exp().log() == g);
}

TEST_CASE("pow: geometric and binomial series") {
    HSeries one_minus_h = HSeries::parse("1,-1", N);
    HSeries geo = one_minus_h.pow(Rational(-1));
    for (int k = 0; k <= N; ++k) CHECK(geo.coeff(k) == GaussianRational(1));

    // pow(1 - 2h, 1/2): coefficients satisfy c_{m+1} = c_m (1/2 - m)(-2)/(m+1)
    HSeries s = HSeries::parse("1,-2", N).pow(Rational(1, 2));
    Rational c(1);
    for (int m = 0; m < N; ++m) {
        CHECK(s.coeff(m) == GaussianRational(c));
        c = c * (Rational(1, 2) - m) * Rational(-2) / (m + 1);
    }
    CHECK((s * s) == HSeries::parse("1,-2", N));
}

TEST_CASE("compose") {
    HSeries f = HSeries::parse("1,1", N);        // 1 + t
    HSeries g = HSeries::parse("0,0,2", N);      // 2h^2
    CHECK(f.compose(g) == HSeries::parse("1,0,2", N));
    CHECK_THROWS_AS(f.compose(f), std::domain_error);
}

TEST_CASE("ultra norm values") {
    for (int k = 0; k <= N; ++k) CHECK(h_pow(k).ultra_norm() == Rational(Integer(1), Integer(1) << k));
    CHECK(HSeries::zero(N).ultra_norm() == Rational(0));
    CHECK((HSeries::constant(3, N) + h_pow(1)).ultra_norm() == Rational(1));
}

TEST_CASE("ultra norm properties") {
    std::mt19937 rng(11);
    for (int t = 0; t < 40; ++t) {
        HSeries a = random_series(rng), b = random_series(rng);
        CHECK((a * b).ultra_norm() == a.ultra_norm() * b.ultra_norm());
        Rational lhs = (a + b).ultra_norm();
        CHECK(lhs <= std::max(a.ultra_norm(), b.ultra_norm()));
    }
}

TEST_CASE("ring axioms on random samples") {
    std::mt19937 rng(13);
    for (int t = 0; t < 40; ++t) {
        HSeries a = random_series(rng), b = random_series(rng), c = random_series(rng);
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * (b + c)) == (a * b + a * c));
        CHECK((a + b) == (b + a));
    }
}

TEST_CASE("series literals accept gaussian entries") {
    HSeries s = HSeries::parse("1, -1/2+1/3i, 2i", N);
    CHECK(s.coeff(0) == GaussianRational(1));
    CHECK(s.coeff(1) == GaussianRational(Rational(-1, 2), Rational(1, 3)));
    CHECK(s.coeff(2) == GaussianRational(Rational(0), Rational(2)));
}
