#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kappa {

// Exact arbitrary-precision rational, always stored in lowest terms with a
// positive denominator (GMP canonicalizes on every operation).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Parses "p/q", "-3", "0.25", "1.2e19" (decimals are converted exactly).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

// Scientific-notation rendering with `digits` significant digits, rounded
// half-to-even. Deterministic: equal rationals always print identically.
std::string to_decimal(const Rational& r, int digits = 12);

std::size_t hash_value(const Rational& r);

// Element of Q(i): re + im*i with exact rational components.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}          // NOLINT(google-explicit-constructor)
    GaussianRational(int n) : re(n) {}                          // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational nre = re * o.re - im * o.im;
        Rational nim = re * o.im + im * o.re;
        re = std::move(nre);
        im = std::move(nim);
        return *this;
    }

    GaussianRational inverse() const {
        Rational n = norm2();
        if (n == 0) throw std::domain_error("GaussianRational: division by zero");
        return {re / n, -im / n};
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        return a * b.inverse();
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

// Parses "a/b+c/d i" and the usual degenerate forms ("3", "-i", "2/3i", ...).
GaussianRational parse_gaussian(std::string_view text);

std::string to_string(const GaussianRational& z);

}  // namespace kappa

template <>
struct std::hash<kappa::GaussianRational> {
    std::size_t operator()(const kappa::GaussianRational& z) const {
        return kappa::hash_value(z.re) * 0x9e3779b97f4a7c15ULL ^ kappa::hash_value(z.im);
    }
};
