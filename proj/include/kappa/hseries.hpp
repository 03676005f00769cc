#pragma once

#include "kappa/rational.hpp"

#include <string>
#include <vector>

namespace kappa {

// Truncated formal power series in h over the Gaussian rationals, used as the
// coefficient ring of every deformed computation.
//
// A series stores coefficients for the powers low()..order(). order() is the
// highest *trustworthy* power: the unknown tail is O(h^{order+1}). Dividing by
// h^k shifts both bounds down by k, so precision bookkeeping is automatic;
// binary operations meet at the smallest effective order of their operands.
class HSeries {
public:
    HSeries() = default;  // zero series, order 0

    static HSeries zero(int order) { return HSeries(order); }
    static HSeries constant(GaussianRational c, int order);
    static HSeries h_power(int k, int order);  // h^k (k may be negative)
    // "c0, c1, c2" lowest power first, starting at h^0; entries Gaussian.
    static HSeries parse(std::string_view text, int order);

    int order() const { return order_; }
    int low() const { return low_; }
    bool is_zero() const { return coeffs_.empty(); }
    // Valuation of the known part; order()+1 for the zero series (its tail).
    int valuation() const { return coeffs_.empty() ? order_ + 1 : low_; }
    bool is_regular() const { return valuation() >= 0; }

    const GaussianRational& coeff(int k) const;
    void set_coeff(int k, GaussianRational c);

    bool is_one() const;
    bool is_constant() const { return coeffs_.empty() || (low_ == 0 && coeffs_.size() == 1); }
    GaussianRational constant_term() const { return coeff(0); }

    HSeries truncated(int new_order) const;
    // Multiplication by h^k (k<0 divides; reduces the trustworthy order).
    HSeries shifted(int k) const;

    HSeries operator-() const;
    friend HSeries operator+(const HSeries& a, const HSeries& b);
    friend HSeries operator-(const HSeries& a, const HSeries& b);
    friend HSeries operator*(const HSeries& a, const HSeries& b);
    HSeries& operator+=(const HSeries& o) { return *this = *this + o; }
    HSeries& operator-=(const HSeries& o) { return *this = *this - o; }
    HSeries& operator*=(const HSeries& o) { return *this = *this * o; }

    HSeries operator*(const GaussianRational& c) const;

    // Multiplicative inverse; requires a nonzero known part.
    HSeries inverted() const;

    // exp requires valuation >= 1; log and pow require constant term 1;
    // compose requires g with zero constant term.
    HSeries exp() const;
    HSeries log() const;
    HSeries pow(const Rational& beta) const;
    HSeries compose(const HSeries& g) const;

    // Complex conjugation of the coefficients (h itself is real).
    HSeries conj() const;

    // The involution h -> -h (negates odd coefficients).
    HSeries negate_h() const;

    // True equality of known coefficients up to min(order, o.order).
    bool equals(const HSeries& o) const;
    friend bool operator==(const HSeries& a, const HSeries& b) { return a.equals(b); }

    // 2^{-n} where n is the valuation of a regular series; 0 for zero.
    Rational ultra_norm() const;

    std::string str() const;  // e.g. "1 - 1/2 h + 3/4i h^2"

private:
    explicit HSeries(int order) : order_(order) {}
    void normalize();

    int low_ = 0;
    int order_ = 0;
    std::vector<GaussianRational> coeffs_;  // powers low_..low_+size-1; empty = zero
};

enum class HSeriesOp { add, mul, invert_first };

// Spec-facing arithmetic entry point: requires both operands declared at the
// same truncation order (throws std::invalid_argument otherwise).
HSeries hseries_arith(const HSeries& a, const HSeries& b, HSeriesOp op);

}  // namespace kappa
