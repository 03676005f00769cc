#pragma once

#include "kappa/rational.hpp"

#include <string>
#include <vector>

namespace kappa {

// One-variable Taylor series with exact rational coefficients, truncated at a
// fixed order. Carrier of the realization functions psi, gamma and of their
// derived integrals Psi, Gamma.
class TaylorSeries {
public:
    explicit TaylorSeries(int order) : coeffs_(static_cast<std::size_t>(order) + 1) {}
    TaylorSeries(std::vector<Rational> coeffs, int order);

    static TaylorSeries zero(int order) { return TaylorSeries(order); }
    static TaylorSeries constant(Rational c, int order);
    static TaylorSeries variable(int order);  // t
    // "1, -1/2, 3/4": coefficients from t^0 upward (series literal format).
    static TaylorSeries parse(std::string_view text, int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& coeff(int k) const;
    void set_coeff(int k, Rational c);
    bool is_zero() const;

    TaylorSeries truncated(int new_order) const;

    TaylorSeries operator-() const;
    friend TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b);
    friend TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b);
    friend TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b);
    TaylorSeries operator*(const Rational& c) const;
    friend bool operator==(const TaylorSeries& a, const TaylorSeries& b);

    TaylorSeries reciprocal() const;         // requires coeff(0) != 0
    TaylorSeries derivative() const;
    TaylorSeries integral() const;           // definite from 0, constant term 0
    TaylorSeries exp() const;                // requires coeff(0) == 0
    TaylorSeries log() const;                // requires coeff(0) == 1
    TaylorSeries pow(const Rational& beta) const;  // requires coeff(0) == 1
    TaylorSeries compose(const TaylorSeries& g) const;  // requires g(0) == 0
    // Substitute t -> c*t (in particular c = -1).
    TaylorSeries scale_arg(const Rational& c) const;

    std::string str() const;

private:
    std::vector<Rational> coeffs_;  // index = power of t
};

// Builds Psi = exp(int_0^t dt'/psi) and Gamma = exp(int_0^t gamma dt'/psi).
// Requires psi(0) = 1.
std::pair<TaylorSeries, TaylorSeries> build_psi_gamma(const TaylorSeries& psi, const TaylorSeries& gamma,
                                                      int order);

}  // namespace kappa
