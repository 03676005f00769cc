#pragma once

#include "kappa/action.hpp"

#include <array>
#include <map>

namespace kappa {

// Generator layout of the canonical (fixed-kappa) DSR algebra:
// X^0..X^3 < Pi0 < Pi0^{-1} < P_1..P_3 < M_1..M_3 < N_1..N_3.
struct QIndices {
    GenIndex X(std::size_t mu) const { return static_cast<GenIndex>(mu); }
    GenIndex Pi0() const { return 4; }
    GenIndex Pi0inv() const { return 5; }
    GenIndex P(std::size_t i) const { return static_cast<GenIndex>(5 + i); }   // i = 1..3
    GenIndex M(std::size_t i) const { return static_cast<GenIndex>(8 + i); }
    GenIndex N(std::size_t i) const { return static_cast<GenIndex>(11 + i); }
};

// Hopf-sector layout (the same minus the coordinate block).
struct QHopfIndices {
    GenIndex Pi0() const { return 0; }
    GenIndex Pi0inv() const { return 1; }
    GenIndex P(std::size_t i) const { return static_cast<GenIndex>(1 + i); }
    GenIndex M(std::size_t i) const { return static_cast<GenIndex>(4 + i); }
    GenIndex N(std::size_t i) const { return static_cast<GenIndex>(7 + i); }
};

// The q-analog algebra with a fixed numerical kappa: all coefficients are
// plain Gaussian rationals (truncation order 0, no h).
struct QAnalog {
    Rational kappa;
    SystemPtr dsr;       // full 15-generator presented algebra
    SystemPtr hopf_sys;  // 11-generator quantum-algebra sector
    HopfPtr hopf;        // Delta_kappa / S_kappa / counit tables
};

QAnalog build_presented(const Rational& kappa);

// Normal form of a word over the full presented algebra.
AlgebraElement q_normal_form(const QAnalog& A, const Word& w);

// Diamond check on all generator triples, both for the full algebra and the
// Hopf sector.
std::vector<RelationResult> check_q_confluence(const QAnalog& A);

// Exact Hopf-axiom verification (zero residual, no truncation).
std::vector<RelationResult> check_q_hopf(const QAnalog& A);

// Classical action of the Hopf sector on the Lie-algebraic coordinates.
HopfAction make_q_classical_action(const QAnalog& A);

struct QSmashReport {
    std::vector<RelationResult> covariance;   // smash-compatibility residuals
    std::vector<RelationResult> cross;        // generated cross relations vs the canonical DSR table
    bool ok() const;
};
QSmashReport check_q_smash(const QAnalog& A);

// Verifies that P -> (k1/k2) P, X^mu -> (k2/k1) X^mu, others fixed, maps every
// defining relation of A into an identity of B. With rescale_X disabled the
// coordinate sector fails (negative control).
std::vector<RelationResult> rescaling_isomorphism(const QAnalog& A, const QAnalog& B,
                                                  bool rescale_X = true);

// -- localized (rational-function) calculus ----------------------------------

// Laurent polynomial in (P1, P2, P3, Pi0) over the Gaussian rationals; the
// Pi0 exponent may be negative.
class QPoly {
public:
    using Key = std::array<int, 4>;

    QPoly() = default;
    static QPoly constant(GaussianRational c);
    static QPoly variable(int k, int power = 1);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, GaussianRational>& terms() const { return terms_; }
    void add(const Key& k, const GaussianRational& c);

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    bool operator==(const QPoly& o) const { return terms_ == o.terms_; }

    QPoly derivative(int k) const;
    std::string str() const;

private:
    std::map<Key, GaussianRational> terms_;
};

// Fraction of Laurent polynomials; equality by cross-multiplication.
class QRat {
public:
    QRat() : num_(), den_(QPoly::constant(GaussianRational(1))) {}
    QRat(QPoly num, QPoly den);
    static QRat constant(GaussianRational c) { return QRat(QPoly::constant(std::move(c)), QPoly::constant(GaussianRational(1))); }
    static QRat poly(QPoly p) { return QRat(std::move(p), QPoly::constant(GaussianRational(1))); }

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    QRat operator-() const;
    friend QRat operator+(const QRat& a, const QRat& b);
    friend QRat operator-(const QRat& a, const QRat& b);
    friend QRat operator*(const QRat& a, const QRat& b);
    QRat inverse() const;
    bool operator==(const QRat& o) const;

    QRat derivative(int k) const;
    std::string str() const;

private:
    QPoly num_, den_;
};

// Element sum_A X^A f_A(P, Pi0) with the X-monomial normal-ordered on the
// left; commutators with rational functions evaluate through the derivation
// rules [X_j, f] = i Pi0 df/dP_j, [X^0, f] = (i/kappa) Pi0 df/dPi0.
class LocalizedElement {
public:
    using XKey = std::array<std::uint8_t, 4>;  // exponents of X^0..X^3

    explicit LocalizedElement(Rational kappa) : kappa_(std::move(kappa)) {}
    static LocalizedElement zero(const Rational& kappa) { return LocalizedElement(kappa); }
    static LocalizedElement function(const Rational& kappa, QRat f);
    static LocalizedElement coordinate(const Rational& kappa, std::size_t mu, QRat f = QRat::constant(GaussianRational(1)));

    const Rational& kappa() const { return kappa_; }
    const std::map<XKey, QRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const XKey& k, const QRat& f);

    LocalizedElement operator-() const;
    friend LocalizedElement operator+(const LocalizedElement& a, const LocalizedElement& b);
    friend LocalizedElement operator-(const LocalizedElement& a, const LocalizedElement& b);
    friend LocalizedElement operator*(const LocalizedElement& a, const LocalizedElement& b);
    bool operator==(const LocalizedElement& o) const { return (*this - o).is_zero(); }

    std::string str() const;

private:
    Rational kappa_;
    std::map<XKey, QRat> terms_;
};

LocalizedElement localized_commutator(const LocalizedElement& a, const LocalizedElement& b);

// The printed-vs-derived Lorentz realization, the Casimir centrality checks,
// the canonical Weyl embedding, and the [C_kappa, X_mu] identification.
std::vector<RelationResult> localized_checks(const Rational& kappa);

}  // namespace kappa
