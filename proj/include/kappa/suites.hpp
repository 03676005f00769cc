#pragma once

#include "kappa/pheno.hpp"
#include "kappa/qanalog.hpp"
#include "kappa/report.hpp"

namespace kappa {

// Twist sector: cocycle + normalization, twisted tables against the closed
// forms, R-matrices, star-product relations and associativity samples, hat
// coordinates with the pseudo-deformation round trip.
struct TwistSuiteConfig {
    int order = 6;
    int jordanian_order = 5;
    std::vector<Rational> abelian_s{Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)};
    std::vector<Rational> jordanian_r{Rational(-1), Rational(1), Rational(2)};
    int star_triples = 10;  // random associativity samples per family
    unsigned seed = 2024;
    bool parallel = true;
};
VerificationReport run_twist_suite(const TwistSuiteConfig& cfg);

// kappa-Poincare classical-basis Hopf axioms on all ten generators.
struct HopfSuiteConfig {
    int order = 6;
    bool parallel = true;
};
VerificationReport run_hopf_suite(const HopfSuiteConfig& cfg);

// DSR realization sector: full relation suites, Snyder map, hermiticity
// determination, bicrossproduct closed forms, classical limits.
struct RealizationSuiteConfig {
    int order = 7;  // relations involving the Casimir then hold at h^{order-2}
    enum class Kind { all, covariant, noncovariant, abelian, jordanian } kind = Kind::all;
    Rational s{0};         // abelian parameter
    Rational r{1};         // jordanian parameter
    TaylorSeries psi = TaylorSeries::constant(1, 7);
    TaylorSeries gamma = TaylorSeries::zero(7);
    int random_bundles = 20;  // only for Kind::all
    unsigned seed = 99;
    bool parallel = true;
};
VerificationReport run_realization_suite(const RealizationSuiteConfig& cfg);

// q-analog sector: confluence, exact Hopf axioms, smash compatibility and
// cross relations, localized checks, rescaling isomorphism.
struct QAnalogSuiteConfig {
    Rational kappa{1};
    Rational kappa_partner{2};
    bool parallel = true;
};
VerificationReport run_qanalog_suite(const QAnalogSuiteConfig& cfg);

struct AllSuitesConfig {
    int order = 6;
    bool parallel = true;
};
VerificationReport run_all_suites(const AllSuitesConfig& cfg);

}  // namespace kappa
