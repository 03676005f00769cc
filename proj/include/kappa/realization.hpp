#pragma once

#include "kappa/action.hpp"
#include "kappa/taylor.hpp"

namespace kappa {

// Data of a noncovariant realization: psi, gamma and the derived integrals
// Psi = exp(int dt/psi), Gamma = exp(int gamma dt/psi).
struct RealizationParams {
    TaylorSeries psi;
    TaylorSeries gamma;
    TaylorSeries Psi;
    TaylorSeries Gamma;
    int order;

    static RealizationParams make(TaylorSeries psi, TaylorSeries gamma, int order);
};

// Bundle {X^mu, P_mu, M_i, N_i, C} of Weyl-algebra elements realizing a DSR
// algebra. X carries upper indices, P lower; M, N are rotations and boosts.
struct DsrGenerators {
    SystemPtr weyl;
    int order = 0;            // construction order
    int effective_order = 0;  // after h^{-1}, h^{-2} precision bookkeeping
    std::vector<AlgebraElement> X;   // X^0..X^3
    std::vector<AlgebraElement> P;   // P_0..P_3
    std::vector<AlgebraElement> M;   // M_1..M_3
    std::vector<AlgebraElement> Nb;  // N_1..N_3
    AlgebraElement C;                // deformed Casimir, classical limit p0^2 - vec p^2

    AlgebraElement X_lower(std::size_t mu) const;  // X_mu = eta_{mu nu} X^nu
    // M_{mu nu} in the covariant labeling: M_{jk} = eps_{jkl} M_l, M_{0i} = N_i.
    AlgebraElement M_cov(std::size_t mu, std::size_t nu) const;
};

// f(-h p_0) as a Weyl-algebra element.
AlgebraElement tilde(const TaylorSeries& f, const SystemPtr& weyl, int order);

// Heisenberg realization labeled by (psi, gamma); requires psi(0) = 1.
DsrGenerators build_noncovariant(const RealizationParams& params, const SystemPtr& weyl);
// Covariant realization X^mu = x^mu(h p0 + sqrt(1-h^2 p^2)) + h x^0 p^mu.
DsrGenerators build_covariant(const SystemPtr& weyl, int order);
// Twist-induced specializations: abelian(s) = (psi, gamma) = (1, s),
// jordanian(r) = (1 + r t, 0).
DsrGenerators build_abelian_realization(const Rational& s, const SystemPtr& weyl, int order);
DsrGenerators build_jordanian_realization(const Rational& r, const SystemPtr& weyl, int order);

// Full DSR relation suite: Lorentz sector, cross relations with X, the
// coordinate brackets, Casimir relations and the covariant-form relation.
std::vector<RelationResult> check_dsr_suite(const DsrGenerators& g);

struct HermiticityReport {
    std::vector<RelationResult> results;  // dagger(X^mu) - X^mu per mu
    AlgebraElement defect_X0;             // the informative one
    bool hermitian() const;
};
HermiticityReport check_hermiticity(const DsrGenerators& g);

// Coordinate shift Xt_j = X_j + h N_j producing Snyder-type relations.
std::vector<RelationResult> snyder_map(const DsrGenerators& g);

// -- canonical Poisson layer -------------------------------------------------

// Commutative phase-space polynomials in (x^0..x^3, p_0..p_3).
SystemPtr make_phase_space(int order);
// {f, g} = sum_mu (df/dx^mu dg/dp_mu - df/dp_mu dg/dx^mu)
PolyElement poisson_bracket(const PolyElement& f, const PolyElement& g);

struct PoissonCheck {
    std::string name;
    PolyElement lhs;  // {A, B}
    PolyElement rhs;  // target
};
std::vector<RelationResult> poisson_check(const std::vector<PoissonCheck>& checks);

}  // namespace kappa
