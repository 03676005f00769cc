#pragma once

#include "kappa/twist.hpp"

namespace kappa {

// Commutative coordinate polynomials are AlgebraElements over a relation-free
// system (make_coordinates); the h-adic kappa-Minkowski module uses make_an.
using PolyElement = AlgebraElement;

// Left Hopf action on a module algebra, stored on generators and extended to
// products through the coproduct (generalized Leibniz rule) and to algebra
// words by composition.
class HopfAction {
public:
    HopfAction(HopfPtr hopf, SystemPtr module_sys);

    const HopfPtr& hopf() const { return hopf_; }
    const SystemPtr& module_system() const { return module_; }
    int order() const { return hopf_->order(); }

    void set_action(GenIndex hopf_gen, GenIndex module_gen, AlgebraElement value);
    const AlgebraElement& table(GenIndex hopf_gen, GenIndex module_gen) const;

    // hopf generator / monomial word / general element acting on a module element
    AlgebraElement act_generator(GenIndex g, const AlgebraElement& f) const;
    AlgebraElement act_word(const Word& w, const AlgebraElement& f) const;
    AlgebraElement act(const AlgebraElement& L, const AlgebraElement& f) const;

private:
    HopfPtr hopf_;
    SystemPtr module_;
    std::vector<std::vector<AlgebraElement>> table_;
    std::vector<std::vector<bool>> have_;
};

// Classical igl(n) action on coordinates: P_mu > x^nu = -i delta, L^mu_nu > x^rho = -i delta^rho_nu x^mu.
HopfAction make_classical_igl_action(const HopfPtr& igl_hopf, const SystemPtr& coords);
// kappa-Poincare classical-basis action on the shifted h-adic coordinates:
// P_mu > X^nu = i a delta_mu^nu (default a = -1), Lorentz action classical.
HopfAction make_kappa_poincare_action(const HopfPtr& kp_hopf, const SystemPtr& an_sys,
                                      const GaussianRational& a = GaussianRational(-1));

// f * g = m(F^{-1} > (f x g))
PolyElement star_product(const Twist& F, const HopfAction& A, const PolyElement& f,
                         const PolyElement& g);

// Module relation [g_a, g_b] = rhs used by the covariance (smash-compatibility)
// check and the smash construction.
struct ModuleRelation {
    GenIndex a;
    GenIndex b;
    AlgebraElement rhs;
};

// Relations of the module system read off its straightening table.
std::vector<ModuleRelation> module_relations_of(const SystemPtr& module_sys, int order);

// For every Hopf generator L and module relation: residual of
// (L_(1) > a)(L_(2) > b) - (L_(1) > b)(L_(2) > a) - L > [a,b].
std::vector<RelationResult> check_covariance(const HopfAction& A,
                                             const std::vector<ModuleRelation>& rels);

// Combined smash-product system: module generators first, Hopf generators
// after, cross straightening L * a = (L_(1) > a) L_(2).
struct SmashSystem {
    SystemPtr combined;
    std::size_t n_module = 0;

    GenIndex module_index(GenIndex g) const { return g; }
    GenIndex hopf_index(GenIndex g) const { return static_cast<GenIndex>(n_module + g); }

    AlgebraElement embed_module(const AlgebraElement& e) const;
    AlgebraElement embed_hopf(const AlgebraElement& e) const;
};

SmashSystem build_smash_system(const HopfStructure& H, const HopfAction& A);

// Normal forms of [L, xhat^mu] inside the combined system, one entry per
// (Hopf generator, module generator) pair.
struct CrossRelation {
    std::string name;
    GenIndex hopf_gen;
    GenIndex module_gen;
    AlgebraElement value;  // element of the combined system
};
std::vector<CrossRelation> smash_cross_relations(const SmashSystem& S, const HopfStructure& H,
                                                 const HopfAction& A);

// Pseudo-deformation data: hat coordinates in the Weyl realization plus the
// abstract smash-side round trip x = (f^alpha > xhat) * f_alpha.
struct HatCoordinates {
    std::vector<AlgebraElement> weyl;        // xhat^mu realized in weyl(4, eta)
    std::vector<AlgebraElement> smash;       // xhat^mu in the combined system
    std::vector<RelationResult> roundtrip;   // recovery of x^mu
};
HatCoordinates hat_coordinates(const Twist& F, const HopfAction& A, const SmashSystem& S,
                               const SystemPtr& weyl);

// Heisenberg realization of an igl monomial/element inside weyl(n, eta):
// P_mu -> p_mu, L^mu_nu -> x^mu p_nu.
AlgebraElement heisenberg_realize_igl(const SystemPtr& igl, const SystemPtr& weyl,
                                      const AlgebraElement& e);

// Canonical Poisson bracket {f, g} on polynomial phase-space data is provided
// by the realization module; here only the linear kappa-Minkowski bivector
// x^k d_k wedge d_0 acting on coordinate polynomials is needed.
PolyElement kappa_minkowski_poisson(const PolyElement& f, const PolyElement& g);

}  // namespace kappa
