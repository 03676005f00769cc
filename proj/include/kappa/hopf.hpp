#pragma once

#include "kappa/tensor.hpp"

namespace kappa {

// Coproduct/antipode/counit tables on the generators, extended multiplicatively
// (Delta, epsilon) and anti-multiplicatively (S) to the whole algebra.
class HopfStructure {
public:
    HopfStructure(SystemPtr sys, int order);

    const SystemPtr& system() const { return sys_; }
    int order() const { return order_; }

    void set_coproduct(GenIndex g, TensorElement d);
    void set_antipode(GenIndex g, AlgebraElement s);
    void set_counit(GenIndex g, GaussianRational e);
    // Primitive tables for one generator: Delta(g) = g(x)1 + 1(x)g, S = -g, eps = 0.
    void set_primitive(GenIndex g);

    const TensorElement& coproduct_table(GenIndex g) const;
    const AlgebraElement& antipode_table(GenIndex g) const;
    const GaussianRational& counit_table(GenIndex g) const;

    TensorElement coproduct(const AlgebraElement& a) const;
    TensorElement coproduct_monomial(const Monomial& m) const;  // memoized
    AlgebraElement antipode(const AlgebraElement& a) const;
    HSeries counit(const AlgebraElement& a) const;

    // Apply Delta to one leg of a rank-2 tensor: leg = 0 gives (Delta(x)id)T.
    TensorElement coproduct_on_leg(const TensorElement& t, int leg) const;
    // Contract one leg of a rank-2 tensor with the counit.
    AlgebraElement counit_on_leg(const TensorElement& t, int leg) const;

private:
    SystemPtr sys_;
    int order_;
    std::vector<TensorElement> coproducts_;
    std::vector<AlgebraElement> antipodes_;
    std::vector<GaussianRational> counits_;
    std::vector<bool> have_;

    mutable std::unordered_map<Monomial, TensorElement, MonomialHash> delta_cache_;
    mutable std::unordered_map<Monomial, AlgebraElement, MonomialHash> antipode_cache_;
    mutable std::shared_mutex cache_mutex_;
};

using HopfPtr = std::shared_ptr<HopfStructure>;

// Hopf-axiom verification: coassociativity, counit and antipode axioms with
// exact residuals mod h^{order+1}.
std::vector<RelationResult> check_hopf_axioms_generator(const HopfStructure& H, GenIndex g);
std::vector<RelationResult> check_hopf_axioms(const HopfStructure& H);

// Undeformed U(g) with the primitive coproduct on all generators.
HopfPtr make_primitive_hopf(SystemPtr sys);

// kappa-Poincare in the classical basis over io(1,3) "physical" generators.
// Carries Delta_kappa / S_kappa tables built from the shift operator
// Pi = h P0 + sqrt(1 - h^2 P^2).
struct KappaPoincare {
    HopfPtr hopf;
    AlgebraElement Pi;        // h P0 + sqrt(1 - h^2 P^2)
    AlgebraElement Pi_inv;
    AlgebraElement sqrt_term;  // sqrt(1 - h^2 P^2)
};
KappaPoincare make_kappa_poincare(int order);

// Closed-form twisted tables for the Abelian and Jordanian families over
// igl(n), used as comparison oracles for twist_hopf.
HopfPtr make_abelian_hopf_closed(SystemPtr igl, const Rational& s);
HopfPtr make_jordanian_hopf_closed(SystemPtr igl, const Rational& r);

// D = sum_k L^k_k (spatial trace) in an igl-indexed system.
AlgebraElement igl_trace_D(const SystemPtr& sys, std::size_t n, int order, GenIndex l_base);

}  // namespace kappa
