#pragma once

#include "kappa/hopf.hpp"

namespace kappa {

// Invertible two-tensor satisfying the 2-cocycle and normalization conditions.
struct Twist {
    TensorElement forward;
    TensorElement inverse;

    int order() const { return forward.order(); }
};

Twist identity_twist(SystemPtr sys, int order);
// F = exp(X) for an O(h) two-tensor argument.
Twist build_exponential_twist(const TensorElement& X);
// Abelian family over igl(n): exp[i h (s P0 (x) D - (1-s) D (x) P0)].
Twist build_abelian_twist(const SystemPtr& igl, const Rational& s, int order);
// Jordanian family: exp(J_r (x) sigma_r), J_r = i(D/r - L^0_0), sigma_r = log(1 - h r P0).
Twist build_jordanian_twist(const SystemPtr& igl, const Rational& r, int order);
// Trivial (coboundary) twist F_W = (W^-1 (x) W^-1) Delta(W) for invertible W.
Twist build_coboundary_twist(const HopfStructure& H, const AlgebraElement& W);

struct CocycleReport {
    TensorElement residual;        // F12 (Delta (x) id)F - F23 (id (x) Delta)F
    AlgebraElement counit_left;    // (eps (x) id)F - 1
    AlgebraElement counit_right;   // (id (x) eps)F - 1
    TensorElement inverse_defect;  // F F^-1 - 1 (x) 1
    bool ok() const {
        return residual.is_zero() && counit_left.is_zero() && counit_right.is_zero() &&
               inverse_defect.is_zero();
    }
    int effective_order() const { return residual.order(); }
};

// Verifies the 2-cocycle identity against the undeformed coproduct of H0.
CocycleReport check_cocycle(const Twist& F, const HopfStructure& H0);

// u = f^alpha S(f_alpha), the element conjugating the twisted antipode.
AlgebraElement twist_antipode_u(const HopfStructure& H, const Twist& F);

// Twisted Hopf structure: Delta^F = F Delta F^-1, S^F = u S u^-1, eps unchanged.
// With verify set, throws std::domain_error when F fails the cocycle check.
HopfPtr twist_hopf(const HopfStructure& H, const Twist& F, bool verify = false);

struct RMatrices {
    TensorElement R;            // F^{21} F^-1
    TensorElement r_classical;  // coefficient of h^1 in R
};
RMatrices r_matrices(const Twist& F);

}  // namespace kappa
