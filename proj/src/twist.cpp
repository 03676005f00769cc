#include "kappa/twist.hpp"

namespace kappa {

namespace {
const GaussianRational kI = GaussianRational::i();
}

Twist identity_twist(SystemPtr sys, int order) {
    TensorElement u = TensorElement::unit(std::move(sys), 2, order);
    return {u, u};
}

Twist build_exponential_twist(const TensorElement& X) { return {X.exp(), (-X).exp()}; }

Twist build_abelian_twist(const SystemPtr& igl, const Rational& s, int order) {
    std::size_t total = igl->num_generators();
    std::size_t n = 0;
    while (n + n * n < total) ++n;
    if (n + n * n != total) throw std::invalid_argument("build_abelian_twist: not an igl(n) system");
    IglIndices ix{n};
    AlgebraElement P0 = AlgebraElement::generator(igl, ix.P(0), order);
    AlgebraElement D = igl_trace_D(igl, n, order, static_cast<GenIndex>(n));
    TensorElement arg = (TensorElement::outer(P0.scaled(GaussianRational(s)), D) -
                         TensorElement::outer(D.scaled(GaussianRational(Rational(1) - s)), P0))
                            .scaled(kI)
                            .shifted(1)
                            .truncated(order);
    return build_exponential_twist(arg);
}

Twist build_jordanian_twist(const SystemPtr& igl, const Rational& r, int order) {
    if (r == 0) throw std::invalid_argument("build_jordanian_twist: r must be nonzero");
    std::size_t total = igl->num_generators();
    std::size_t n = 0;
    while (n + n * n < total) ++n;
    if (n + n * n != total) throw std::invalid_argument("build_jordanian_twist: not an igl(n) system");
    IglIndices ix{n};
    AlgebraElement one = AlgebraElement::one(igl, order);
    AlgebraElement P0 = AlgebraElement::generator(igl, ix.P(0), order);
    AlgebraElement D = igl_trace_D(igl, n, order, static_cast<GenIndex>(n));
    AlgebraElement L00 = AlgebraElement::generator(igl, ix.L(0, 0), order);
    AlgebraElement Jr = (D.scaled(GaussianRational(Rational(1) / r)) - L00).scaled(kI);
    AlgebraElement sigma = (one - P0.shifted(1).truncated(order).scaled(GaussianRational(r))).log();
    return build_exponential_twist(TensorElement::outer(Jr, sigma));
}

Twist build_coboundary_twist(const HopfStructure& H, const AlgebraElement& W) {
    AlgebraElement Winv = W.invert();
    TensorElement forward = TensorElement::outer(Winv, Winv) * H.coproduct(W);
    TensorElement inverse = H.coproduct(Winv) * TensorElement::outer(W, W);
    return {std::move(forward), std::move(inverse)};
}

CocycleReport check_cocycle(const Twist& F, const HopfStructure& H0) {
    CocycleReport rep;
    TensorElement f12 = F.forward.insert_unit_leg(2);
    TensorElement f23 = F.forward.insert_unit_leg(0);
    rep.residual = f12 * H0.coproduct_on_leg(F.forward, 0) - f23 * H0.coproduct_on_leg(F.forward, 1);
    AlgebraElement one = AlgebraElement::one(H0.system(), F.order());
    rep.counit_left = H0.counit_on_leg(F.forward, 0) - one;
    rep.counit_right = H0.counit_on_leg(F.forward, 1) - one;
    rep.inverse_defect = F.forward * F.inverse - TensorElement::unit(H0.system(), 2, F.order());
    return rep;
}

AlgebraElement twist_antipode_u(const HopfStructure& H, const Twist& F) {
    AlgebraElement u = AlgebraElement::zero(H.system(), F.order());
    for (const auto& [key, c] : F.forward.terms()) {
        TermMap ma{{key.legs[0], HSeries::constant(1, F.order())}};
        TermMap mb{{key.legs[1], HSeries::constant(1, F.order())}};
        AlgebraElement a = AlgebraElement::from_terms(H.system(), F.order(), std::move(ma));
        AlgebraElement b = AlgebraElement::from_terms(H.system(), F.order(), std::move(mb));
        u += (a * H.antipode(b)).scaled(c);
    }
    return u;
}

HopfPtr twist_hopf(const HopfStructure& H, const Twist& F, bool verify) {
    if (verify) {
        CocycleReport rep = check_cocycle(F, H);
        if (!rep.ok()) throw std::domain_error("twist_hopf: twist fails the 2-cocycle conditions");
    }
    auto out = std::make_shared<HopfStructure>(H.system(), H.order());
    AlgebraElement u = twist_antipode_u(H, F);
    AlgebraElement uinv = u.invert();
    for (GenIndex g = 0; g < H.system()->num_generators(); ++g) {
        out->set_coproduct(g, F.forward * H.coproduct_table(g) * F.inverse);
        out->set_antipode(g, u * H.antipode_table(g) * uinv);
        out->set_counit(g, H.counit_table(g));
    }
    return out;
}

RMatrices r_matrices(const Twist& F) {
    TensorElement R = F.forward.swap12() * F.inverse;
    return {R, R.h_coefficient(1)};
}

}  // namespace kappa
