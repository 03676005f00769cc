#include "kappa/hopf.hpp"

#include <cmath>

namespace kappa {

namespace {
const GaussianRational kI = GaussianRational::i();
}

HopfStructure::HopfStructure(SystemPtr sys, int order)
    : sys_(std::move(sys)),
      order_(order),
      coproducts_(sys_->num_generators()),
      antipodes_(sys_->num_generators()),
      counits_(sys_->num_generators()),
      have_(sys_->num_generators(), false) {}

void HopfStructure::set_coproduct(GenIndex g, TensorElement d) {
    coproducts_[g] = std::move(d);
    have_[g] = true;
    std::unique_lock lock(cache_mutex_);
    delta_cache_.clear();
}

void HopfStructure::set_antipode(GenIndex g, AlgebraElement s) {
    antipodes_[g] = std::move(s);
    std::unique_lock lock(cache_mutex_);
    antipode_cache_.clear();
}

void HopfStructure::set_counit(GenIndex g, GaussianRational e) { counits_[g] = std::move(e); }

void HopfStructure::set_primitive(GenIndex g) {
    AlgebraElement ge = AlgebraElement::generator(sys_, g, order_);
    AlgebraElement one = AlgebraElement::one(sys_, order_);
    set_coproduct(g, TensorElement::outer(ge, one) + TensorElement::outer(one, ge));
    set_antipode(g, -ge);
    set_counit(g, GaussianRational(0));
}

const TensorElement& HopfStructure::coproduct_table(GenIndex g) const {
    if (!have_[g])
        throw std::domain_error("HopfStructure: missing coproduct entry for " + sys_->generator(g).name);
    return coproducts_[g];
}

const AlgebraElement& HopfStructure::antipode_table(GenIndex g) const {
    if (!have_[g])
        throw std::domain_error("HopfStructure: missing antipode entry for " + sys_->generator(g).name);
    return antipodes_[g];
}

const GaussianRational& HopfStructure::counit_table(GenIndex g) const {
    if (!have_[g])
        throw std::domain_error("HopfStructure: missing counit entry for " + sys_->generator(g).name);
    return counits_[g];
}

TensorElement HopfStructure::coproduct_monomial(const Monomial& m) const {
    {
        std::shared_lock lock(cache_mutex_);
        auto it = delta_cache_.find(m);
        if (it != delta_cache_.end()) return it->second;
    }
    TensorElement result = TensorElement::unit(sys_, 2, order_);
    for (GenIndex g : m.word()) result = result * coproduct_table(g);
    {
        std::unique_lock lock(cache_mutex_);
        delta_cache_.emplace(m, result);
    }
    return result;
}

TensorElement HopfStructure::coproduct(const AlgebraElement& a) const {
    TensorElement r(sys_, 2, std::min(order_, a.order()));
    for (const auto& [m, c] : a.terms()) r += coproduct_monomial(m).scaled(c);
    return r;
}

AlgebraElement HopfStructure::antipode(const AlgebraElement& a) const {
    AlgebraElement r = AlgebraElement::zero(sys_, std::min(order_, a.order()));
    for (const auto& [m, c] : a.terms()) {
        {
            std::shared_lock lock(cache_mutex_);
            auto it = antipode_cache_.find(m);
            if (it != antipode_cache_.end()) {
                r += it->second.scaled(c);
                continue;
            }
        }
        AlgebraElement s = AlgebraElement::one(sys_, order_);
        Word w = m.word();
        for (auto it = w.rbegin(); it != w.rend(); ++it) s = s * antipode_table(*it);
        {
            std::unique_lock lock(cache_mutex_);
            antipode_cache_.emplace(m, s);
        }
        r += s.scaled(c);
    }
    return r;
}

HSeries HopfStructure::counit(const AlgebraElement& a) const {
    HSeries r = HSeries::zero(std::min(order_, a.order()));
    for (const auto& [m, c] : a.terms()) {
        GaussianRational e(1);
        for (GenIndex g : m.word()) e *= counit_table(g);
        if (!e.is_zero()) r += c * e;
    }
    return r;
}

TensorElement HopfStructure::coproduct_on_leg(const TensorElement& t, int leg) const {
    if (t.rank() != 2) throw std::invalid_argument("coproduct_on_leg: rank-2 input expected");
    TensorElement r(sys_, 3, std::min(order_, t.order()));
    for (const auto& [key, c] : t.terms()) {
        TensorElement d = coproduct_monomial(key.legs[static_cast<std::size_t>(leg)]);
        for (const auto& [dkey, dc] : d.terms()) {
            MonoTuple out;
            out.rank = 3;
            if (leg == 0) out.legs = {dkey.legs[0], dkey.legs[1], key.legs[1]};
            else out.legs = {key.legs[0], dkey.legs[0], dkey.legs[1]};
            r.add_term(out, c * dc);
        }
    }
    return r;
}

AlgebraElement HopfStructure::counit_on_leg(const TensorElement& t, int leg) const {
    if (t.rank() != 2) throw std::invalid_argument("counit_on_leg: rank-2 input expected");
    AlgebraElement r = AlgebraElement::zero(sys_, std::min(order_, t.order()));
    for (const auto& [key, c] : t.terms()) {
        GaussianRational e(1);
        for (GenIndex g : key.legs[static_cast<std::size_t>(leg)].word()) e *= counit_table(g);
        if (e.is_zero()) continue;
        r.add_term(key.legs[static_cast<std::size_t>(leg == 0 ? 1 : 0)], c * e);
    }
    return r;
}

std::vector<RelationResult> check_hopf_axioms_generator(const HopfStructure& H, GenIndex g) {
    std::vector<RelationResult> out;
    const SystemPtr& sys = H.system();
    int order = H.order();
    {
        const std::string& name = sys->generator(g).name;
        const TensorElement& dg = H.coproduct_table(g);
        AlgebraElement ge = AlgebraElement::generator(sys, g, order);

        {
            TensorElement res = H.coproduct_on_leg(dg, 0) - H.coproduct_on_leg(dg, 1);
            RelationResult r;
            r.name = "coassoc(" + name + ")";
            r.ok = res.is_zero();
            r.effective_order = res.order();
            if (!r.ok) r.residual = res.str();
            out.push_back(std::move(r));
        }
        {
            AlgebraElement left = H.counit_on_leg(dg, 0) - ge;
            AlgebraElement right = H.counit_on_leg(dg, 1) - ge;
            RelationResult r;
            r.name = "counit(" + name + ")";
            r.ok = left.is_zero() && right.is_zero();
            r.effective_order = std::min(left.order(), right.order());
            if (!r.ok) r.residual = (left + right).str();
            out.push_back(std::move(r));
        }
        {
            AlgebraElement target =
                AlgebraElement::scalar(sys, H.counit_table(g), order);
            AlgebraElement left = AlgebraElement::zero(sys, order);
            AlgebraElement right = left;
            for (const auto& [key, c] : dg.terms()) {
                TermMap ma{{key.legs[0], HSeries::constant(1, order)}};
                TermMap mb{{key.legs[1], HSeries::constant(1, order)}};
                AlgebraElement a = AlgebraElement::from_terms(sys, order, std::move(ma));
                AlgebraElement b = AlgebraElement::from_terms(sys, order, std::move(mb));
                left += (H.antipode(a) * b).scaled(c);
                right += (a * H.antipode(b)).scaled(c);
            }
            AlgebraElement lres = left - target, rres = right - target;
            RelationResult r;
            r.name = "antipode(" + name + ")";
            r.ok = lres.is_zero() && rres.is_zero();
            r.effective_order = std::min(lres.order(), rres.order());
            if (!r.ok) r.residual = (lres + rres).str();
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<RelationResult> check_hopf_axioms(const HopfStructure& H) {
    std::vector<RelationResult> out;
    for (GenIndex g = 0; g < H.system()->num_generators(); ++g) {
        auto part = check_hopf_axioms_generator(H, g);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

HopfPtr make_primitive_hopf(SystemPtr sys) {
    auto H = std::make_shared<HopfStructure>(sys, sys->order());
    for (GenIndex g = 0; g < sys->num_generators(); ++g) H->set_primitive(g);
    return H;
}

KappaPoincare make_kappa_poincare(int order) {
    auto sys = make_io13_physical(order);
    Io13Indices ix;
    auto H = std::make_shared<HopfStructure>(sys, order);
    auto one = AlgebraElement::one(sys, order);

    auto P = [&](std::size_t mu) { return AlgebraElement::generator(sys, ix.P(mu), order); };
    auto M = [&](std::size_t i) { return AlgebraElement::generator(sys, ix.M(i), order); };
    auto Nb = [&](std::size_t i) { return AlgebraElement::generator(sys, ix.N(i), order); };

    // P^2 = eta^{mu nu} P_mu P_nu = vec P^2 - P0^2
    AlgebraElement P2 = -(P(0) * P(0));
    for (std::size_t k = 1; k <= 3; ++k) P2 += P(k) * P(k);
    AlgebraElement sqrt_term = (one - (P2.shifted(2).truncated(order))).pow(Rational(1, 2));
    AlgebraElement Pi = P(0).shifted(1).truncated(order) + sqrt_term;
    AlgebraElement Pi_inv = Pi.invert();

    for (std::size_t i = 1; i <= 3; ++i) H->set_primitive(ix.M(i));

    for (std::size_t i = 1; i <= 3; ++i) {
        TensorElement d = TensorElement::outer(Nb(i), one) + TensorElement::outer(Pi_inv, Nb(i));
        for (std::size_t j = 1; j <= 3; ++j)
            for (std::size_t m = 1; m <= 3; ++m) {
                int eps = levi_civita(i, j, m);
                if (eps == 0) continue;
                d -= TensorElement::outer(P(j) * Pi_inv, M(m))
                         .scaled(GaussianRational(eps))
                         .shifted(1)
                         .truncated(order);
            }
        H->set_coproduct(ix.N(i), std::move(d));
        AlgebraElement s = -(Pi * Nb(i));
        for (std::size_t j = 1; j <= 3; ++j)
            for (std::size_t m = 1; m <= 3; ++m) {
                int eps = levi_civita(i, j, m);
                if (eps == 0) continue;
                s -= (P(j) * M(m)).scaled(GaussianRational(eps)).shifted(1).truncated(order);
            }
        H->set_antipode(ix.N(i), std::move(s));
        H->set_counit(ix.N(i), GaussianRational(0));
    }

    for (std::size_t k = 1; k <= 3; ++k) {
        H->set_coproduct(ix.P(k), TensorElement::outer(P(k), Pi) + TensorElement::outer(one, P(k)));
        H->set_antipode(ix.P(k), -(P(k) * Pi_inv));
        H->set_counit(ix.P(k), GaussianRational(0));
    }

    {
        TensorElement d = TensorElement::outer(P(0), Pi) + TensorElement::outer(Pi_inv, P(0));
        for (std::size_t m = 1; m <= 3; ++m)
            d += TensorElement::outer(P(m) * Pi_inv, P(m)).shifted(1).truncated(order);
        H->set_coproduct(ix.P(0), std::move(d));
        AlgebraElement vecP2 = AlgebraElement::zero(sys, order);
        for (std::size_t k = 1; k <= 3; ++k) vecP2 += P(k) * P(k);
        H->set_antipode(ix.P(0), -P(0) + (vecP2 * Pi_inv).shifted(1).truncated(order));
        H->set_counit(ix.P(0), GaussianRational(0));
    }

    return {H, Pi, Pi_inv, sqrt_term};
}

AlgebraElement igl_trace_D(const SystemPtr& sys, std::size_t n, int order, GenIndex l_base) {
    AlgebraElement D = AlgebraElement::zero(sys, order);
    for (std::size_t k = 1; k < n; ++k)
        D += AlgebraElement::generator(sys, static_cast<GenIndex>(l_base + k * n + k), order);
    return D;
}

namespace {

std::size_t igl_dimension(const SystemPtr& sys) {
    // n + n^2 generators
    std::size_t total = sys->num_generators();
    std::size_t n = static_cast<std::size_t>(std::lround((-1.0 + std::sqrt(1.0 + 4.0 * static_cast<double>(total))) / 2.0));
    if (n + n * n != total) throw std::invalid_argument("not an igl(n) system");
    return n;
}

}  // namespace

HopfPtr make_abelian_hopf_closed(SystemPtr sys, const Rational& s) {
    std::size_t n = igl_dimension(sys);
    IglIndices ix{n};
    int order = sys->order();
    auto H = std::make_shared<HopfStructure>(sys, order);
    auto one = AlgebraElement::one(sys, order);
    auto P = [&](std::size_t mu) { return AlgebraElement::generator(sys, ix.P(mu), order); };
    auto L = [&](std::size_t mu, std::size_t nu) {
        return AlgebraElement::generator(sys, ix.L(mu, nu), order);
    };
    AlgebraElement D = igl_trace_D(sys, n, order, static_cast<GenIndex>(n));

    // exp(c h P0)
    auto eP0 = [&](const Rational& c) {
        return P(0).shifted(1).truncated(order).scaled(GaussianRational(c)).exp();
    };

    H->set_primitive(ix.P(0));
    for (std::size_t k = 1; k < n; ++k) {
        H->set_coproduct(ix.P(k), TensorElement::outer(eP0(-s), P(k)) +
                                      TensorElement::outer(P(k), eP0(Rational(1) - s)));
        H->set_antipode(ix.P(k), -(P(k) * eP0(2 * s - 1)));
        H->set_counit(ix.P(k), GaussianRational(0));
    }
    // spatial L^m_k: primitive
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t k = 1; k < n; ++k) H->set_primitive(ix.L(m, k));
    // L^k_0 (their L_0^k)
    for (std::size_t k = 1; k < n; ++k) {
        H->set_coproduct(ix.L(k, 0), TensorElement::outer(eP0(s), L(k, 0)) +
                                         TensorElement::outer(L(k, 0), eP0(s - 1)));
        H->set_antipode(ix.L(k, 0), -(L(k, 0) * eP0(1 - 2 * s)));
        H->set_counit(ix.L(k, 0), GaussianRational(0));
    }
    // L^0_k (their L_k^0); the first-leg exponential also dresses the D (x) P_k term
    for (std::size_t k = 1; k < n; ++k) {
        TensorElement d = TensorElement::outer(eP0(-s), L(0, k)) +
                          TensorElement::outer(L(0, k), eP0(Rational(1) - s)) +
                          TensorElement::outer(P(k).scaled(GaussianRational(s)), D * eP0(Rational(1) - s))
                              .shifted(1)
                              .truncated(order) -
                          TensorElement::outer((D * eP0(-s)).scaled(GaussianRational(Rational(1) - s)), P(k))
                              .shifted(1)
                              .truncated(order);
        H->set_coproduct(ix.L(0, k), std::move(d));
        AlgebraElement sres = -(eP0(2 * s - 1) * L(0, k)) -
                              (P(k) * D * eP0(2 * s - 1))
                                  .scaled(GaussianRational(1 - 2 * s))
                                  .shifted(1)
                                  .truncated(order);
        H->set_antipode(ix.L(0, k), std::move(sres));
        H->set_counit(ix.L(0, k), GaussianRational(0));
    }
    // L^0_0
    {
        AlgebraElement l00 = L(0, 0);
        TensorElement d = TensorElement::outer(l00, one) + TensorElement::outer(one, l00) +
                          TensorElement::outer(P(0).scaled(GaussianRational(s)), D).shifted(1).truncated(order) -
                          TensorElement::outer(D.scaled(GaussianRational(Rational(1) - s)), P(0))
                              .shifted(1)
                              .truncated(order);
        H->set_coproduct(ix.L(0, 0), std::move(d));
        H->set_antipode(ix.L(0, 0),
                        -l00 - (D * P(0)).scaled(GaussianRational(Rational(1) - 2 * s)).shifted(1).truncated(order));
        H->set_counit(ix.L(0, 0), GaussianRational(0));
    }
    return H;
}

HopfPtr make_jordanian_hopf_closed(SystemPtr sys, const Rational& r) {
    if (r == 0) throw std::invalid_argument("jordanian: r must be nonzero");
    std::size_t n = igl_dimension(sys);
    IglIndices ix{n};
    int order = sys->order();
    auto H = std::make_shared<HopfStructure>(sys, order);
    auto one = AlgebraElement::one(sys, order);
    auto P = [&](std::size_t mu) { return AlgebraElement::generator(sys, ix.P(mu), order); };
    auto L = [&](std::size_t mu, std::size_t nu) {
        return AlgebraElement::generator(sys, ix.L(mu, nu), order);
    };
    AlgebraElement D = igl_trace_D(sys, n, order, static_cast<GenIndex>(n));
    // e^{beta sigma_r} = (1 - h r P0)^beta
    AlgebraElement base = one - P(0).shifted(1).truncated(order).scaled(GaussianRational(r));
    auto esig = [&](const Rational& beta) { return base.pow(beta); };
    AlgebraElement Jr = (D.scaled(GaussianRational(Rational(1) / r)) - L(0, 0)).scaled(kI);

    H->set_coproduct(ix.P(0), TensorElement::outer(one, P(0)) + TensorElement::outer(P(0), esig(1)));
    H->set_antipode(ix.P(0), -(P(0) * esig(-1)));
    H->set_counit(ix.P(0), GaussianRational(0));
    for (std::size_t k = 1; k < n; ++k) {
        H->set_coproduct(ix.P(k), TensorElement::outer(one, P(k)) +
                                      TensorElement::outer(P(k), esig(Rational(-1) / r)));
        H->set_antipode(ix.P(k), -(P(k) * esig(Rational(1) / r)));
        H->set_counit(ix.P(k), GaussianRational(0));
    }
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t k = 1; k < n; ++k) H->set_primitive(ix.L(m, k));
    Rational rp1_over_r = (r + 1) / r;
    for (std::size_t k = 1; k < n; ++k) {
        H->set_coproduct(ix.L(k, 0), TensorElement::outer(one, L(k, 0)) +
                                         TensorElement::outer(L(k, 0), esig(rp1_over_r)));
        H->set_antipode(ix.L(k, 0), -(L(k, 0) * esig(-rp1_over_r)));
        H->set_counit(ix.L(k, 0), GaussianRational(0));
    }
    for (std::size_t k = 1; k < n; ++k) {
        TensorElement d = TensorElement::outer(one, L(0, k)) +
                          TensorElement::outer(L(0, k), esig(-rp1_over_r)) +
                          TensorElement::outer(Jr.scaled(GaussianRational(r) * kI), P(k) * esig(-1))
                              .shifted(1)
                              .truncated(order);
        H->set_coproduct(ix.L(0, k), std::move(d));
        H->set_antipode(ix.L(0, k),
                        -((L(0, k) - (Jr * P(k)).scaled(GaussianRational(r) * kI).shifted(1).truncated(order)) *
                          esig(rp1_over_r)));
        H->set_counit(ix.L(0, k), GaussianRational(0));
    }
    {
        TensorElement d = TensorElement::outer(L(0, 0), one) + TensorElement::outer(one, L(0, 0)) +
                          TensorElement::outer(Jr.scaled(GaussianRational(r) * kI), P(0) * esig(-1))
                              .shifted(1)
                              .truncated(order);
        H->set_coproduct(ix.L(0, 0), std::move(d));
        H->set_antipode(ix.L(0, 0),
                        -L(0, 0) + (Jr * P(0)).scaled(GaussianRational(r) * kI).shifted(1).truncated(order));
        H->set_counit(ix.L(0, 0), GaussianRational(0));
    }
    return H;
}

}  // namespace kappa
