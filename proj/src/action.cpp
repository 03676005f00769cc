#include "kappa/action.hpp"

namespace kappa {

namespace {
const GaussianRational kI = GaussianRational::i();
}

HopfAction::HopfAction(HopfPtr hopf, SystemPtr module_sys)
    : hopf_(std::move(hopf)),
      module_(std::move(module_sys)),
      table_(hopf_->system()->num_generators(),
             std::vector<AlgebraElement>(module_->num_generators())),
      have_(hopf_->system()->num_generators(),
            std::vector<bool>(module_->num_generators(), false)) {}

void HopfAction::set_action(GenIndex hopf_gen, GenIndex module_gen, AlgebraElement value) {
    table_[hopf_gen][module_gen] = std::move(value);
    have_[hopf_gen][module_gen] = true;
}

const AlgebraElement& HopfAction::table(GenIndex hopf_gen, GenIndex module_gen) const {
    if (!have_[hopf_gen][module_gen])
        throw std::domain_error("HopfAction: missing action entry " +
                                hopf_->system()->generator(hopf_gen).name + " > " +
                                module_->generator(module_gen).name);
    return table_[hopf_gen][module_gen];
}

AlgebraElement HopfAction::act_generator(GenIndex g, const AlgebraElement& f) const {
    int order = std::min(hopf_->order(), f.order());
    AlgebraElement out = AlgebraElement::zero(module_, order);
    for (const auto& [m, c] : f.terms()) {
        Word w = m.word();
        if (w.empty()) {
            // L > 1 = eps(L) 1
            out += AlgebraElement::scalar(module_, HSeries::constant(hopf_->counit_table(g), order) * c);
            continue;
        }
        if (w.size() == 1) {
            out += table(g, w.front()).scaled(c);
            continue;
        }
        // split m = a * m' and use Delta(g) legwise
        GenIndex a = w.front();
        Monomial rest_m = m;
        rest_m.exp[a] = static_cast<std::uint8_t>(rest_m.exp[a] - 1);
        AlgebraElement a_elem = AlgebraElement::generator(module_, a, order);
        AlgebraElement rest = AlgebraElement::from_terms(
            module_, order, TermMap{{rest_m, HSeries::constant(1, order)}});
        const TensorElement& dg = hopf_->coproduct_table(g);
        for (const auto& [key, dc] : dg.terms()) {
            AlgebraElement left = act_word(key.legs[0].word(), a_elem);
            if (left.is_zero()) continue;
            AlgebraElement right = act_word(key.legs[1].word(), rest);
            if (right.is_zero()) continue;
            out += (left * right).scaled((dc * c).truncated(order));
        }
    }
    return out;
}

AlgebraElement HopfAction::act_word(const Word& w, const AlgebraElement& f) const {
    AlgebraElement cur = f;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (cur.is_zero()) break;
        cur = act_generator(*it, cur);
    }
    return cur;
}

AlgebraElement HopfAction::act(const AlgebraElement& L, const AlgebraElement& f) const {
    AlgebraElement out = AlgebraElement::zero(module_, std::min(L.order(), f.order()));
    for (const auto& [m, c] : L.terms()) out += act_word(m.word(), f).scaled(c);
    return out;
}

HopfAction make_classical_igl_action(const HopfPtr& igl_hopf, const SystemPtr& coords) {
    const SystemPtr& sys = igl_hopf->system();
    std::size_t total = sys->num_generators();
    std::size_t n = 0;
    while (n + n * n < total) ++n;
    if (n + n * n != total) throw std::invalid_argument("make_classical_igl_action: not an igl(n) system");
    if (coords->num_generators() != n)
        throw std::invalid_argument("make_classical_igl_action: coordinate count mismatch");
    IglIndices ix{n};
    int order = igl_hopf->order();
    HopfAction A(igl_hopf, coords);
    for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu) {
            // P_mu > x^nu = -i delta_mu^nu
            A.set_action(ix.P(mu), static_cast<GenIndex>(nu),
                         mu == nu ? AlgebraElement::scalar(coords, -kI, order)
                                  : AlgebraElement::zero(coords, order));
            // L^mu_nu > x^rho = -i delta^rho_nu x^mu
            for (std::size_t rho = 0; rho < n; ++rho)
                A.set_action(ix.L(mu, nu), static_cast<GenIndex>(rho),
                             nu == rho
                                 ? AlgebraElement::generator(coords, static_cast<GenIndex>(mu), order)
                                       .scaled(-kI)
                                 : AlgebraElement::zero(coords, order));
        }
    return A;
}

HopfAction make_kappa_poincare_action(const HopfPtr& kp_hopf, const SystemPtr& an_sys,
                                      const GaussianRational& a) {
    Io13Indices ix;
    int order = kp_hopf->order();
    HopfAction A(kp_hopf, an_sys);
    auto X = [&](std::size_t mu) {
        return AlgebraElement::generator(an_sys, static_cast<GenIndex>(mu), order);
    };
    auto zero = AlgebraElement::zero(an_sys, order);
    for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = 0; nu < 4; ++nu)
            A.set_action(ix.P(mu), static_cast<GenIndex>(nu),
                         mu == nu ? AlgebraElement::scalar(an_sys, kI * a, order) : zero);
    // M_i > X^rho = i eps_{i rho k} X^k (rho spatial), 0 for rho = 0
    for (std::size_t i = 1; i <= 3; ++i) {
        A.set_action(ix.M(i), 0, zero);
        for (std::size_t rho = 1; rho <= 3; ++rho) {
            AlgebraElement v = zero;
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, rho, k);
                if (eps != 0) v += X(k).scaled(kI * GaussianRational(eps));
            }
            A.set_action(ix.M(i), static_cast<GenIndex>(rho), v);
        }
    }
    // N_i > X^0 = i X^i ; N_i > X^j = i delta_ij X^0  (from M_{0i} with eta = diag(-,+,+,+))
    for (std::size_t i = 1; i <= 3; ++i) {
        A.set_action(ix.N(i), 0, X(i).scaled(kI));
        for (std::size_t j = 1; j <= 3; ++j)
            A.set_action(ix.N(i), static_cast<GenIndex>(j), i == j ? X(0).scaled(kI) : zero);
    }
    return A;
}

PolyElement star_product(const Twist& F, const HopfAction& A, const PolyElement& f,
                         const PolyElement& g) {
    int order = std::min({F.order(), f.order(), g.order()});
    AlgebraElement out = AlgebraElement::zero(A.module_system(), order);
    for (const auto& [key, c] : F.inverse.terms()) {
        AlgebraElement left = A.act_word(key.legs[0].word(), f);
        if (left.is_zero()) continue;
        AlgebraElement right = A.act_word(key.legs[1].word(), g);
        if (right.is_zero()) continue;
        out += (left * right).scaled(c);
    }
    return out;
}

std::vector<ModuleRelation> module_relations_of(const SystemPtr& module_sys, int order) {
    std::vector<ModuleRelation> rels;
    auto n = static_cast<GenIndex>(module_sys->num_generators());
    for (GenIndex b = 0; b < n; ++b)
        for (GenIndex a = 0; a < b; ++a) {
            AlgebraElement rhs = commutator(AlgebraElement::generator(module_sys, a, order),
                                            AlgebraElement::generator(module_sys, b, order));
            rels.push_back({a, b, std::move(rhs)});
        }
    return rels;
}

std::vector<RelationResult> check_covariance(const HopfAction& A,
                                             const std::vector<ModuleRelation>& rels) {
    std::vector<RelationResult> out;
    const SystemPtr& hsys = A.hopf()->system();
    const SystemPtr& msys = A.module_system();
    int order = A.order();
    for (GenIndex g = 0; g < hsys->num_generators(); ++g) {
        const TensorElement& dg = A.hopf()->coproduct_table(g);
        for (const auto& rel : rels) {
            AlgebraElement ea = AlgebraElement::generator(msys, rel.a, order);
            AlgebraElement eb = AlgebraElement::generator(msys, rel.b, order);
            AlgebraElement acc = AlgebraElement::zero(msys, order);
            for (const auto& [key, c] : dg.terms()) {
                AlgebraElement la = A.act_word(key.legs[0].word(), ea);
                AlgebraElement lb = A.act_word(key.legs[1].word(), eb);
                AlgebraElement ra = A.act_word(key.legs[0].word(), eb);
                AlgebraElement rb = A.act_word(key.legs[1].word(), ea);
                acc += (la * lb - ra * rb).scaled(c);
            }
            acc -= A.act_generator(g, rel.rhs);
            RelationResult r;
            r.name = "covariance(" + hsys->generator(g).name + "; [" + msys->generator(rel.a).name +
                     "," + msys->generator(rel.b).name + "])";
            r.ok = acc.is_zero();
            r.effective_order = acc.order();
            if (!r.ok) r.residual = acc.str();
            out.push_back(std::move(r));
        }
    }
    return out;
}

AlgebraElement SmashSystem::embed_module(const AlgebraElement& e) const {
    AlgebraElement out(combined, e.order());
    for (const auto& [m, c] : e.terms()) {
        Monomial key(combined->num_generators());
        for (GenIndex g = 0; g < m.exp.size(); ++g) key.exp[module_index(g)] = m.exp[g];
        out.add_term(key, c);
    }
    return out;
}

AlgebraElement SmashSystem::embed_hopf(const AlgebraElement& e) const {
    AlgebraElement out(combined, e.order());
    for (const auto& [m, c] : e.terms()) {
        Monomial key(combined->num_generators());
        for (GenIndex g = 0; g < m.exp.size(); ++g) key.exp[hopf_index(g)] = m.exp[g];
        out.add_term(key, c);
    }
    return out;
}

SmashSystem build_smash_system(const HopfStructure& H, const HopfAction& A) {
    const SystemPtr& hsys = H.system();
    const SystemPtr& msys = A.module_system();
    int order = H.order();
    std::size_t nm = msys->num_generators(), nh = hsys->num_generators();

    std::vector<GeneratorInfo> gens;
    for (GenIndex g = 0; g < nm; ++g) gens.push_back({"xh_" + msys->generator(g).name});
    for (GenIndex g = 0; g < nh; ++g) gens.push_back({hsys->generator(g).name});
    SmashSystem S;
    S.n_module = nm;
    auto combined = GeneratorSystem::create(std::move(gens), order);
    combined->set_metric(msys->metric());
    S.combined = combined;

    auto remap = [&](const TermMap& src, bool is_module) {
        TermMap out;
        for (const auto& [m, c] : src) {
            Monomial key(nm + nh);
            for (GenIndex g = 0; g < m.exp.size(); ++g)
                key.exp[is_module ? S.module_index(g) : S.hopf_index(g)] = m.exp[g];
            out.emplace(std::move(key), c);
        }
        return out;
    };

    // module and hopf blocks inherit their straightening tables
    for (GenIndex j = 0; j < nm; ++j)
        for (GenIndex i = 0; i < j; ++i)
            if (const TermMap* rem = msys->remainder(j, i))
                combined->set_straighten(S.module_index(j), S.module_index(i), remap(*rem, true));
    for (GenIndex j = 0; j < nh; ++j)
        for (GenIndex i = 0; i < j; ++i)
            if (const TermMap* rem = hsys->remainder(j, i))
                combined->set_straighten(S.hopf_index(j), S.hopf_index(i), remap(*rem, false));

    // cross block: L * a = (L_(1) > a) L_(2)
    for (GenIndex g = 0; g < nh; ++g) {
        const TensorElement& dg = H.coproduct_table(g);
        for (GenIndex a = 0; a < nm; ++a) {
            AlgebraElement a_elem = AlgebraElement::generator(msys, a, order);
            AlgebraElement full = AlgebraElement::zero(S.combined, order);
            for (const auto& [key, c] : dg.terms()) {
                AlgebraElement acted = A.act_word(key.legs[0].word(), a_elem);
                if (acted.is_zero()) continue;
                AlgebraElement right(hsys, order);
                right.add_term(key.legs[1], HSeries::constant(1, order));
                full += (S.embed_module(acted) * S.embed_hopf(right)).scaled(c);
            }
            Monomial swap(nm + nh);
            swap.exp[S.module_index(a)] = 1;
            swap.exp[S.hopf_index(g)] = 1;
            HSeries lead = full.coefficient(swap);
            if (!lead.is_one())
                throw std::domain_error("build_smash_system: coproduct of " + hsys->generator(g).name +
                                        " lacks the unit (x) L leg");
            TermMap rem = full.terms();
            rem.erase(swap);
            combined->set_straighten(S.hopf_index(g), S.module_index(a), std::move(rem));
        }
    }
    return S;
}

std::vector<CrossRelation> smash_cross_relations(const SmashSystem& S, const HopfStructure& H,
                                                 const HopfAction& A) {
    std::vector<CrossRelation> out;
    const SystemPtr& hsys = H.system();
    const SystemPtr& msys = A.module_system();
    int order = H.order();
    for (GenIndex g = 0; g < hsys->num_generators(); ++g)
        for (GenIndex a = 0; a < msys->num_generators(); ++a) {
            AlgebraElement L = AlgebraElement::generator(S.combined, S.hopf_index(g), order);
            AlgebraElement xa = AlgebraElement::generator(S.combined, S.module_index(a), order);
            CrossRelation rel;
            rel.name = "[" + hsys->generator(g).name + ", xh_" + msys->generator(a).name + "]";
            rel.hopf_gen = g;
            rel.module_gen = a;
            rel.value = commutator(L, xa);
            out.push_back(std::move(rel));
        }
    return out;
}

AlgebraElement heisenberg_realize_igl(const SystemPtr& igl, const SystemPtr& weyl,
                                      const AlgebraElement& e) {
    std::size_t total = igl->num_generators();
    std::size_t n = 0;
    while (n + n * n < total) ++n;
    if (n + n * n != total) throw std::invalid_argument("heisenberg_realize_igl: not an igl(n) system");
    IglIndices ix{n};
    WeylIndices wx{n};
    int order = e.order();
    AlgebraElement out = AlgebraElement::zero(weyl, order);
    for (const auto& [m, c] : e.terms()) {
        AlgebraElement prod = AlgebraElement::one(weyl, order);
        for (GenIndex g : m.word()) {
            AlgebraElement img(weyl, order);
            if (g < n) {
                img = AlgebraElement::generator(weyl, wx.p(g), order);
            } else {
                std::size_t mu = (g - n) / n, nu = (g - n) % n;
                img = AlgebraElement::from_word(weyl, {wx.x(mu), wx.p(nu)}, order);
            }
            prod = prod * img;
        }
        out += prod.scaled(c);
    }
    return out;
}

HatCoordinates hat_coordinates(const Twist& F, const HopfAction& A, const SmashSystem& S,
                               const SystemPtr& weyl) {
    const SystemPtr& hsys = A.hopf()->system();
    const SystemPtr& msys = A.module_system();
    int order = F.order();
    std::size_t n = msys->num_generators();
    HatCoordinates out;

    for (GenIndex mu = 0; mu < n; ++mu) {
        AlgebraElement x_mu = AlgebraElement::generator(msys, mu, order);
        AlgebraElement hat_smash = AlgebraElement::zero(S.combined, order);
        AlgebraElement hat_weyl = AlgebraElement::zero(weyl, order);
        for (const auto& [key, c] : F.inverse.terms()) {
            AlgebraElement acted = A.act_word(key.legs[0].word(), x_mu);
            if (acted.is_zero()) continue;
            AlgebraElement right(hsys, order);
            right.add_term(key.legs[1], HSeries::constant(1, order));
            hat_smash += (S.embed_module(acted) * S.embed_hopf(right)).scaled(c);
            // Weyl realization: coordinates embed, igl part maps through
            // P -> p, L -> x p.
            AlgebraElement acted_weyl = AlgebraElement::zero(weyl, order);
            for (const auto& [am, ac] : acted.terms()) {
                Monomial wm(weyl->num_generators());
                for (GenIndex g = 0; g < am.exp.size(); ++g) wm.exp[g] = am.exp[g];
                acted_weyl.add_term(wm, ac);
            }
            hat_weyl += (acted_weyl * heisenberg_realize_igl(hsys, weyl, right)).scaled(c);
        }
        out.weyl.push_back(std::move(hat_weyl));
        out.smash.push_back(std::move(hat_smash));
    }

    // round trip: x^mu = (f^alpha > xhat^mu) * f_alpha
    for (GenIndex mu = 0; mu < n; ++mu) {
        AlgebraElement recovered = AlgebraElement::zero(S.combined, order);
        for (const auto& [fkey, fc] : F.forward.terms()) {
            for (const auto& [sm, sc] : out.smash[mu].terms()) {
                // split the combined monomial into module and hopf parts
                Monomial mod_part(msys->num_generators());
                Monomial hopf_part(hsys->num_generators());
                for (GenIndex g = 0; g < msys->num_generators(); ++g) mod_part.exp[g] = sm.exp[S.module_index(g)];
                for (GenIndex g = 0; g < hsys->num_generators(); ++g)
                    hopf_part.exp[g] = sm.exp[S.hopf_index(g)];
                AlgebraElement mod_elem = AlgebraElement::from_terms(
                    msys, order, TermMap{{mod_part, HSeries::constant(1, order)}});
                AlgebraElement acted = A.act_word(fkey.legs[0].word(), mod_elem);
                if (acted.is_zero()) continue;
                AlgebraElement hopf_elem(hsys, order);
                hopf_elem.add_term(hopf_part, HSeries::constant(1, order));
                AlgebraElement fa(hsys, order);
                fa.add_term(fkey.legs[1], HSeries::constant(1, order));
                recovered +=
                    (S.embed_module(acted) * S.embed_hopf(hopf_elem * fa)).scaled((fc * sc).truncated(order));
            }
        }
        AlgebraElement target =
            S.embed_module(AlgebraElement::generator(msys, mu, order));
        AlgebraElement residual = recovered - target;
        RelationResult r;
        r.name = "roundtrip(x" + std::to_string(mu) + ")";
        r.ok = residual.is_zero();
        r.effective_order = residual.order();
        if (!r.ok) r.residual = residual.str();
        out.roundtrip.push_back(std::move(r));
    }
    return out;
}

PolyElement kappa_minkowski_poisson(const PolyElement& f, const PolyElement& g) {
    // {x^mu, x^nu} = theta^{mu nu} with theta^{0k} = x^k:
    // {f, g} = x^k (d_0 f d_k g - d_k f d_0 g)
    const SystemPtr& sys = f.system();
    int order = std::min(f.order(), g.order());
    auto derivative = [&](const PolyElement& e, GenIndex mu) {
        PolyElement out = AlgebraElement::zero(sys, order);
        for (const auto& [m, c] : e.terms()) {
            if (m.exp[mu] == 0) continue;
            Monomial d = m;
            d.exp[mu] = static_cast<std::uint8_t>(d.exp[mu] - 1);
            out.add_term(d, c * GaussianRational(Rational(m.exp[mu])));
        }
        return out;
    };
    PolyElement acc = AlgebraElement::zero(sys, order);
    for (GenIndex k = 1; k < sys->num_generators(); ++k) {
        PolyElement xk = AlgebraElement::generator(sys, k, order);
        acc += xk * (derivative(f, 0) * derivative(g, k) - derivative(f, k) * derivative(g, 0));
    }
    return acc;
}

}  // namespace kappa
