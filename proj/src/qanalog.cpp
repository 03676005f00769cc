#include "kappa/qanalog.hpp"

#include <sstream>

namespace kappa {

namespace {

const GaussianRational kI = GaussianRational::i();

Monomial mono1(std::size_t ngens, GenIndex g, int e = 1) {
    Monomial m(ngens);
    m.exp[g] = static_cast<std::uint8_t>(e);
    return m;
}

TermMap single_term(std::size_t ngens, GenIndex g, GaussianRational c) {
    TermMap t;
    t.emplace(mono1(ngens, g), HSeries::constant(std::move(c), 0));
    return t;
}

// Installs the common non-coordinate relations on a system whose generator
// layout is given through the index maps.
template <typename Pi0F, typename PiInvF, typename PF, typename MF, typename NF>
void install_q_hopf_block(const std::shared_ptr<GeneratorSystem>& sys, const Rational& kappa,
                          Pi0F pi0, PiInvF piinv, PF P, MF M, NF N) {
    std::size_t ng = sys->num_generators();
    sys->set_inverse_pair(pi0(), piinv());
    // [M_i, M_j] = i eps M_k ; [N_i, M_j] = i eps_ijk N_k ; [N_i, N_j] = -i eps M_k
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = 1; j <= 3; ++j) {
            if (j < i) {
                TermMap mm, nn;
                for (std::size_t k = 1; k <= 3; ++k) {
                    int eps = levi_civita(i, j, k);
                    if (eps == 0) continue;
                    mm.emplace(mono1(ng, M(k)), HSeries::constant(kI * GaussianRational(eps), 0));
                    nn.emplace(mono1(ng, M(k)), HSeries::constant(-kI * GaussianRational(eps), 0));
                }
                sys->set_straighten(M(i), M(j), std::move(mm));
                sys->set_straighten(N(i), N(j), std::move(nn));
            }
            TermMap nm;
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, j, k);
                if (eps != 0) nm.emplace(mono1(ng, N(k)), HSeries::constant(kI * GaussianRational(eps), 0));
            }
            if (!nm.empty()) sys->set_straighten(N(i), M(j), std::move(nm));
        }
    // [M_j, P_k] = i eps_jkl P_l
    for (std::size_t j = 1; j <= 3; ++j)
        for (std::size_t k = 1; k <= 3; ++k) {
            TermMap rem;
            for (std::size_t l = 1; l <= 3; ++l) {
                int eps = levi_civita(j, k, l);
                if (eps != 0) rem.emplace(mono1(ng, P(l)), HSeries::constant(kI * GaussianRational(eps), 0));
            }
            if (!rem.empty()) sys->set_straighten(M(j), P(k), std::move(rem));
        }
    // [N_i, P_j] = -(i/2) delta_ij (kappa (Pi0 - Pi0inv) + (1/kappa) vec P^2 Pi0inv)
    for (std::size_t i = 1; i <= 3; ++i) {
        TermMap rem;
        GaussianRational half_kappa = kI * GaussianRational(-kappa / 2);
        rem.emplace(mono1(ng, pi0()), HSeries::constant(half_kappa, 0));
        rem.emplace(mono1(ng, piinv()), HSeries::constant(-half_kappa, 0));
        for (std::size_t k = 1; k <= 3; ++k) {
            Monomial m(ng);
            m.exp[P(k)] = 2;
            m.exp[piinv()] = 1;
            rem.emplace(std::move(m), HSeries::constant(kI * GaussianRational(Rational(-1, 2) / kappa), 0));
        }
        sys->set_straighten(N(i), P(i), std::move(rem));
    }
    // [N_i, Pi0] = -(i/kappa) P_i ;  [N_i, Pi0inv] = (i/kappa) P_i Pi0inv^2
    for (std::size_t i = 1; i <= 3; ++i) {
        sys->set_straighten(N(i), pi0(),
                            single_term(ng, P(i), -kI * GaussianRational(Rational(1) / kappa)));
        TermMap rem;
        Monomial m(ng);
        m.exp[P(i)] = 1;
        m.exp[piinv()] = 2;
        rem.emplace(std::move(m), HSeries::constant(kI * GaussianRational(Rational(1) / kappa), 0));
        sys->set_straighten(N(i), piinv(), std::move(rem));
    }
}

}  // namespace

QAnalog build_presented(const Rational& kappa) {
    if (kappa == 0) throw std::invalid_argument("build_presented: kappa must be nonzero");
    QAnalog A;
    A.kappa = kappa;

    // full DSR system
    {
        std::vector<GeneratorInfo> gens;
        for (std::size_t mu = 0; mu < 4; ++mu) gens.push_back({"X" + std::to_string(mu)});
        gens.push_back({"Pi0"});
        gens.push_back({"Pi0inv"});
        for (std::size_t i = 1; i <= 3; ++i) gens.push_back({"P" + std::to_string(i)});
        for (std::size_t i = 1; i <= 3; ++i) gens.push_back({"M" + std::to_string(i)});
        for (std::size_t i = 1; i <= 3; ++i) gens.push_back({"N" + std::to_string(i)});
        auto sys = GeneratorSystem::create(std::move(gens), 0);
        sys->set_metric(minkowski_metric(4));
        QIndices qx;
        std::size_t ng = sys->num_generators();
        install_q_hopf_block(
            sys, kappa, [&] { return qx.Pi0(); }, [&] { return qx.Pi0inv(); },
            [&](std::size_t i) { return qx.P(i); }, [&](std::size_t i) { return qx.M(i); },
            [&](std::size_t i) { return qx.N(i); });
        // [X^0, X^i] = (i/kappa) X^i
        for (std::size_t i = 1; i <= 3; ++i)
            sys->set_straighten(qx.X(i), qx.X(0),
                                single_term(ng, qx.X(i), -kI * GaussianRational(Rational(1) / kappa)));
        // [Pi0, X^0] = -(i/kappa) Pi0 ; [Pi0inv, X^0] = (i/kappa) Pi0inv
        sys->set_straighten(qx.Pi0(), qx.X(0),
                            single_term(ng, qx.Pi0(), -kI * GaussianRational(Rational(1) / kappa)));
        sys->set_straighten(qx.Pi0inv(), qx.X(0),
                            single_term(ng, qx.Pi0inv(), kI * GaussianRational(Rational(1) / kappa)));
        // [P_k, X^j] = -i delta_jk Pi0 ; [P_k, X^0] = 0
        for (std::size_t k = 1; k <= 3; ++k)
            sys->set_straighten(qx.P(k), qx.X(k), single_term(ng, qx.Pi0(), -kI));
        // [M_i, X^j] = i eps_ijl X^l ; [M_i, X^0] = 0
        for (std::size_t i = 1; i <= 3; ++i)
            for (std::size_t j = 1; j <= 3; ++j) {
                TermMap rem;
                for (std::size_t l = 1; l <= 3; ++l) {
                    int eps = levi_civita(i, j, l);
                    if (eps != 0)
                        rem.emplace(mono1(ng, qx.X(l)), HSeries::constant(kI * GaussianRational(eps), 0));
                }
                if (!rem.empty()) sys->set_straighten(qx.M(i), qx.X(j), std::move(rem));
            }
        // [N_i, X^0] = i X^i + (i/kappa) N_i ; [N_i, X^j] = i delta_ij X^0 + (i/kappa) eps_ijl M_l
        for (std::size_t i = 1; i <= 3; ++i) {
            TermMap rem0;
            rem0.emplace(mono1(ng, qx.X(i)), HSeries::constant(kI, 0));
            rem0.emplace(mono1(ng, qx.N(i)), HSeries::constant(kI * GaussianRational(Rational(1) / kappa), 0));
            sys->set_straighten(qx.N(i), qx.X(0), std::move(rem0));
            for (std::size_t j = 1; j <= 3; ++j) {
                TermMap rem;
                if (i == j) rem.emplace(mono1(ng, qx.X(0)), HSeries::constant(kI, 0));
                for (std::size_t l = 1; l <= 3; ++l) {
                    int eps = levi_civita(i, j, l);
                    if (eps != 0)
                        rem.emplace(mono1(ng, qx.M(l)),
                                    HSeries::constant(kI * GaussianRational(eps * (Rational(1) / kappa)), 0));
                }
                if (!rem.empty()) sys->set_straighten(qx.N(i), qx.X(j), std::move(rem));
            }
        }
        A.dsr = sys;
    }

    // Hopf sector
    {
        std::vector<GeneratorInfo> gens;
        gens.push_back({"Pi0"});
        gens.push_back({"Pi0inv"});
        for (std::size_t i = 1; i <= 3; ++i) gens.push_back({"P" + std::to_string(i)});
        for (std::size_t i = 1; i <= 3; ++i) gens.push_back({"M" + std::to_string(i)});
        for (std::size_t i = 1; i <= 3; ++i) gens.push_back({"N" + std::to_string(i)});
        auto sys = GeneratorSystem::create(std::move(gens), 0);
        sys->set_metric(minkowski_metric(4));
        QHopfIndices hx;
        install_q_hopf_block(
            sys, kappa, [&] { return hx.Pi0(); }, [&] { return hx.Pi0inv(); },
            [&](std::size_t i) { return hx.P(i); }, [&](std::size_t i) { return hx.M(i); },
            [&](std::size_t i) { return hx.N(i); });
        A.hopf_sys = sys;
    }

    // Hopf tables on the sector
    {
        QHopfIndices hx;
        const SystemPtr& sys = A.hopf_sys;
        auto H = std::make_shared<HopfStructure>(sys, 0);
        auto one = AlgebraElement::one(sys, 0);
        auto gen = [&](GenIndex g) { return AlgebraElement::generator(sys, g, 0); };
        AlgebraElement pi0 = gen(hx.Pi0()), piinv = gen(hx.Pi0inv());
        GaussianRational inv_kappa(Rational(1) / kappa);

        H->set_coproduct(hx.Pi0(), TensorElement::outer(pi0, pi0));
        H->set_antipode(hx.Pi0(), piinv);
        H->set_counit(hx.Pi0(), GaussianRational(1));
        H->set_coproduct(hx.Pi0inv(), TensorElement::outer(piinv, piinv));
        H->set_antipode(hx.Pi0inv(), pi0);
        H->set_counit(hx.Pi0inv(), GaussianRational(1));

        for (std::size_t i = 1; i <= 3; ++i) {
            H->set_primitive(hx.M(i));
            H->set_coproduct(hx.P(i),
                             TensorElement::outer(gen(hx.P(i)), pi0) + TensorElement::outer(one, gen(hx.P(i))));
            H->set_antipode(hx.P(i), -(gen(hx.P(i)) * piinv));
            H->set_counit(hx.P(i), GaussianRational(0));

            TensorElement d = TensorElement::outer(gen(hx.N(i)), one) +
                              TensorElement::outer(piinv, gen(hx.N(i)));
            AlgebraElement s = -(pi0 * gen(hx.N(i)));
            for (std::size_t j = 1; j <= 3; ++j)
                for (std::size_t m = 1; m <= 3; ++m) {
                    int eps = levi_civita(i, j, m);
                    if (eps == 0) continue;
                    d -= TensorElement::outer(gen(hx.P(j)) * piinv, gen(hx.M(m)))
                             .scaled(GaussianRational(eps) * inv_kappa);
                    s -= (gen(hx.P(j)) * gen(hx.M(m))).scaled(GaussianRational(eps) * inv_kappa);
                }
            H->set_coproduct(hx.N(i), std::move(d));
            H->set_antipode(hx.N(i), std::move(s));
            H->set_counit(hx.N(i), GaussianRational(0));
        }
        A.hopf = H;
    }
    return A;
}

AlgebraElement q_normal_form(const QAnalog& A, const Word& w) {
    return AlgebraElement::from_word(A.dsr, w, 0);
}

std::vector<RelationResult> check_q_confluence(const QAnalog& A) {
    std::vector<RelationResult> out = check_pbw_confluence(A.dsr);
    std::vector<RelationResult> hopf = check_pbw_confluence(A.hopf_sys);
    out.insert(out.end(), hopf.begin(), hopf.end());
    return out;
}

std::vector<RelationResult> check_q_hopf(const QAnalog& A) {
    std::vector<RelationResult> out = check_hopf_axioms(*A.hopf);
    // group-likeness: Delta(Pi0) Delta(Pi0inv) = 1 (x) 1
    QHopfIndices hx;
    TensorElement prod = A.hopf->coproduct_table(hx.Pi0()) * A.hopf->coproduct_table(hx.Pi0inv());
    TensorElement res = prod - TensorElement::unit(A.hopf_sys, 2, 0);
    RelationResult r;
    r.name = "grouplike(Pi0)";
    r.ok = res.is_zero();
    r.effective_order = 0;
    if (!r.ok) r.residual = res.str();
    out.push_back(std::move(r));
    return out;
}

HopfAction make_q_classical_action(const QAnalog& A) {
    auto module_sys = make_an(4, 0, HSeries::constant(GaussianRational(Rational(1) / A.kappa), 0));
    QHopfIndices hx;
    HopfAction act(A.hopf, module_sys);
    auto X = [&](std::size_t mu) {
        return AlgebraElement::generator(module_sys, static_cast<GenIndex>(mu), 0);
    };
    AlgebraElement zero = AlgebraElement::zero(module_sys, 0);
    GaussianRational ik(Rational(1) / A.kappa);
    // P_i > X^nu = -i delta_i^nu
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t nu = 0; nu < 4; ++nu)
            act.set_action(hx.P(i), static_cast<GenIndex>(nu),
                           i == nu ? AlgebraElement::scalar(module_sys, -kI, 0) : zero);
    // Pi0^{+-1} > X^mu = X^mu -+ i kappa^{-1} delta^mu_0
    for (std::size_t mu = 0; mu < 4; ++mu) {
        act.set_action(hx.Pi0(), static_cast<GenIndex>(mu),
                       mu == 0 ? X(0) - AlgebraElement::scalar(module_sys, kI * ik, 0) : X(mu));
        act.set_action(hx.Pi0inv(), static_cast<GenIndex>(mu),
                       mu == 0 ? X(0) + AlgebraElement::scalar(module_sys, kI * ik, 0) : X(mu));
    }
    // M_i > X^rho = i eps_{i rho k} X^k, 0 on X^0 ; N_i > X^0 = i X^i, N_i > X^j = i delta_ij X^0
    for (std::size_t i = 1; i <= 3; ++i) {
        act.set_action(hx.M(i), 0, zero);
        for (std::size_t rho = 1; rho <= 3; ++rho) {
            AlgebraElement v = zero;
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, rho, k);
                if (eps != 0) v += X(k).scaled(kI * GaussianRational(eps));
            }
            act.set_action(hx.M(i), static_cast<GenIndex>(rho), v);
        }
        act.set_action(hx.N(i), 0, X(i).scaled(kI));
        for (std::size_t j = 1; j <= 3; ++j)
            act.set_action(hx.N(i), static_cast<GenIndex>(j), i == j ? X(0).scaled(kI) : zero);
    }
    return act;
}

bool QSmashReport::ok() const {
    for (const auto& r : covariance)
        if (!r.ok) return false;
    for (const auto& r : cross)
        if (!r.ok) return false;
    return true;
}

QSmashReport check_q_smash(const QAnalog& A) {
    QSmashReport rep;
    HopfAction act = make_q_classical_action(A);
    rep.covariance = check_covariance(act, module_relations_of(act.module_system(), 0));

    SmashSystem S = build_smash_system(*A.hopf, act);
    auto cross = smash_cross_relations(S, *A.hopf, act);
    // compare against the canonical DSR table held by A.dsr
    QIndices qx;
    QHopfIndices hx;
    auto to_dsr = [&](GenIndex hopf_gen) -> GenIndex {
        return static_cast<GenIndex>(hopf_gen + 4);  // hopf sector sits after the X block
    };
    for (const auto& c : cross) {
        AlgebraElement expected = commutator(
            AlgebraElement::generator(A.dsr, to_dsr(c.hopf_gen), 0),
            AlgebraElement::generator(A.dsr, qx.X(c.module_gen), 0));
        // remap the combined-system element onto the dsr layout: module gens 0..3
        // then hopf gens shifted by 4 (identical layout), so terms transfer 1:1
        AlgebraElement got(A.dsr, 0);
        for (const auto& [m, coeff] : c.value.terms()) {
            Monomial key(A.dsr->num_generators());
            for (GenIndex g = 0; g < m.exp.size(); ++g) key.exp[g] = m.exp[g];
            got.add_term(key, coeff);
        }
        AlgebraElement residual = got - expected;
        RelationResult r;
        r.name = "cross " + c.name;
        r.ok = residual.is_zero();
        r.effective_order = 0;
        if (!r.ok) r.residual = residual.str();
        rep.cross.push_back(std::move(r));
    }
    return rep;
}

std::vector<RelationResult> rescaling_isomorphism(const QAnalog& A, const QAnalog& B,
                                                  bool rescale_X) {
    QIndices qx;
    std::size_t ng = A.dsr->num_generators();
    std::vector<GaussianRational> scale(ng, GaussianRational(1));
    for (std::size_t i = 1; i <= 3; ++i) scale[qx.P(i)] = GaussianRational(A.kappa / B.kappa);
    if (rescale_X)
        for (std::size_t mu = 0; mu < 4; ++mu) scale[qx.X(mu)] = GaussianRational(B.kappa / A.kappa);

    auto phi = [&](const AlgebraElement& e) {
        AlgebraElement out(B.dsr, 0);
        for (const auto& [m, c] : e.terms()) {
            GaussianRational f(1);
            for (GenIndex g = 0; g < m.exp.size(); ++g)
                for (int k = 0; k < m.exp[g]; ++k) f *= scale[g];
            out.add_term(m, c * f);
        }
        return out;
    };

    std::vector<RelationResult> out;
    for (GenIndex j = 0; j < ng; ++j)
        for (GenIndex i = 0; i < j; ++i) {
            AlgebraElement lhs_A = commutator(AlgebraElement::generator(A.dsr, j, 0),
                                              AlgebraElement::generator(A.dsr, i, 0));
            AlgebraElement lhs_B = commutator(AlgebraElement::generator(B.dsr, j, 0),
                                              AlgebraElement::generator(B.dsr, i, 0))
                                       .scaled(scale[j] * scale[i]);
            AlgebraElement residual = lhs_B - phi(lhs_A);
            RelationResult r;
            r.name = "rescale[" + A.dsr->generator(j).name + "," + A.dsr->generator(i).name + "]";
            r.ok = residual.is_zero();
            r.effective_order = 0;
            if (!r.ok) r.residual = residual.str();
            out.push_back(std::move(r));
        }
    return out;
}

// ---------------------------------------------------------------------------
// localized calculus

QPoly QPoly::constant(GaussianRational c) {
    QPoly p;
    if (!c.is_zero()) p.terms_.emplace(Key{0, 0, 0, 0}, std::move(c));
    return p;
}

QPoly QPoly::variable(int k, int power) {
    QPoly p;
    Key key{0, 0, 0, 0};
    key[static_cast<std::size_t>(k)] = power;
    p.terms_.emplace(key, GaussianRational(1));
    return p;
}

void QPoly::add(const Key& k, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

QPoly QPoly::operator-() const {
    QPoly p = *this;
    for (auto& [k, c] : p.terms_) c = -c;
    return p;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    QPoly p = a;
    for (const auto& [k, c] : b.terms_) p.add(k, c);
    return p;
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
    QPoly p;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            QPoly::Key k = ka;
            for (std::size_t i = 0; i < 4; ++i) k[i] += kb[i];
            p.add(k, ca * cb);
        }
    return p;
}

QPoly QPoly::derivative(int k) const {
    QPoly p;
    auto idx = static_cast<std::size_t>(k);
    for (const auto& [key, c] : terms_) {
        if (key[idx] == 0) continue;
        Key d = key;
        d[idx] -= 1;
        p.add(d, c * GaussianRational(Rational(key[idx])));
    }
    return p;
}

std::string QPoly::str() const {
    if (terms_.empty()) return "0";
    static const char* names[4] = {"P1", "P2", "P3", "Pi0"};
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(c) << ")";
        for (std::size_t i = 0; i < 4; ++i) {
            if (k[i] == 0) continue;
            os << " " << names[i];
            if (k[i] != 1) os << "^" << k[i];
        }
    }
    return os.str();
}

QRat::QRat(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("QRat: vanishing denominator encountered");
    if (num_.is_zero()) {
        den_ = QPoly::constant(GaussianRational(1));
        return;
    }
    // strip the common monomial content to keep fractions small
    QPoly::Key shift{};
    bool init = false;
    for (const auto* poly : {&num_, &den_})
        for (const auto& [k, c] : poly->terms()) {
            (void)c;
            if (!init) {
                shift = k;
                init = true;
            } else {
                for (std::size_t i = 0; i < 4; ++i) shift[i] = std::min(shift[i], k[i]);
            }
        }
    bool nontrivial = false;
    for (std::size_t i = 0; i < 4; ++i) nontrivial |= shift[i] != 0;
    if (nontrivial) {
        QPoly n2, d2;
        for (const auto& [k, c] : num_.terms()) {
            QPoly::Key k2 = k;
            for (std::size_t i = 0; i < 4; ++i) k2[i] -= shift[i];
            n2.add(k2, c);
        }
        for (const auto& [k, c] : den_.terms()) {
            QPoly::Key k2 = k;
            for (std::size_t i = 0; i < 4; ++i) k2[i] -= shift[i];
            d2.add(k2, c);
        }
        num_ = std::move(n2);
        den_ = std::move(d2);
    }
    // normalize the leading denominator coefficient to 1
    const GaussianRational& lead = den_.terms().begin()->second;
    if (!(lead == GaussianRational(1))) {
        GaussianRational inv = lead.inverse();
        QPoly n2, d2;
        for (const auto& [k, c] : num_.terms()) n2.add(k, c * inv);
        for (const auto& [k, c] : den_.terms()) d2.add(k, c * inv);
        num_ = std::move(n2);
        den_ = std::move(d2);
    }
}

QRat QRat::operator-() const {
    QRat r = *this;
    r.num_ = -r.num_;
    return r;
}

QRat operator+(const QRat& a, const QRat& b) {
    if (a.den_ == b.den_) return QRat(a.num_ + b.num_, a.den_);
    return QRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QRat operator-(const QRat& a, const QRat& b) { return a + (-b); }

QRat operator*(const QRat& a, const QRat& b) { return QRat(a.num_ * b.num_, a.den_ * b.den_); }

QRat QRat::inverse() const {
    if (num_.is_zero()) throw std::domain_error("QRat: division by zero");
    return QRat(den_, num_);
}

bool QRat::operator==(const QRat& o) const { return (num_ * o.den_ - o.num_ * den_).is_zero(); }

QRat QRat::derivative(int k) const {
    // (n/d)' = (n' d - n d') / d^2
    return QRat(num_.derivative(k) * den_ - num_ * den_.derivative(k), den_ * den_);
}

std::string QRat::str() const {
    std::string s = num_.str();
    QPoly one = QPoly::constant(GaussianRational(1));
    if (!(den_ == one)) s = "(" + s + ") / (" + den_.str() + ")";
    return s;
}

LocalizedElement LocalizedElement::function(const Rational& kappa, QRat f) {
    LocalizedElement e(kappa);
    e.add(XKey{0, 0, 0, 0}, f);
    return e;
}

LocalizedElement LocalizedElement::coordinate(const Rational& kappa, std::size_t mu, QRat f) {
    LocalizedElement e(kappa);
    XKey k{0, 0, 0, 0};
    k[mu] = 1;
    e.add(k, f);
    return e;
}

void LocalizedElement::add(const XKey& k, const QRat& f) {
    if (f.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, f);
    } else {
        it->second = it->second + f;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LocalizedElement LocalizedElement::operator-() const {
    LocalizedElement e = *this;
    for (auto& [k, f] : e.terms_) f = -f;
    return e;
}

LocalizedElement operator+(const LocalizedElement& a, const LocalizedElement& b) {
    LocalizedElement e = a;
    for (const auto& [k, f] : b.terms_) e.add(k, f);
    return e;
}

LocalizedElement operator-(const LocalizedElement& a, const LocalizedElement& b) { return a + (-b); }

namespace {

// [X_a, f]: a = 0 gives (i/kappa) Pi0 df/dPi0, a = j gives i Pi0 df/dP_j.
QRat localized_bracket(const Rational& kappa, std::size_t a, const QRat& f) {
    QRat pi0 = QRat::poly(QPoly::variable(3));
    if (a == 0)
        return QRat::constant(kI * GaussianRational(Rational(1) / kappa)) * pi0 * f.derivative(3);
    return QRat::constant(kI) * pi0 * f.derivative(static_cast<int>(a) - 1);
}

// X_a * (X-monomial) with the an^3 straightening [X^0, X^i] = (i/kappa) X^i.
LocalizedElement x_left_mul(const Rational& kappa, std::size_t a, const LocalizedElement::XKey& m,
                            const QRat& coeff);

LocalizedElement x_prepend_word(const Rational& kappa, const std::vector<std::size_t>& word,
                                const LocalizedElement& e) {
    LocalizedElement cur = e;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        LocalizedElement next = LocalizedElement::zero(kappa);
        for (const auto& [m, f] : cur.terms()) {
            LocalizedElement part = x_left_mul(kappa, *it, m, f);
            next = next + part;
        }
        cur = next;
    }
    return cur;
}

LocalizedElement x_left_mul(const Rational& kappa, std::size_t a, const LocalizedElement::XKey& m,
                            const QRat& coeff) {
    LocalizedElement out = LocalizedElement::zero(kappa);
    // find first coordinate present
    std::size_t first = 0;
    while (first < 4 && m[first] == 0) ++first;
    if (first >= 4 || a <= first) {
        LocalizedElement::XKey k = m;
        k[a] = static_cast<std::uint8_t>(k[a] + 1);
        out.add(k, coeff);
        return out;
    }
    LocalizedElement::XKey rest = m;
    rest[first] = static_cast<std::uint8_t>(rest[first] - 1);
    // X^a X^first rest = X^first (X^a rest) - (i/kappa) delta_{first,0} X^a rest
    LocalizedElement inner = x_left_mul(kappa, a, rest, coeff);
    for (const auto& [k, f] : inner.terms()) {
        LocalizedElement lifted = x_left_mul(kappa, first, k, f);
        out = out + lifted;
    }
    if (first == 0) {
        LocalizedElement corr = x_left_mul(
            kappa, a, rest, coeff * QRat::constant(-kI * GaussianRational(Rational(1) / kappa)));
        out = out + corr;
    }
    return out;
}

}  // namespace

LocalizedElement operator*(const LocalizedElement& a, const LocalizedElement& b) {
    const Rational& kappa = a.kappa();
    LocalizedElement out = LocalizedElement::zero(kappa);
    for (const auto& [ma, fa] : a.terms()) {
        for (const auto& [mb, gb] : b.terms()) {
            // (X^A fa)(X^B gb) = X^A (fa X^B) gb: push fa through the letters of B
            // fa * X_w = X_w fa - corrections: process one letter at a time.
            // Represent as localized element with function coefficients.
            std::vector<std::size_t> wb;
            for (std::size_t mu = 0; mu < 4; ++mu)
                for (int k = 0; k < mb[mu]; ++k) wb.push_back(mu);
            // push(f, word): f * X_word = sum X^C f_C
            // implemented recursively below
            struct Pusher {
                const Rational& kappa;
                LocalizedElement run(const QRat& f, const std::vector<std::size_t>& word,
                                     std::size_t pos) {
                    if (pos == word.size()) {
                        LocalizedElement e = LocalizedElement::function(kappa, f);
                        return e;
                    }
                    std::size_t agen = word[pos];
                    // f X_a = X_a f - [X_a, f]
                    LocalizedElement main = run(f, word, pos + 1);
                    LocalizedElement lifted = x_prepend_word(kappa, {agen}, main);
                    QRat br = localized_bracket(kappa, agen, f);
                    if (!br.is_zero()) lifted = lifted - run(br, word, pos + 1);
                    return lifted;
                }
            } pusher{kappa};
            LocalizedElement mid = pusher.run(fa, wb, 0);
            // multiply by gb on the right (functions commute) and prepend X^A
            LocalizedElement mid2 = LocalizedElement::zero(kappa);
            for (const auto& [k, f] : mid.terms()) mid2.add(k, f * gb);
            std::vector<std::size_t> wa;
            for (std::size_t mu = 0; mu < 4; ++mu)
                for (int k = 0; k < ma[mu]; ++k) wa.push_back(mu);
            out = out + x_prepend_word(kappa, wa, mid2);
        }
    }
    return out;
}

LocalizedElement localized_commutator(const LocalizedElement& a, const LocalizedElement& b) {
    return a * b - b * a;
}

std::string LocalizedElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, f] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool anyx = false;
        for (std::size_t mu = 0; mu < 4; ++mu) {
            if (k[mu] == 0) continue;
            if (anyx) os << " ";
            anyx = true;
            os << "X" << mu;
            if (k[mu] > 1) os << "^" << static_cast<int>(k[mu]);
        }
        if (anyx) os << " . ";
        os << "[" << f.str() << "]";
    }
    return os.str();
}

std::vector<RelationResult> localized_checks(const Rational& kappa) {
    std::vector<RelationResult> out;
    auto push = [&out](const std::string& name, const LocalizedElement& residual) {
        RelationResult r;
        r.name = name;
        r.ok = residual.is_zero();
        r.effective_order = 0;
        if (!r.ok) r.residual = residual.str();
        out.push_back(std::move(r));
    };
    GaussianRational ik(Rational(1) / kappa);

    QPoly P[4] = {QPoly(), QPoly::variable(0), QPoly::variable(1), QPoly::variable(2)};
    QPoly pi0 = QPoly::variable(3);
    QPoly piinv = QPoly::variable(3, -1);
    QPoly one_p = QPoly::constant(GaussianRational(1));
    QPoly vecP2;
    for (int k = 1; k <= 3; ++k) vecP2 = vecP2 + P[k] * P[k];
    // u = 1 - kappa^{-2} vec P^2, A = Pi0 + Pi0^{-1} u, B = Pi0^2 + u
    QPoly u = one_p - vecP2 * QPoly::constant(GaussianRational(Rational(1) / (kappa * kappa)));
    QPoly Apol = pi0 + piinv * u;
    QPoly Bpol = pi0 * pi0 + u;

    auto fn = [&](const QPoly& p) { return LocalizedElement::function(kappa, QRat::poly(p)); };
    auto coord = [&](std::size_t mu, QRat f) { return LocalizedElement::coordinate(kappa, mu, std::move(f)); };

    // Lorentz realization (relation-suite-validated form):
    // M_i = eps_{ijk} X^j Pi0^{-1} P_k
    // N_i = -X^0 P_i Pi0^{-1} - (kappa/2) X^i (1 - Pi0^{-2} u)
    LocalizedElement M[4] = {LocalizedElement::zero(kappa), LocalizedElement::zero(kappa),
                             LocalizedElement::zero(kappa), LocalizedElement::zero(kappa)};
    LocalizedElement Nb[4] = {LocalizedElement::zero(kappa), LocalizedElement::zero(kappa),
                              LocalizedElement::zero(kappa), LocalizedElement::zero(kappa)};
    QPoly w = one_p - piinv * piinv * u;  // 1 - Pi0^{-2} u
    for (std::size_t i = 1; i <= 3; ++i) {
        for (std::size_t j = 1; j <= 3; ++j)
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, j, k);
                if (eps != 0)
                    M[i] = M[i] + coord(j, QRat::poly(piinv * P[k] *
                                                      QPoly::constant(GaussianRational(eps))));
            }
        Nb[i] = coord(0, QRat::poly(-(P[i] * piinv))) +
                coord(i, QRat::poly(w * QPoly::constant(GaussianRational(-kappa / 2))));
    }
    LocalizedElement X[4] = {coord(0, QRat::constant(GaussianRational(1))),
                             coord(1, QRat::constant(GaussianRational(1))),
                             coord(2, QRat::constant(GaussianRational(1))),
                             coord(3, QRat::constant(GaussianRational(1)))};

    // (L1)
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = 1; j <= 3; ++j) {
            LocalizedElement mm = LocalizedElement::zero(kappa), mn = mm, nn = mm;
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, j, k);
                if (eps == 0) continue;
                GaussianRational c = kI * GaussianRational(eps);
                for (const auto& [key, f] : M[k].terms()) mm.add(key, f * QRat::constant(c));
                for (const auto& [key, f] : Nb[k].terms()) mn.add(key, f * QRat::constant(c));
                for (const auto& [key, f] : M[k].terms()) nn.add(key, f * QRat::constant(-c));
            }
            push("q[M" + std::to_string(i) + ",M" + std::to_string(j) + "]",
                 localized_commutator(M[i], M[j]) - mm);
            push("q[M" + std::to_string(i) + ",N" + std::to_string(j) + "]",
                 localized_commutator(M[i], Nb[j]) - mn);
            push("q[N" + std::to_string(i) + ",N" + std::to_string(j) + "]",
                 localized_commutator(Nb[i], Nb[j]) - nn);
        }
    // (11alg): [N_i, P_j] and [N_i, Pi0], [M_j, P_k], [M_j, Pi0]
    for (std::size_t i = 1; i <= 3; ++i) {
        for (std::size_t j = 1; j <= 3; ++j) {
            LocalizedElement target = LocalizedElement::zero(kappa);
            if (i == j) {
                QPoly t = (pi0 - piinv) * QPoly::constant(GaussianRational(kappa)) +
                          vecP2 * piinv * QPoly::constant(GaussianRational(Rational(1) / kappa));
                target = fn(t);
                LocalizedElement scaled = LocalizedElement::zero(kappa);
                for (const auto& [key, f] : target.terms())
                    scaled.add(key, f * QRat::constant(-kI * GaussianRational(Rational(1, 2))));
                target = scaled;
            }
            push("q[N" + std::to_string(i) + ",P" + std::to_string(j) + "]",
                 localized_commutator(Nb[i], fn(P[j])) - target);
        }
        LocalizedElement t0 = LocalizedElement::zero(kappa);
        t0.add({0, 0, 0, 0}, QRat::poly(P[i] * QPoly::constant(-kI * ik)));
        push("q[N" + std::to_string(i) + ",Pi0]", localized_commutator(Nb[i], fn(pi0)) - t0);
    }
    for (std::size_t j = 1; j <= 3; ++j) {
        for (std::size_t k = 1; k <= 3; ++k) {
            LocalizedElement target = LocalizedElement::zero(kappa);
            for (std::size_t l = 1; l <= 3; ++l) {
                int eps = levi_civita(j, k, l);
                if (eps != 0) target.add({0, 0, 0, 0}, QRat::poly(P[l] * QPoly::constant(kI * GaussianRational(eps))));
            }
            push("q[M" + std::to_string(j) + ",P" + std::to_string(k) + "]",
                 localized_commutator(M[j], fn(P[k])) - target);
        }
        push("q[M" + std::to_string(j) + ",Pi0]", localized_commutator(M[j], fn(pi0)));
    }
    // (phsp1) against the coordinates
    for (std::size_t i = 1; i <= 3; ++i) {
        // [M_i, X^0] = 0 ; [M_i, X^j] = i eps X^l ; [N_i, X^0] = i X^i + (i/kappa) N_i
        push("q[M" + std::to_string(i) + ",X0]", localized_commutator(M[i], X[0]));
        for (std::size_t j = 1; j <= 3; ++j) {
            LocalizedElement target = LocalizedElement::zero(kappa);
            for (std::size_t l = 1; l <= 3; ++l) {
                int eps = levi_civita(i, j, l);
                if (eps != 0) target = target + coord(l, QRat::constant(kI * GaussianRational(eps)));
            }
            push("q[M" + std::to_string(i) + ",X" + std::to_string(j) + "]",
                 localized_commutator(M[i], X[j]) - target);
        }
        LocalizedElement tN0 = coord(i, QRat::constant(kI));
        for (const auto& [key, f] : Nb[i].terms()) tN0.add(key, f * QRat::constant(kI * ik));
        push("q[N" + std::to_string(i) + ",X0]", localized_commutator(Nb[i], X[0]) - tN0);
        for (std::size_t j = 1; j <= 3; ++j) {
            LocalizedElement target = LocalizedElement::zero(kappa);
            if (i == j) target = coord(0, QRat::constant(kI));
            for (std::size_t l = 1; l <= 3; ++l) {
                int eps = levi_civita(i, j, l);
                if (eps == 0) continue;
                for (const auto& [key, f] : M[l].terms())
                    target.add(key, f * QRat::constant(kI * ik * GaussianRational(eps)));
            }
            push("q[N" + std::to_string(i) + ",X" + std::to_string(j) + "]",
                 localized_commutator(Nb[i], X[j]) - target);
        }
    }
    // Casimir centrality and its bracket with the coordinates
    QPoly Ck = (pi0 + piinv - one_p - one_p) * QPoly::constant(GaussianRational(kappa * kappa)) -
               vecP2 * piinv;
    LocalizedElement C = fn(Ck);
    for (std::size_t i = 1; i <= 3; ++i) {
        push("q[C,M" + std::to_string(i) + "]", localized_commutator(C, M[i]));
        push("q[C,N" + std::to_string(i) + "]", localized_commutator(C, Nb[i]));
        push("q[C,P" + std::to_string(i) + "]", localized_commutator(C, fn(P[i])));
    }
    push("q[C,Pi0]", localized_commutator(C, fn(pi0)));
    // [C, X^j] = 2i P_j ; [C, X^0] = -2i p0_embedded
    QPoly p0emb = (pi0 - piinv * u) * QPoly::constant(GaussianRational(kappa / 2));
    for (std::size_t j = 1; j <= 3; ++j)
        push("q[C,X" + std::to_string(j) + "]=2iP" + std::to_string(j),
             localized_commutator(C, X[j]) - fn(P[j] * QPoly::constant(GaussianRational(2) * kI)));
    push("q[C,X0]=-2i.p0emb",
         localized_commutator(C, X[0]) - fn(p0emb * QPoly::constant(GaussianRational(-2) * kI)));

    // Weyl embedding satisfies the canonical commutation relations. The sign
    // of the X^0 piece of x^i is fixed by [p_0, x^i] = 0 (the commonly printed
    // +2/kappa variant leaves a -2i P_i Pi0^{-1}/kappa defect).
    GaussianRational m2k = GaussianRational(-2) * GaussianRational(Rational(1) / kappa);
    LocalizedElement x[4] = {
        coord(0, QRat(QPoly::constant(GaussianRational(2)), Apol)),
        coord(1, QRat::poly(piinv)) + coord(0, QRat(P[1] * QPoly::constant(m2k), Bpol)),
        coord(2, QRat::poly(piinv)) + coord(0, QRat(P[2] * QPoly::constant(m2k), Bpol)),
        coord(3, QRat::poly(piinv)) + coord(0, QRat(P[3] * QPoly::constant(m2k), Bpol))};
    LocalizedElement p[4] = {fn(p0emb), fn(P[1]), fn(P[2]), fn(P[3])};
    const Rational eta[4] = {Rational(-1), Rational(1), Rational(1), Rational(1)};
    for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = 0; nu < 4; ++nu) {
            // [p_mu, x_nu] = -i eta_{mu nu}: with stored upper-index x^nu this is
            // [p_mu, x^nu] = -i delta_mu^nu
            LocalizedElement target = LocalizedElement::zero(kappa);
            if (mu == nu) target.add({0, 0, 0, 0}, QRat::constant(-kI));
            push("weyl[p" + std::to_string(mu) + ",x" + std::to_string(nu) + "]",
                 localized_commutator(p[mu], x[nu]) - target);
        }
    for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = 0; nu < mu; ++nu)
            push("weyl[x" + std::to_string(mu) + ",x" + std::to_string(nu) + "]",
                 localized_commutator(x[mu], x[nu]));
    return out;
}

}  // namespace kappa
