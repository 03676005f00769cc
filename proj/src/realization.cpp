#include "kappa/realization.hpp"

namespace kappa {

namespace {
const GaussianRational kI = GaussianRational::i();

AlgebraElement weyl_x(const SystemPtr& weyl, std::size_t mu, int order) {
    return AlgebraElement::generator(weyl, WeylIndices{4}.x(mu), order);
}
AlgebraElement weyl_p(const SystemPtr& weyl, std::size_t mu, int order) {
    return AlgebraElement::generator(weyl, WeylIndices{4}.p(mu), order);
}

AlgebraElement vec_p2(const SystemPtr& weyl, int order) {
    AlgebraElement acc = AlgebraElement::zero(weyl, order);
    for (std::size_t k = 1; k <= 3; ++k) acc += weyl_p(weyl, k, order) * weyl_p(weyl, k, order);
    return acc;
}

AlgebraElement p_squared(const SystemPtr& weyl, int order) {
    return vec_p2(weyl, order) - weyl_p(weyl, 0, order) * weyl_p(weyl, 0, order);
}

}  // namespace

RealizationParams RealizationParams::make(TaylorSeries psi, TaylorSeries gamma, int order) {
    auto [Psi, Gamma] = build_psi_gamma(psi, gamma, order);
    return {psi.truncated(order), gamma.truncated(order), std::move(Psi), std::move(Gamma), order};
}

AlgebraElement tilde(const TaylorSeries& f, const SystemPtr& weyl, int order) {
    AlgebraElement p0 = weyl_p(weyl, 0, order);
    AlgebraElement acc = AlgebraElement::zero(weyl, order);
    AlgebraElement p0pow = AlgebraElement::one(weyl, order);
    for (int n = 0; n <= std::min(order, f.order()); ++n) {
        if (n > 0) p0pow = p0pow * p0;
        Rational c = f.coeff(n);
        if (c == 0) continue;
        GaussianRational cc(n % 2 == 0 ? c : -c);
        acc += p0pow.scaled(cc).shifted(n).truncated(order);
    }
    return acc;
}

AlgebraElement DsrGenerators::X_lower(std::size_t mu) const {
    return mu == 0 ? -X[0] : X[mu];
}

AlgebraElement DsrGenerators::M_cov(std::size_t mu, std::size_t nu) const {
    if (mu == nu) return AlgebraElement::zero(weyl, order);
    if (mu == 0) return Nb[nu - 1];
    if (nu == 0) return -Nb[mu - 1];
    AlgebraElement acc = AlgebraElement::zero(weyl, order);
    for (std::size_t l = 1; l <= 3; ++l) {
        int eps = levi_civita(mu, nu, l);
        if (eps != 0) acc += M[l - 1].scaled(GaussianRational(eps));
    }
    return acc;
}

DsrGenerators build_noncovariant(const RealizationParams& params, const SystemPtr& weyl) {
    int order = params.order;
    DsrGenerators g;
    g.weyl = weyl;
    g.order = order;
    g.effective_order = order - 2;  // the Casimir carries an h^{-2} difference

    AlgebraElement psi_t = tilde(params.psi, weyl, order);
    AlgebraElement gamma_t = tilde(params.gamma, weyl, order);
    AlgebraElement Psi_t = tilde(params.Psi, weyl, order);
    AlgebraElement Gamma_t = tilde(params.Gamma, weyl, order);
    AlgebraElement Psi_inv = Psi_t.invert();
    AlgebraElement Gamma_inv = Gamma_t.invert();

    // X^i = x^i Gamma~ Psi~^{-1},  X^0 = x^0 psi~ - h x^k p_k gamma~
    AlgebraElement GPsi = Gamma_t * Psi_inv;
    g.X.resize(4);
    g.P.resize(4);
    AlgebraElement xkpk = AlgebraElement::zero(weyl, order);
    for (std::size_t k = 1; k <= 3; ++k) xkpk += weyl_x(weyl, k, order) * weyl_p(weyl, k, order);
    g.X[0] = weyl_x(weyl, 0, order) * psi_t - (xkpk * gamma_t).shifted(1).truncated(order);
    for (std::size_t i = 1; i <= 3; ++i) g.X[i] = weyl_x(weyl, i, order) * GPsi;

    // P_i = p_i Gamma~^{-1},  P_0 = (Psi~^{-1} - Psi~)/(2h) + (h/2) vec p^2 Psi~ Gamma~^{-2}
    for (std::size_t i = 1; i <= 3; ++i) g.P[i] = weyl_p(weyl, i, order) * Gamma_inv;
    AlgebraElement diff = (Psi_inv - Psi_t).scaled(GaussianRational(Rational(1, 2)));
    AlgebraElement principal = diff.shifted(-1);
    if (!principal.is_regular())
        throw std::domain_error("build_noncovariant: h^{-1} principal part failed to cancel in P_0");
    g.P[0] = principal +
             (vec_p2(weyl, order) * Psi_t * Gamma_inv * Gamma_inv)
                 .scaled(GaussianRational(Rational(1, 2)))
                 .shifted(1)
                 .truncated(principal.order());

    // M_i = eps_{ijk} x_j p_k  (no i prefactor; the form that satisfies [M_i, M_j] = i eps M_k)
    g.M.resize(3);
    for (std::size_t i = 1; i <= 3; ++i) {
        AlgebraElement acc = AlgebraElement::zero(weyl, order);
        for (std::size_t j = 1; j <= 3; ++j)
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, j, k);
                if (eps != 0)
                    acc += (weyl_x(weyl, j, order) * weyl_p(weyl, k, order)).scaled(GaussianRational(eps));
            }
        g.M[i - 1] = std::move(acc);
    }

    // N_i = (X_0 P_i - X_i P_0) Psi~  (classical limit x_0 p_i - x_i p_0)
    g.Nb.resize(3);
    for (std::size_t i = 1; i <= 3; ++i)
        g.Nb[i - 1] = (g.X_lower(0) * g.P[i] - g.X[i] * g.P[0]) * Psi_t;

    // C = h^{-2}(Psi~^{-1} + Psi~ - 2) - vec p^2 Psi~ Gamma~^{-2}
    AlgebraElement csum = Psi_inv + Psi_t - AlgebraElement::scalar(weyl, GaussianRational(2), order);
    AlgebraElement cprincipal = csum.shifted(-2);
    if (!cprincipal.is_regular())
        throw std::domain_error("build_noncovariant: h^{-2} principal part failed to cancel in C");
    g.C = cprincipal - (vec_p2(weyl, order) * Psi_t * Gamma_inv * Gamma_inv).truncated(cprincipal.order());
    return g;
}

DsrGenerators build_covariant(const SystemPtr& weyl, int order) {
    DsrGenerators g;
    g.weyl = weyl;
    g.order = order;
    g.effective_order = order - 2;

    AlgebraElement one = AlgebraElement::one(weyl, order);
    AlgebraElement p2 = p_squared(weyl, order);
    AlgebraElement sqrt_term = (one - p2.shifted(2).truncated(order)).pow(Rational(1, 2));
    AlgebraElement shift = weyl_p(weyl, 0, order).shifted(1).truncated(order) + sqrt_term;

    // X^mu = x^mu (h p0 + sqrt(1 - h^2 p^2)) + h x^0 p^mu, with p^mu = eta^{mu nu} p_nu.
    // The relation suite fixes the sign of the second term.
    g.X.resize(4);
    g.P.resize(4);
    AlgebraElement x0 = weyl_x(weyl, 0, order);
    for (std::size_t mu = 0; mu < 4; ++mu) {
        AlgebraElement p_upper = mu == 0 ? -weyl_p(weyl, 0, order) : weyl_p(weyl, mu, order);
        g.X[mu] = weyl_x(weyl, mu, order) * shift + (x0 * p_upper).shifted(1).truncated(order);
        g.P[mu] = weyl_p(weyl, mu, order);
    }

    g.M.resize(3);
    g.Nb.resize(3);
    for (std::size_t i = 1; i <= 3; ++i) {
        AlgebraElement acc = AlgebraElement::zero(weyl, order);
        for (std::size_t j = 1; j <= 3; ++j)
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, j, k);
                if (eps != 0)
                    acc += (weyl_x(weyl, j, order) * weyl_p(weyl, k, order)).scaled(GaussianRational(eps));
            }
        g.M[i - 1] = std::move(acc);
        // classical boosts N_i = x_0 p_i - x_i p_0
        g.Nb[i - 1] = (-x0) * weyl_p(weyl, i, order) - weyl_x(weyl, i, order) * weyl_p(weyl, 0, order);
    }

    // C = 2 h^{-2} (sqrt(1 - h^2 p^2) - 1), classical limit -p^2 = p0^2 - vec p^2.
    // This is the central element with [C, X_mu] = 2i P_mu exactly.
    AlgebraElement inner = (one - p2.shifted(2).truncated(order)).pow(Rational(1, 2));
    g.C = (inner - one).scaled(GaussianRational(2)).shifted(-2);
    if (!g.C.is_regular()) throw std::domain_error("build_covariant: Casimir principal part");
    return g;
}

DsrGenerators build_abelian_realization(const Rational& s, const SystemPtr& weyl, int order) {
    return build_noncovariant(
        RealizationParams::make(TaylorSeries::constant(1, order), TaylorSeries::constant(s, order), order),
        weyl);
}

DsrGenerators build_jordanian_realization(const Rational& r, const SystemPtr& weyl, int order) {
    if (r == 0) throw std::invalid_argument("build_jordanian_realization: r must be nonzero");
    TaylorSeries psi = TaylorSeries::constant(1, order);
    psi.set_coeff(1, r);
    return build_noncovariant(RealizationParams::make(psi, TaylorSeries::zero(order), order), weyl);
}

std::vector<RelationResult> check_dsr_suite(const DsrGenerators& g) {
    std::vector<Relation> rels;
    const SystemPtr& weyl = g.weyl;
    int order = g.order;
    AlgebraElement zero = AlgebraElement::zero(weyl, order);
    auto sc = [&](const AlgebraElement& e, GaussianRational c) { return e.scaled(std::move(c)); };
    auto sh = [&](const AlgebraElement& e) { return e.shifted(1).truncated(order); };

    // deformed momentum square and the shift operator of (L7)/(L8)
    AlgebraElement P2 = -(g.P[0] * g.P[0]);
    for (std::size_t k = 1; k <= 3; ++k) P2 += g.P[k] * g.P[k];
    AlgebraElement sqrtP = (AlgebraElement::one(weyl, order) - P2.shifted(2).truncated(P2.order()))
                               .pow(Rational(1, 2));
    AlgebraElement Pi = g.P[0].shifted(1).truncated(sqrtP.order()) + sqrtP;

    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = 1; j <= 3; ++j) {
            AlgebraElement mm = zero, mn = zero, nn = zero;
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, j, k);
                if (eps == 0) continue;
                mm += sc(g.M[k - 1], kI * GaussianRational(eps));
                mn += sc(g.Nb[k - 1], kI * GaussianRational(eps));
                nn += sc(g.M[k - 1], -kI * GaussianRational(eps));
            }
            rels.push_back({"[M" + std::to_string(i) + ",M" + std::to_string(j) + "]",
                            commutator(g.M[i - 1], g.M[j - 1]), mm});
            rels.push_back({"[M" + std::to_string(i) + ",N" + std::to_string(j) + "]",
                            commutator(g.M[i - 1], g.Nb[j - 1]), mn});
            rels.push_back({"[N" + std::to_string(i) + ",N" + std::to_string(j) + "]",
                            commutator(g.Nb[i - 1], g.Nb[j - 1]), nn});
        }
    for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = 0; nu < mu; ++nu)
            rels.push_back({"[P" + std::to_string(mu) + ",P" + std::to_string(nu) + "]",
                            commutator(g.P[mu], g.P[nu]), zero});
    for (std::size_t j = 1; j <= 3; ++j) {
        rels.push_back({"[M" + std::to_string(j) + ",P0]", commutator(g.M[j - 1], g.P[0]), zero});
        for (std::size_t k = 1; k <= 3; ++k) {
            AlgebraElement rhs = zero;
            for (std::size_t l = 1; l <= 3; ++l) {
                int eps = levi_civita(j, k, l);
                if (eps != 0) rhs += sc(g.P[l], kI * GaussianRational(eps));
            }
            rels.push_back({"[M" + std::to_string(j) + ",P" + std::to_string(k) + "]",
                            commutator(g.M[j - 1], g.P[k]), rhs});
            rels.push_back({"[N" + std::to_string(j) + ",P" + std::to_string(k) + "]",
                            commutator(g.Nb[j - 1], g.P[k]),
                            j == k ? sc(g.P[0], -kI) : zero});
        }
        rels.push_back({"[N" + std::to_string(j) + ",P0]", commutator(g.Nb[j - 1], g.P[0]),
                        sc(g.P[j], -kI)});
    }
    // cross relations with the deformed coordinates
    AlgebraElement X0 = g.X_lower(0);
    for (std::size_t i = 1; i <= 3; ++i) {
        rels.push_back({"[M" + std::to_string(i) + ",X0]", commutator(g.M[i - 1], X0), zero});
        rels.push_back({"[N" + std::to_string(i) + ",X0]", commutator(g.Nb[i - 1], X0),
                        sc(g.X[i], -kI) - sh(sc(g.Nb[i - 1], kI))});
        for (std::size_t j = 1; j <= 3; ++j) {
            AlgebraElement mx = zero;
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, j, k);
                if (eps != 0) mx += sc(g.X[k], kI * GaussianRational(eps));
            }
            rels.push_back({"[M" + std::to_string(i) + ",X" + std::to_string(j) + "]",
                            commutator(g.M[i - 1], g.X[j]), mx});
            AlgebraElement nx = i == j ? sc(X0, -kI) : zero;
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, j, k);
                if (eps != 0) nx += sh(sc(g.M[k - 1], kI * GaussianRational(eps)));
            }
            rels.push_back({"[N" + std::to_string(i) + ",X" + std::to_string(j) + "]",
                            commutator(g.Nb[i - 1], g.X[j]), nx});
        }
    }
    for (std::size_t k = 1; k <= 3; ++k) {
        rels.push_back({"[P" + std::to_string(k) + ",X0]", commutator(g.P[k], X0), zero});
        for (std::size_t j = 1; j <= 3; ++j)
            rels.push_back({"[P" + std::to_string(k) + ",X" + std::to_string(j) + "]",
                            commutator(g.P[k], g.X[j]), j == k ? sc(Pi, -kI) : zero});
    }
    for (std::size_t j = 1; j <= 3; ++j)
        rels.push_back({"[P0,X" + std::to_string(j) + "]", commutator(g.P[0], g.X[j]),
                        sh(sc(g.P[j], -kI))});
    rels.push_back({"[P0,X0]", commutator(g.P[0], X0), sc(sqrtP, kI)});
    // coordinate sector
    for (std::size_t i = 1; i <= 3; ++i)
        rels.push_back({"[X0,X" + std::to_string(i) + "]", commutator(X0, g.X[i]),
                        sh(sc(g.X[i], -kI))});
    for (std::size_t j = 1; j <= 3; ++j)
        for (std::size_t k = 1; k < j; ++k)
            rels.push_back({"[X" + std::to_string(j) + ",X" + std::to_string(k) + "]",
                            commutator(g.X[j], g.X[k]), zero});
    // Casimir relations: [C, X_mu] = 2i P_mu and centrality
    for (std::size_t mu = 0; mu < 4; ++mu)
        rels.push_back({"[C,X_" + std::to_string(mu) + "]", commutator(g.C, g.X_lower(mu)),
                        sc(g.P[mu], GaussianRational(2) * kI)});
    for (std::size_t i = 1; i <= 3; ++i) {
        rels.push_back({"[C,M" + std::to_string(i) + "]", commutator(g.C, g.M[i - 1]), zero});
        rels.push_back({"[C,N" + std::to_string(i) + "]", commutator(g.C, g.Nb[i - 1]), zero});
    }
    for (std::size_t mu = 0; mu < 4; ++mu)
        rels.push_back({"[C,P" + std::to_string(mu) + "]", commutator(g.C, g.P[mu]), zero});
    // covariant form: [M_{mu nu}, X_lam] = i eta_{mu lam} X_nu - i eta_{nu lam} X_mu
    //                 - i h a_mu M_{nu lam} + i h a_nu M_{mu lam},  a = (1,0,0,0), a_mu = eta a.
    const auto& eta = g.weyl->metric();
    auto a_lower = [&](std::size_t mu) { return mu == 0 ? Rational(-1) : Rational(0); };
    for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = 0; nu < mu; ++nu)
            for (std::size_t lam = 0; lam < 4; ++lam) {
                AlgebraElement rhs = sc(g.X_lower(nu), kI * GaussianRational(eta[mu][lam])) -
                                     sc(g.X_lower(mu), kI * GaussianRational(eta[nu][lam])) -
                                     sh(sc(g.M_cov(nu, lam), kI * GaussianRational(a_lower(mu)))) +
                                     sh(sc(g.M_cov(mu, lam), kI * GaussianRational(a_lower(nu))));
                rels.push_back({"cov[M_" + std::to_string(mu) + std::to_string(nu) + ",X_" +
                                    std::to_string(lam) + "]",
                                commutator(g.M_cov(mu, nu), g.X_lower(lam)), rhs});
            }
    return check_relations(rels);
}

HermiticityReport check_hermiticity(const DsrGenerators& g) {
    HermiticityReport rep;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        AlgebraElement defect = g.X[mu].dagger() - g.X[mu];
        RelationResult r;
        r.name = "dagger(X" + std::to_string(mu) + ")";
        r.ok = defect.is_zero();
        r.effective_order = defect.order();
        if (!r.ok) r.residual = defect.str();
        if (mu == 0) rep.defect_X0 = defect;
        rep.results.push_back(std::move(r));
    }
    return rep;
}

bool HermiticityReport::hermitian() const {
    for (const auto& r : results)
        if (!r.ok) return false;
    return true;
}

std::vector<RelationResult> snyder_map(const DsrGenerators& g) {
    const SystemPtr& weyl = g.weyl;
    int order = g.order;
    AlgebraElement zero = AlgebraElement::zero(weyl, order);
    AlgebraElement P2 = -(g.P[0] * g.P[0]);
    for (std::size_t k = 1; k <= 3; ++k) P2 += g.P[k] * g.P[k];
    AlgebraElement Mel = (AlgebraElement::one(weyl, order) - P2.shifted(2).truncated(P2.order()))
                             .pow(Rational(1, 2));

    std::vector<AlgebraElement> Xt(4);
    Xt[0] = g.X_lower(0);
    for (std::size_t j = 1; j <= 3; ++j)
        Xt[j] = g.X[j] + g.Nb[j - 1].shifted(1).truncated(order);

    std::vector<Relation> rels;
    const auto& eta = weyl->metric();
    for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = 0; nu < mu; ++nu)
            rels.push_back({"[Xt_" + std::to_string(mu) + ",Xt_" + std::to_string(nu) + "]",
                            commutator(Xt[mu], Xt[nu]),
                            g.M_cov(mu, nu).scaled(kI).shifted(2).truncated(order)});
    for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = 0; nu < 4; ++nu)
            rels.push_back({"[P_" + std::to_string(mu) + ",Xt_" + std::to_string(nu) + "]",
                            commutator(g.P[mu], Xt[nu]),
                            Mel.scaled(-kI * GaussianRational(eta[mu][nu]))});
    for (std::size_t mu = 0; mu < 4; ++mu) {
        rels.push_back({"[Xt_" + std::to_string(mu) + ",M]", commutator(Xt[mu], Mel),
                        g.P[mu].scaled(-kI).shifted(2).truncated(order)});
        rels.push_back({"[P_" + std::to_string(mu) + ",M]", commutator(g.P[mu], Mel), zero});
    }
    return check_relations(rels);
}

SystemPtr make_phase_space(int order) {
    std::vector<GeneratorInfo> gens;
    for (std::size_t mu = 0; mu < 4; ++mu) gens.push_back({"x" + std::to_string(mu)});
    for (std::size_t mu = 0; mu < 4; ++mu) gens.push_back({"p" + std::to_string(mu)});
    auto sys = GeneratorSystem::create(std::move(gens), order);
    sys->set_metric(minkowski_metric(4));
    return sys;
}

PolyElement poisson_bracket(const PolyElement& f, const PolyElement& g) {
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
    for (GenIndex mu = 0; mu < 4; ++mu) {
        GenIndex x = mu, p = static_cast<GenIndex>(4 + mu);
        acc += derivative(f, x) * derivative(g, p) - derivative(f, p) * derivative(g, x);
    }
    return acc;
}

std::vector<RelationResult> poisson_check(const std::vector<PoissonCheck>& checks) {
    std::vector<RelationResult> out;
    for (const auto& c : checks) {
        AlgebraElement res = c.lhs - c.rhs;
        RelationResult r;
        r.name = c.name;
        r.ok = res.is_zero();
        r.effective_order = res.order();
        if (!r.ok) r.residual = res.str();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace kappa
