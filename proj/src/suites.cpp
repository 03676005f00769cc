#include "kappa/suites.hpp"

#include <random>

namespace kappa {

namespace {

const GaussianRational kI = GaussianRational::i();

RelationResult tensor_check(const std::string& name, const TensorElement& residual) {
    RelationResult r;
    r.name = name;
    r.ok = residual.is_zero();
    r.effective_order = residual.order();
    if (!r.ok) r.residual = residual.str();
    return r;
}

RelationResult element_check(const std::string& name, const AlgebraElement& residual) {
    RelationResult r;
    r.name = name;
    r.ok = residual.is_zero();
    r.effective_order = residual.order();
    if (!r.ok) r.residual = residual.str();
    return r;
}

PolyElement random_poly(const SystemPtr& coords, std::mt19937& rng, int order, int max_deg = 2) {
    std::uniform_int_distribution<int> pick(0, 3), deg(0, max_deg), num(-3, 3), nterms(1, 3);
    PolyElement e = AlgebraElement::zero(coords, order);
    for (int t = 0, n = nterms(rng); t < n; ++t) {
        Word w;
        for (int k = 0, l = deg(rng); k < l; ++k) w.push_back(static_cast<GenIndex>(pick(rng)));
        e += AlgebraElement::from_word(coords, w, order).scaled(GaussianRational(Rational(num(rng))));
    }
    return e;
}

std::string rat(const Rational& x) { return to_string(x); }

}  // namespace

VerificationReport run_twist_suite(const TwistSuiteConfig& cfg) {
    VerificationReport rep;
    rep.campaign = "twist";
    std::vector<CheckFn> checks;

    auto make_family_checks = [&](bool jordanian, const Rational& par) {
        int order = jordanian ? cfg.jordanian_order : cfg.order;
        std::string label = (jordanian ? "jordanian r=" : "abelian s=") + rat(par);
        checks.push_back([=]() -> std::vector<RelationResult> {
            std::vector<RelationResult> out;
            auto igl = make_igl(4, order);
            auto H0 = make_primitive_hopf(igl);
            Twist F = jordanian ? build_jordanian_twist(igl, par, order)
                                : build_abelian_twist(igl, par, order);
            CocycleReport cc = check_cocycle(F, *H0);
            out.push_back(tensor_check("cocycle(" + label + ")", cc.residual));
            out.push_back(element_check("counit_norm(" + label + ")",
                                        cc.counit_left + cc.counit_right));
            out.push_back(tensor_check("invertible(" + label + ")", cc.inverse_defect));

            HopfPtr twisted = twist_hopf(*H0, F);
            HopfPtr closed = jordanian ? make_jordanian_hopf_closed(igl, par)
                                       : make_abelian_hopf_closed(igl, par);
            for (GenIndex g = 0; g < igl->num_generators(); ++g) {
                out.push_back(tensor_check(
                    "coproduct_match(" + label + "; " + igl->generator(g).name + ")",
                    twisted->coproduct_table(g) - closed->coproduct_table(g)));
                out.push_back(element_check(
                    "antipode_match(" + label + "; " + igl->generator(g).name + ")",
                    twisted->antipode_table(g) - closed->antipode_table(g)));
            }

            // R-matrix: exponential closed form (abelian) / classical r-matrix (jordanian)
            RMatrices rm = r_matrices(F);
            IglIndices ix{4};
            AlgebraElement P0 = AlgebraElement::generator(igl, ix.P(0), order);
            AlgebraElement D = igl_trace_D(igl, 4, order, 4);
            if (!jordanian) {
                TensorElement expected = (TensorElement::outer(D, P0) - TensorElement::outer(P0, D))
                                             .scaled(kI)
                                             .shifted(1)
                                             .truncated(order)
                                             .exp();
                out.push_back(tensor_check("rmatrix_exp(" + label + ")", rm.R - expected));
            } else {
                AlgebraElement L00 = AlgebraElement::generator(igl, ix.L(0, 0), order);
                AlgebraElement Jr_real = D.scaled(GaussianRational(Rational(1) / par)) - L00;
                TensorElement wedge =
                    TensorElement::outer(Jr_real, P0) - TensorElement::outer(P0, Jr_real);
                out.push_back(tensor_check("rmatrix_classical(" + label + ")",
                                           rm.r_classical - wedge.scaled(kI * GaussianRational(par))));
            }
            TensorElement rem = rm.R - TensorElement::unit(igl, 2, order) -
                                rm.r_classical.shifted(1).truncated(order);
            out.push_back(tensor_check("rmatrix_h1(" + label + ")",
                                       rem.h_coefficient(0) + rem.h_coefficient(1)));

            // star-product relations on the coordinates
            auto coords = make_coordinates(4, order);
            HopfAction A = make_classical_igl_action(H0, coords);
            auto x = [&](std::size_t mu) {
                return AlgebraElement::generator(coords, static_cast<GenIndex>(mu), order);
            };
            for (std::size_t k = 1; k <= 3; ++k) {
                AlgebraElement c0k =
                    star_product(F, A, x(0), x(k)) - star_product(F, A, x(k), x(0));
                out.push_back(element_check("star[x0,x" + std::to_string(k) + "](" + label + ")",
                                            c0k - x(k).scaled(kI).shifted(1).truncated(order)));
                for (std::size_t j = 1; j < k; ++j)
                    out.push_back(element_check(
                        "star[x" + std::to_string(j) + ",x" + std::to_string(k) + "](" + label + ")",
                        star_product(F, A, x(j), x(k)) - star_product(F, A, x(k), x(j))));
            }
            // associativity on random triples
            std::mt19937 rng(cfg.seed);
            for (int t = 0; t < cfg.star_triples; ++t) {
                PolyElement f = random_poly(coords, rng, order);
                PolyElement g = random_poly(coords, rng, order);
                PolyElement k = random_poly(coords, rng, order);
                out.push_back(element_check(
                    "star_assoc#" + std::to_string(t) + "(" + label + ")",
                    star_product(F, A, star_product(F, A, f, g), k) -
                        star_product(F, A, f, star_product(F, A, g, k))));
            }
            return out;
        });
    };

    for (const Rational& s : cfg.abelian_s) make_family_checks(false, s);
    for (const Rational& r : cfg.jordanian_r) make_family_checks(true, r);

    // pseudo-deformation: hat coordinates and round trip
    struct HatCase {
        bool jordanian;
        Rational par;
    };
    for (const HatCase& hc :
         {HatCase{false, Rational(0)}, HatCase{false, Rational(1, 2)}, HatCase{true, Rational(1)}}) {
        checks.push_back([hc, order = cfg.order]() -> std::vector<RelationResult> {
            std::vector<RelationResult> out;
            std::string label =
                (hc.jordanian ? "jordanian r=" : "abelian s=") + rat(hc.par);
            auto igl = make_igl(4, order);
            auto coords = make_coordinates(4, order);
            auto weyl = make_weyl(4, order);
            auto H0 = make_primitive_hopf(igl);
            HopfAction A = make_classical_igl_action(H0, coords);
            Twist F = hc.jordanian ? build_jordanian_twist(igl, hc.par, order)
                                   : build_abelian_twist(igl, hc.par, order);
            SmashSystem S = build_smash_system(*H0, A);
            HatCoordinates hats = hat_coordinates(F, A, S, weyl);
            for (std::size_t k = 1; k <= 3; ++k) {
                out.push_back(element_check(
                    "hat[x0,x" + std::to_string(k) + "](" + label + ")",
                    commutator(hats.weyl[0], hats.weyl[k]) -
                        hats.weyl[k].scaled(kI).shifted(1).truncated(order)));
                for (std::size_t j = 1; j < k; ++j)
                    out.push_back(element_check(
                        "hat[x" + std::to_string(j) + ",x" + std::to_string(k) + "](" + label + ")",
                        commutator(hats.weyl[j], hats.weyl[k])));
            }
            for (auto& r : hats.roundtrip) {
                r.name += "(" + label + ")";
                out.push_back(std::move(r));
            }
            return out;
        });
    }

    rep.checks = run_checks(checks, cfg.parallel);
    return rep;
}

VerificationReport run_hopf_suite(const HopfSuiteConfig& cfg) {
    VerificationReport rep;
    rep.campaign = "hopf";
    // one shared structure; the axiom checks per generator are independent
    KappaPoincare kp = make_kappa_poincare(cfg.order);
    std::vector<CheckFn> checks;
    for (GenIndex g = 0; g < kp.hopf->system()->num_generators(); ++g)
        checks.push_back([kp, g] { return check_hopf_axioms_generator(*kp.hopf, g); });
    checks.push_back([kp]() -> std::vector<RelationResult> {
        int order = kp.hopf->order();
        return {element_check("shift_invertible",
                              kp.Pi * kp.Pi_inv - AlgebraElement::one(kp.hopf->system(), order))};
    });
    rep.checks = run_checks(checks, cfg.parallel);
    return rep;
}

VerificationReport run_realization_suite(const RealizationSuiteConfig& cfg) {
    VerificationReport rep;
    rep.campaign = "realization";
    int order = cfg.order;
    auto weyl = make_weyl(4, order);
    using Kind = RealizationSuiteConfig::Kind;

    struct BundleSpec {
        std::string label;
        std::function<DsrGenerators()> build;
        bool snyder = false;
    };
    std::vector<BundleSpec> specs;
    auto add_noncov = [&](const std::string& label, TaylorSeries psi, TaylorSeries gamma) {
        specs.push_back({label, [=] {
                             return build_noncovariant(RealizationParams::make(psi, gamma, order), weyl);
                         }});
    };
    switch (cfg.kind) {
        case Kind::covariant:
            specs.push_back({"covariant", [=] { return build_covariant(weyl, order); }, true});
            break;
        case Kind::abelian:
            add_noncov("abelian s=" + rat(cfg.s), TaylorSeries::constant(1, order),
                       TaylorSeries::constant(cfg.s, order));
            break;
        case Kind::jordanian: {
            TaylorSeries psi = TaylorSeries::constant(1, order);
            psi.set_coeff(1, cfg.r);
            add_noncov("jordanian r=" + rat(cfg.r), psi, TaylorSeries::zero(order));
            break;
        }
        case Kind::noncovariant:
            add_noncov("noncovariant", cfg.psi.truncated(order), cfg.gamma.truncated(order));
            break;
        case Kind::all: {
            specs.push_back({"covariant", [=] { return build_covariant(weyl, order); }, true});
            add_noncov("abelian s=0", TaylorSeries::constant(1, order), TaylorSeries::zero(order));
            add_noncov("abelian s=1/2", TaylorSeries::constant(1, order),
                       TaylorSeries::constant(Rational(1, 2), order));
            add_noncov("bicrossproduct", TaylorSeries::constant(1, order),
                       TaylorSeries::constant(1, order));
            TaylorSeries psi = TaylorSeries::constant(1, order);
            psi.set_coeff(1, Rational(1));
            add_noncov("jordanian r=1", psi, TaylorSeries::zero(order));
            std::mt19937 rng(cfg.seed);
            std::uniform_int_distribution<int> num(-2, 2), den(1, 2);
            for (int t = 0; t < cfg.random_bundles; ++t) {
                TaylorSeries rpsi = TaylorSeries::constant(1, order);
                TaylorSeries rgam(order);
                for (int k = 1; k <= 3; ++k) rpsi.set_coeff(k, Rational(num(rng), den(rng)));
                for (int k = 0; k <= 2; ++k) rgam.set_coeff(k, Rational(num(rng), den(rng)));
                add_noncov("random#" + std::to_string(t), rpsi, rgam);
            }
            break;
        }
    }

    std::vector<CheckFn> checks;
    for (const auto& spec : specs) {
        checks.push_back([spec]() -> std::vector<RelationResult> {
            DsrGenerators g = spec.build();
            std::vector<RelationResult> out = check_dsr_suite(g);
            for (auto& r : out) r.name = spec.label + ": " + r.name;
            // classical limit and regularity
            WeylIndices ix{4};
            AlgebraElement limit_defect = AlgebraElement::zero(g.weyl, g.order);
            for (std::size_t mu = 0; mu < 4; ++mu) {
                limit_defect += g.X[mu].classical_part() -
                                AlgebraElement::generator(g.weyl, ix.x(mu), g.order);
                limit_defect +=
                    g.P[mu].classical_part() - AlgebraElement::generator(g.weyl, ix.p(mu), g.order);
            }
            out.push_back(element_check(spec.label + ": classical_limit", limit_defect));
            bool regular = g.C.is_regular();
            for (const auto& e : g.X) regular &= e.is_regular();
            for (const auto& e : g.P) regular &= e.is_regular();
            RelationResult rr;
            rr.name = spec.label + ": regular";
            rr.ok = regular;
            rr.effective_order = g.effective_order;
            out.push_back(std::move(rr));
            if (spec.snyder) {
                for (auto& r : snyder_map(g)) {
                    r.name = spec.label + ": snyder " + r.name;
                    out.push_back(std::move(r));
                }
            }
            return out;
        });
    }

    // bicrossproduct printed forms and the hermiticity determination
    checks.push_back([weyl, order]() -> std::vector<RelationResult> {
        std::vector<RelationResult> out;
        WeylIndices ix{4};
        DsrGenerators g = build_abelian_realization(Rational(1), weyl, order);
        AlgebraElement p0 = AlgebraElement::generator(weyl, ix.p(0), order);
        AlgebraElement hp0 = p0.shifted(1).truncated(order);
        AlgebraElement vp2 = AlgebraElement::zero(weyl, order);
        for (std::size_t k = 1; k <= 3; ++k) {
            auto pk = AlgebraElement::generator(weyl, ix.p(k), order);
            vp2 += pk * pk;
        }
        AlgebraElement sinh_hp0 = (hp0.exp() - (-hp0).exp()).scaled(GaussianRational(Rational(1, 2)));
        AlgebraElement p0_expected =
            sinh_hp0.shifted(-1) +
            (vp2 * hp0.exp()).scaled(GaussianRational(Rational(1, 2))).shifted(1).truncated(order - 1);
        out.push_back(element_check("bicrossproduct: P0 closed form", g.P[0] - p0_expected));
        AlgebraElement half = hp0.scaled(GaussianRational(Rational(1, 2)));
        AlgebraElement sinh_half = (half.exp() - (-half).exp()).scaled(GaussianRational(Rational(1, 2)));
        AlgebraElement c_expected =
            (sinh_half * sinh_half).scaled(GaussianRational(4)).shifted(-2) - vp2 * hp0.exp();
        out.push_back(element_check("bicrossproduct: Casimir closed form", g.C - c_expected));

        // hermiticity: defect(X^0) = i h (psi'~ + 3 gamma~); Gamma = psi^{-1/3} closes it
        TaylorSeries psi = TaylorSeries::parse("1, 1/2, -1/3", order);
        TaylorSeries gam = TaylorSeries::parse("2, -1", order);
        DsrGenerators gh =
            build_noncovariant(RealizationParams::make(psi, gam, order), weyl);
        AlgebraElement expected =
            (tilde(psi.derivative(), weyl, order) + tilde(gam, weyl, order).scaled(GaussianRational(3)))
                .scaled(kI)
                .shifted(1)
                .truncated(order);
        out.push_back(element_check("hermiticity: defect formula",
                                    check_hermiticity(gh).defect_X0 - expected));
        TaylorSeries gam_fix = psi.derivative() * Rational(-1, 3);
        RealizationParams fixed = RealizationParams::make(psi, gam_fix, order);
        RelationResult r;
        r.name = "hermiticity: gamma = -psi'/3 and Gamma = psi^{-1/3}";
        r.ok = check_hermiticity(build_noncovariant(fixed, weyl)).hermitian() &&
               fixed.Gamma == psi.truncated(order).pow(Rational(-1, 3));
        r.effective_order = order;
        out.push_back(std::move(r));
        return out;
    });

    rep.checks = run_checks(checks, cfg.parallel);
    return rep;
}

VerificationReport run_qanalog_suite(const QAnalogSuiteConfig& cfg) {
    VerificationReport rep;
    rep.campaign = "qanalog";
    std::vector<CheckFn> checks;
    Rational kappa = cfg.kappa, partner = cfg.kappa_partner;
    checks.push_back([kappa] { return check_q_confluence(build_presented(kappa)); });
    checks.push_back([kappa] { return check_q_hopf(build_presented(kappa)); });
    checks.push_back([kappa]() -> std::vector<RelationResult> {
        QSmashReport rep = check_q_smash(build_presented(kappa));
        std::vector<RelationResult> out = std::move(rep.covariance);
        for (auto& r : rep.cross) out.push_back(std::move(r));
        return out;
    });
    checks.push_back([kappa] { return localized_checks(kappa); });
    checks.push_back([kappa, partner]() -> std::vector<RelationResult> {
        auto out =
            rescaling_isomorphism(build_presented(kappa), build_presented(partner));
        for (auto& r : out) r.name += " (" + to_string(kappa) + "->" + to_string(partner) + ")";
        return out;
    });
    rep.checks = run_checks(checks, cfg.parallel);
    return rep;
}

VerificationReport run_all_suites(const AllSuitesConfig& cfg) {
    TwistSuiteConfig tw;
    tw.order = cfg.order;
    tw.jordanian_order = std::min(cfg.order, 5);
    tw.parallel = cfg.parallel;
    HopfSuiteConfig hs;
    hs.order = cfg.order;
    hs.parallel = cfg.parallel;
    RealizationSuiteConfig rs;
    rs.order = cfg.order + 1;
    rs.random_bundles = 5;
    rs.parallel = cfg.parallel;
    QAnalogSuiteConfig qs;
    qs.parallel = cfg.parallel;
    return merge_reports(
        {run_twist_suite(tw), run_hopf_suite(hs), run_realization_suite(rs), run_qanalog_suite(qs)});
}

}  // namespace kappa
