#include "kappa/pheno.hpp"

namespace kappa {

DispersionModel DispersionModel::make(TaylorSeries psi, TaylorSeries gamma, int order) {
    if (psi.coeff(0) != 1) throw std::domain_error("DispersionModel: psi(0) must be 1");
    return {psi.truncated(order), gamma.truncated(order), order};
}

TaylorSeries dispersion_series(const DispersionModel& m) {
    int order = m.order;
    auto [Psi, Gamma] = build_psi_gamma(m.psi, m.gamma, order);
    // |p|/kappa = (Psi(t)^{-1} - 1) Gamma(t) evaluated at t = -p0/kappa
    TaylorSeries s = (Psi.reciprocal() - TaylorSeries::constant(1, order)) * Gamma;
    return s.scale_arg(Rational(-1));
}

namespace {

// f / g for Taylor series with val(f) >= val(g) > 0 possible: shift both down
// by val(g), then multiply by the reciprocal.
TaylorSeries taylor_divide(const TaylorSeries& f, const TaylorSeries& g) {
    int vg = 0;
    while (vg <= g.order() && g.coeff(vg) == 0) ++vg;
    if (vg > g.order()) throw std::domain_error("taylor_divide: zero divisor");
    int order = std::min(f.order(), g.order()) - vg;
    TaylorSeries fs(order), gs(order);
    for (int k = 0; k <= order; ++k) {
        fs.set_coeff(k, f.coeff(k + vg));
        gs.set_coeff(k, g.coeff(k + vg));
    }
    return fs * gs.reciprocal();
}

}  // namespace

TaylorSeries dispersion_casimir_root(const DispersionModel& m) {
    int order = m.order;
    int elem_order = order + 2;  // the Casimir loses two orders to h^{-2}
    auto weyl = make_weyl(4, elem_order);
    WeylIndices ix{4};
    DsrGenerators g =
        build_noncovariant(RealizationParams::make(m.psi.truncated(elem_order),
                                                   m.gamma.truncated(elem_order), elem_order),
                           weyl);

    // On the slice p0 = kappa u, p1 = kappa v, p2 = p3 = 0 the Casimir is
    // kappa^2 f(u, v) with f = sum c_{j,a,b} u^a v^b read off the element
    // (h^j p0^a p1^b contributes at homogeneity a + b - j = 2).
    struct Term {
        Rational c;
        int a, b;
    };
    std::vector<Term> f_terms;
    for (const auto& [mono, coeff] : g.C.terms()) {
        bool on_slice = true;
        for (GenIndex gi = 0; gi < mono.exp.size(); ++gi)
            if (mono.exp[gi] != 0 && gi != ix.p(0) && gi != ix.p(1)) on_slice = false;
        if (!on_slice) continue;
        int a = mono.exp[ix.p(0)], b = mono.exp[ix.p(1)];
        for (int j = coeff.valuation(); j <= coeff.order(); ++j) {
            GaussianRational c = coeff.coeff(j);
            if (c.is_zero()) continue;
            if (!c.is_real()) throw std::logic_error("dispersion_casimir_root: complex Casimir term");
            if (a + b - j != 2) throw std::logic_error("dispersion_casimir_root: inhomogeneous term");
            f_terms.push_back({c.re, a, b});
        }
    }
    auto eval_f = [&](const TaylorSeries& u, const TaylorSeries& v, bool dv) {
        TaylorSeries acc = TaylorSeries::zero(order);
        for (const auto& t : f_terms) {
            Rational c = t.c;
            int b = t.b;
            if (dv) {
                if (b == 0) continue;
                c *= b;
                b -= 1;
            }
            TaylorSeries term = TaylorSeries::constant(c, order);
            for (int k = 0; k < t.a; ++k) term = term * u;
            for (int k = 0; k < b; ++k) term = term * v;
            acc = acc + term;
        }
        return acc;
    };

    // Newton iteration for f(t, v(t)) = 0 starting from v = t.
    TaylorSeries t = TaylorSeries::variable(order);
    TaylorSeries v = t;
    for (int it = 0; it < order + 2; ++it) {
        TaylorSeries fv = eval_f(t, v, false);
        if (fv.is_zero()) break;
        v = v - taylor_divide(fv, eval_f(t, v, true));
    }
    if (!eval_f(t, v, false).is_zero())
        throw std::logic_error("dispersion_casimir_root: Newton iteration failed to converge");
    // positive root: leading coefficient +1
    if (v.coeff(1) < 0) v = -v;
    return v;
}

BCoefficients b_coefficients(const DispersionModel& m) {
    // expansion convention (t = -p0/kappa):
    // psi = 1 - (p0/k) psi1 - (p0/k)^2 psi2 + ..., gamma = gamma0 - (p0/k) gamma1 + ...
    Rational psi1 = m.psi.coeff(1);
    Rational psi2 = -m.psi.coeff(2);
    Rational g0 = m.gamma.coeff(0);
    Rational g1 = m.gamma.coeff(1);
    BCoefficients b;
    b.b1 = (2 * g0 - 1 - psi1) / 2;
    b.b2 = (1 + 3 * psi1 + 2 * psi1 * psi1 - psi2 + 3 * g0 * g0 - 3 * g0 + 3 * g1 - 6 * g0 * psi1) /
           Rational(6);
    TaylorSeries d = dispersion_series(m);
    b.b1_series = -d.coeff(2);
    b.b2_series = d.coeff(3);
    return b;
}

Rational time_delay_general(const Rational& T, const Rational& u, const BCoefficients& b) {
    return -T * u * (2 * b.b1 - 3 * b.b2 * u);
}

std::vector<DelayRow> time_delay(const DelayScenario& sc) {
    BCoefficients b = b_coefficients(sc.model);
    std::vector<DelayRow> rows;
    rows.reserve(sc.energies_gev.size());
    for (const Rational& E : sc.energies_gev) {
        Rational u = E / sc.kappa_gev;
        rows.push_back({E, b.b1, b.b2, time_delay_general(sc.baseline_s, u, b)});
    }
    return rows;
}

Rational jordanian_delay_closed(const Rational& r, const Rational& T, const Rational& u) {
    return T * u * (1 + r + (1 + 3 * r + 2 * r * r) * u / 2);
}

AbelianDelayReport abelian_delay_report(const Rational& s, int order) {
    DispersionModel m =
        DispersionModel::make(TaylorSeries::constant(1, order), TaylorSeries::constant(s, order), order);
    BCoefficients b = b_coefficients(m);
    AbelianDelayReport rep;
    rep.quoted_u2_coeff = s * (s - 1) / 2;
    rep.general_u1_coeff = 2 * b.b1;
    rep.general_u2_coeff = -3 * b.b2;
    // substitute w = |p|(p0)/kappa into -T w (2s - 1 + (w/2) s(s-1)) and expand in u
    TaylorSeries w = dispersion_series(m);
    TaylorSeries quoted =
        w * (TaylorSeries::constant(2 * s - 1, order) + w * (s * (s - 1) / 2));
    rep.converted_u1_coeff = quoted.coeff(1);
    rep.converted_u2_coeff = quoted.coeff(2);
    return rep;
}

Rational mass_relation(const Rational& m_h, const Rational& h) {
    return m_h * m_h * (1 - h * h * m_h * m_h / 4);
}

bool mass_relation_oracle(const Rational& m_h, int order) {
    // P^2 = -m_ph^2(m_h, h) with h formal: 1 + h^2 P^2 = 1 - h^2 m_h^2 + h^4 m_h^4/4.
    Rational mh2 = m_h * m_h;
    HSeries arg = HSeries::constant(1, order);
    arg += HSeries::constant(GaussianRational(-mh2), order).shifted(2).truncated(order);
    arg += HSeries::constant(GaussianRational(mh2 * mh2 / 4), order).shifted(4).truncated(order);
    HSeries casimir =
        (arg.pow(Rational(1, 2)) - HSeries::constant(1, order)).shifted(-2) * GaussianRational(2);
    return casimir == HSeries::constant(GaussianRational(-mh2), order - 2);
}

}  // namespace kappa
