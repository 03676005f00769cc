#include <doctest.h>

#include "kappa/pbw.hpp"

#include <random>

using namespace kappa;

namespace {

constexpr int N = 6;

AlgebraElement gen(const SystemPtr& sys, GenIndex g) { return AlgebraElement::generator(sys, g, N); }

AlgebraElement random_element(const SystemPtr& sys, std::mt19937& rng, int max_terms = 3,
                              int max_len = 3) {
    std::uniform_int_distribution<int> nterms(1, max_terms), len(0, max_len),
        pick(0, static_cast<int>(sys->num_generators()) - 1), num(-3, 3);
    AlgebraElement e = AlgebraElement::zero(sys, N);
    for (int t = 0, n = nterms(rng); t < n; ++t) {
        Word w;
        for (int k = 0, l = len(rng); k < l; ++k) w.push_back(static_cast<GenIndex>(pick(rng)));
        GaussianRational c{Rational(num(rng)), Rational(num(rng))};
        e += AlgebraElement::from_word(sys, w, N).scaled(c);
    }
    return e;
}

}  // namespace

TEST_CASE("weyl: canonical commutation relations") {
    auto sys = make_weyl(4, N);
    WeylIndices ix{4};
    auto x0 = gen(sys, ix.x(0)), p0 = gen(sys, ix.p(0)), x1 = gen(sys, ix.x(1)), p1 = gen(sys, ix.p(1));

    // [p_mu, x_nu] = -i eta_{mu nu}: with x_0 = -x^0, p_0 x_0 = x_0 p_0 + i
    AlgebraElement x_lower0 = -x0;
    CHECK(p0 * x_lower0 == x_lower0 * p0 + AlgebraElement::scalar(sys, GaussianRational::i(), N));
    // x^1 p_1 stays normal-ordered
    CHECK(x1 * p1 == AlgebraElement::from_word(sys, {ix.x(1), ix.p(1)}, N));
    CHECK(commutator(p1, x1) == AlgebraElement::scalar(sys, -GaussianRational::i(), N));
    CHECK(commutator(p0, p1).is_zero());
    CHECK(commutator(x0, x1).is_zero());
}

TEST_CASE("weyl: derivation property of momenta on coordinate polynomials") {
    auto sys = make_weyl(4, N);
    WeylIndices ix{4};
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> pick(0, 3), len(1, 4), num(-3, 3);
    for (int trial = 0; trial < 25; ++trial) {
        // random coordinate monomial f
        Word w;
        for (int k = 0, l = len(rng); k < l; ++k) w.push_back(ix.x(static_cast<std::size_t>(pick(rng))));
        AlgebraElement f = AlgebraElement::from_word(sys, w, N).scaled(GaussianRational(Rational(num(rng))));
        std::size_t mu = static_cast<std::size_t>(pick(rng));
        // [p_mu, f] = -i df/dx^mu (upper-index coordinates, [p_mu, x^nu] = -i delta)
        AlgebraElement lhs = commutator(gen(sys, ix.p(mu)), f);
        AlgebraElement rhs = AlgebraElement::zero(sys, N);
        for (const auto& [m, c] : f.terms()) {
            int e = m.exp[ix.x(mu)];
            if (e == 0) continue;
            Monomial d = m;
            d.exp[ix.x(mu)] = static_cast<std::uint8_t>(e - 1);
            rhs.add_term(d, c * GaussianRational(Rational(e)) * (-GaussianRational::i()));
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("io13 physical basis relations") {
    auto sys = make_io13_physical(N);
    Io13Indices ix;
    auto M1 = gen(sys, ix.M(1)), M2 = gen(sys, ix.M(2)), M3 = gen(sys, ix.M(3));
    auto N1 = gen(sys, ix.N(1)), P0 = gen(sys, ix.P(0)), P1 = gen(sys, ix.P(1));
    GaussianRational I = GaussianRational::i();

    CHECK(commutator(M1, M2) == M3.scaled(I));
    CHECK(M1 * M2 - M2 * M1 == M3.scaled(I));
    CHECK(commutator(N1, P1) == P0.scaled(-I));
    CHECK(commutator(N1, P0) == P1.scaled(-I));
    CHECK(commutator(P0, P1).is_zero());
    CHECK(commutator(M1, P0).is_zero());
}

TEST_CASE("full io13 relation list via check_relations") {
    auto sys = make_io13_physical(N);
    Io13Indices ix;
    GaussianRational I = GaussianRational::i();
    std::vector<Relation> rels;
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = 1; j <= 3; ++j) {
            AlgebraElement mm = AlgebraElement::zero(sys, N);
            AlgebraElement mn = mm, nn = mm;
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, j, k);
                if (eps == 0) continue;
                mm += gen(sys, ix.M(k)).scaled(I * GaussianRational(eps));
                mn += gen(sys, ix.N(k)).scaled(I * GaussianRational(eps));
                nn += gen(sys, ix.M(k)).scaled(-I * GaussianRational(eps));
            }
            rels.push_back({"[M,M]", commutator(gen(sys, ix.M(i)), gen(sys, ix.M(j))), mm});
            rels.push_back({"[M,N]", commutator(gen(sys, ix.M(i)), gen(sys, ix.N(j))), mn});
            rels.push_back({"[N,N]", commutator(gen(sys, ix.N(i)), gen(sys, ix.N(j))), nn});
            AlgebraElement mp = AlgebraElement::zero(sys, N);
            for (std::size_t l = 1; l <= 3; ++l) {
                int eps = levi_civita(j, i, l);  // [M_j, P_i] = i eps_jil P_l
                if (eps != 0) mp += gen(sys, ix.P(l)).scaled(I * GaussianRational(eps));
            }
            rels.push_back({"[M,P]", commutator(gen(sys, ix.M(j)), gen(sys, ix.P(i))), mp});
        }
    for (std::size_t j = 1; j <= 3; ++j) {
        rels.push_back({"[M,P0]", commutator(gen(sys, ix.M(j)), gen(sys, ix.P(0))),
                        AlgebraElement::zero(sys, N)});
        for (std::size_t k = 1; k <= 3; ++k)
            rels.push_back({"[N,Pk]", commutator(gen(sys, ix.N(j)), gen(sys, ix.P(k))),
                            gen(sys, ix.P(0)).scaled(-I * GaussianRational(j == k ? 1 : 0))});
        rels.push_back({"[N,P0]", commutator(gen(sys, ix.N(j)), gen(sys, ix.P(0))),
                        gen(sys, ix.P(j)).scaled(-I)});
    }
    for (const auto& r : check_relations(rels)) {
        INFO(r.name, ": ", r.residual);
        CHECK(r.ok);
    }
}

TEST_CASE("igl relations and the trace element") {
    auto sys = make_igl(4, N);
    IglIndices ix{4};
    GaussianRational I = GaussianRational::i();
    CHECK(commutator(gen(sys, ix.L(0, 0)), gen(sys, ix.P(0))) == gen(sys, ix.P(0)).scaled(I));
    // D = sum_k L^k_k commutes with P_0
    AlgebraElement D = AlgebraElement::zero(sys, N);
    for (std::size_t k = 1; k <= 3; ++k) D += gen(sys, ix.L(k, k));
    CHECK(commutator(D, gen(sys, ix.P(0))).is_zero());
    CHECK(commutator(D, gen(sys, ix.L(0, 0))).is_zero());
    // [D, P_k] = i P_k
    CHECK(commutator(D, gen(sys, ix.P(2))) == gen(sys, ix.P(2)).scaled(I));
}

TEST_CASE("an(4, h): universal h-adic coordinate algebra") {
    auto sys = make_an(4, N, HSeries::h_power(1, N));
    GaussianRational I = GaussianRational::i();
    auto X0 = gen(sys, 0), X1 = gen(sys, 1), X2 = gen(sys, 2);
    // [X_0, X_i] = -i h X_i with X_0 = -X^0  <=>  [X^0, X^i] = i h X^i
    CHECK(commutator(-X0, X1) == X1.scaled(-I).shifted(1).truncated(N));
    CHECK(commutator(X0, X2) == X2.scaled(I).shifted(1).truncated(N));
    CHECK(commutator(X1, X2).is_zero());
}

TEST_CASE("dagger is an antilinear anti-involution") {
    auto sys = make_weyl(4, N);
    WeylIndices ix{4};
    GaussianRational I = GaussianRational::i();

    CHECK(AlgebraElement::scalar(sys, I, N).dagger() == AlgebraElement::scalar(sys, -I, N));
    // (x^0 p_0)^dagger = p_0 x^0 = x^0 p_0 - i
    AlgebraElement x0p0 = AlgebraElement::from_word(sys, {ix.x(0), ix.p(0)}, N);
    CHECK(x0p0.dagger() == gen(sys, ix.p(0)) * gen(sys, ix.x(0)));
    CHECK(x0p0.dagger() == x0p0 - AlgebraElement::scalar(sys, I, N));

    std::mt19937 rng(23);
    for (int t = 0; t < 15; ++t) {
        AlgebraElement a = random_element(sys, rng);
        CHECK(a.dagger().dagger() == a);
    }
    // dagger is an anti-homomorphism
    for (int t = 0; t < 10; ++t) {
        AlgebraElement a = random_element(sys, rng), b = random_element(sys, rng);
        CHECK((a * b).dagger() == b.dagger() * a.dagger());
    }
}

TEST_CASE("pbw confluence for the preset systems") {
    for (const auto& sys :
         {make_weyl(4, 3), make_io13_physical(3), make_an(4, 3, HSeries::h_power(1, 3)), make_weyl_io13(3)}) {
        for (const auto& r : check_pbw_confluence(sys)) {
            INFO(r.name, ": ", r.residual);
            CHECK(r.ok);
        }
    }
}

TEST_CASE("multiplication is associative on random triples") {
    std::mt19937 rng(37);
    for (const auto& sys : {make_io13_physical(4), make_weyl(3, 4)}) {
        for (int t = 0; t < 10; ++t) {
            AlgebraElement a = random_element(sys, rng), b = random_element(sys, rng),
                           c = random_element(sys, rng);
            CHECK((a * b) * c == a * (b * c));
        }
    }
}

TEST_CASE("jacobi identity for Lie-type presets") {
    std::mt19937 rng(41);
    auto sys = make_io13_physical(4);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(sys->num_generators()) - 1);
    for (int t = 0; t < 20; ++t) {
        auto a = gen(sys, static_cast<GenIndex>(pick(rng))), b = gen(sys, static_cast<GenIndex>(pick(rng))),
             c = gen(sys, static_cast<GenIndex>(pick(rng)));
        AlgebraElement jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                             commutator(c, commutator(a, b));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("element expression parsing") {
    auto sys = make_io13_physical(N);
    Io13Indices ix;
    AlgebraElement e = parse_element(sys, "P1 P0 - 1/2 i h M1^2", N);
    AlgebraElement expected =
        gen(sys, ix.P(0)) * gen(sys, ix.P(1)) -
        (gen(sys, ix.M(1)) * gen(sys, ix.M(1))).scaled(GaussianRational(Rational(0), Rational(1, 2))).shifted(1).truncated(N);
    CHECK(e == expected);
}

TEST_CASE("custom straightening table from text") {
    // su(2)-like rotations: M_j M_i = M_i M_j + [M_j, M_i]
    const char* good = R"(
generators: M1 M2 M3
M2 M1 -> M1 M2 - i M3
M3 M1 -> M1 M3 + i M2
M3 M2 -> M2 M3 - i M1
)";
    auto sys2 = make_custom(good, N);
    GaussianRational I = GaussianRational::i();
    auto K1 = gen(sys2, 0), K2 = gen(sys2, 1), K3 = gen(sys2, 2);
    CHECK(commutator(K1, K2) == K3.scaled(I));
    for (const auto& r : check_pbw_confluence(sys2)) CHECK(r.ok);

    // deliberately flipped [M1, M2]
    const char* broken = R"(
generators: M1 M2 M3
M2 M1 -> M1 M2 + i M3   # flipped sign
M3 M1 -> M1 M3 + i M2
M3 M2 -> M2 M3 - i M1
)";
    auto sys = make_custom(broken, N);
    auto M1 = gen(sys, 0), M2 = gen(sys, 1), M3 = gen(sys, 2);
    std::vector<Relation> rels{{"[M1,M2]=iM3", commutator(M1, M2), M3.scaled(I)}};
    auto results = check_relations(rels);
    CHECK_FALSE(results[0].ok);
    CHECK(results[0].residual != "");

    CHECK_THROWS_AS(make_custom("generators: A B\nB A -> 2 A B", N), std::invalid_argument);
    CHECK_THROWS_AS(make_custom("B A -> A B", N), std::invalid_argument);
}

TEST_CASE("element series operations in a commutative block") {
    auto sys = make_weyl(4, N);
    WeylIndices ix{4};
    auto p0 = gen(sys, ix.p(0));
    AlgebraElement u = p0.shifted(1).truncated(N);  // h p_0
    AlgebraElement e = u.exp();
    CHECK(e * e.invert() == AlgebraElement::one(sys, N));
    // exp(h p0) expands with 1/m! coefficients
    Monomial m(sys->num_generators());
    m.exp[ix.p(0)] = 2;
    CHECK(e.coefficient(m).coeff(2) == GaussianRational(Rational(1, 2)));
    AlgebraElement s = (AlgebraElement::one(sys, N) + u).pow(Rational(1, 2));
    CHECK(s * s == AlgebraElement::one(sys, N) + u);
    CHECK_THROWS_AS(p0.exp(), std::domain_error);
}
