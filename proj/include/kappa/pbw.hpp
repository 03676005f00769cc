#pragma once

#include "kappa/hseries.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace kappa {

using GenIndex = std::uint8_t;
using Word = std::vector<GenIndex>;  // product of generators, leftmost factor first

// Normal-ordered monomial: exponent vector aligned with the generator order.
struct Monomial {
    std::vector<std::uint8_t> exp;

    explicit Monomial(std::size_t ngens = 0) : exp(ngens, 0) {}

    int degree() const;
    bool is_unit() const { return degree() == 0; }
    Word word() const;
    bool operator==(const Monomial& o) const { return exp == o.exp; }
    // Graded lexicographic, for deterministic printing.
    bool operator<(const Monomial& o) const;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::size_t h = 1469598103934665603ULL;
        for (auto e : m.exp) h = (h ^ e) * 1099511628211ULL;
        return h;
    }
};

using TermMap = std::unordered_map<Monomial, HSeries, MonomialHash>;

class AlgebraElement;
class GeneratorSystem;
using SystemPtr = std::shared_ptr<const GeneratorSystem>;

struct GeneratorInfo {
    std::string name;
    bool self_adjoint = true;
};

// Algebra presented by an ordered generator list and a straightening table:
// for j > i (in the generator order), g_j g_i = g_i g_j + R_{ji} with R given
// as a normal-ordered element. Monomial products are memoized per system.
class GeneratorSystem : public std::enable_shared_from_this<GeneratorSystem> {
public:
    static std::shared_ptr<GeneratorSystem> create(std::vector<GeneratorInfo> gens, int order);

    std::size_t num_generators() const { return gens_.size(); }
    const GeneratorInfo& generator(GenIndex g) const { return gens_[g]; }
    GenIndex index_of(std::string_view name) const;
    int order() const { return order_; }

    // metric used when formulas lower/raise indices (n x n, default Minkowski
    // diag(-,+,...,+) when set by a preset).
    const std::vector<std::vector<Rational>>& metric() const { return metric_; }
    void set_metric(std::vector<std::vector<Rational>> g) { metric_ = std::move(g); }

    // Installs g_j g_i = g_i g_j + remainder (j > i required).
    void set_straighten(GenIndex j, GenIndex i, TermMap remainder);
    void set_commuting(GenIndex j, GenIndex i) { set_straighten(j, i, TermMap{}); }
    // Declares a * b = b * a = 1 (a < b, the pair must commute).
    void set_inverse_pair(GenIndex a, GenIndex b);
    std::optional<std::pair<GenIndex, GenIndex>> inverse_pair() const { return inverse_pair_; }

    bool has_remainder(GenIndex j, GenIndex i) const;
    const TermMap* remainder(GenIndex j, GenIndex i) const;

    // g * m as a normal-ordered term map (memoized, thread-safe).
    std::shared_ptr<const TermMap> left_mul_generator(GenIndex g, const Monomial& m) const;
    TermMap normal_form_word(const Word& w) const;

    void cancel_inverses(Monomial& m) const;

private:
    GeneratorSystem() = default;

    std::vector<GeneratorInfo> gens_;
    int order_ = 6;
    std::vector<std::vector<Rational>> metric_;
    std::unordered_map<std::uint16_t, TermMap> straighten_;
    std::optional<std::pair<GenIndex, GenIndex>> inverse_pair_;

    struct CacheKey {
        GenIndex g;
        Monomial m;
        bool operator==(const CacheKey& o) const { return g == o.g && m == o.m; }
    };
    struct CacheKeyHash {
        std::size_t operator()(const CacheKey& k) const {
            return MonomialHash{}(k.m) * 0x9e3779b97f4a7c15ULL ^ k.g;
        }
    };
    mutable std::unordered_map<CacheKey, std::shared_ptr<const TermMap>, CacheKeyHash> cache_;
    mutable std::shared_mutex cache_mutex_;

    TermMap left_mul_uncached(GenIndex g, const Monomial& m) const;
};

// Normal-ordered noncommutative polynomial with HSeries coefficients.
class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(SystemPtr sys, int order) : sys_(std::move(sys)), order_(order) {}

    static AlgebraElement zero(SystemPtr sys, int order);
    static AlgebraElement scalar(SystemPtr sys, HSeries c);
    static AlgebraElement scalar(SystemPtr sys, GaussianRational c, int order);
    static AlgebraElement one(SystemPtr sys, int order);
    static AlgebraElement generator(SystemPtr sys, GenIndex g, int order);
    static AlgebraElement from_terms(SystemPtr sys, int order, TermMap terms);
    static AlgebraElement from_word(SystemPtr sys, const Word& w, int order);

    const SystemPtr& system() const { return sys_; }
    int order() const { return order_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    HSeries coefficient(const Monomial& m) const;
    HSeries scalar_part() const;  // coefficient of the unit monomial

    void add_term(const Monomial& m, const HSeries& c);

    AlgebraElement operator-() const;
    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    AlgebraElement& operator+=(const AlgebraElement& o) { return *this = *this + o; }
    AlgebraElement& operator-=(const AlgebraElement& o) { return *this = *this - o; }
    AlgebraElement& operator*=(const AlgebraElement& o) { return *this = *this * o; }

    AlgebraElement scaled(const HSeries& c) const;
    AlgebraElement scaled(const GaussianRational& c) const;
    AlgebraElement shifted(int k) const;  // multiply by h^k; k<0 lowers the order
    AlgebraElement truncated(int order) const;

    bool equals(const AlgebraElement& o) const;
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.equals(b); }

    // All coefficients have h-valuation >= 0 (no principal parts left).
    bool is_regular() const;
    // h -> 0 limit: keeps the h^0 part of every coefficient.
    AlgebraElement classical_part() const;
    // The h^k Taylor coefficient as an element with constant coefficients.
    AlgebraElement h_coefficient(int k) const;

    // Series operations in a commutative context. exp requires every
    // coefficient O(h); invert/pow/sqrt require the form c*(1 + O(h)).
    AlgebraElement exp() const;
    AlgebraElement log() const;  // requires constant part 1
    AlgebraElement invert() const;
    AlgebraElement pow(const Rational& beta) const;

    AlgebraElement dagger() const;

    std::string str() const;  // deterministic (graded-lex sorted)

private:
    void normalize();

    SystemPtr sys_;
    int order_ = 0;
    TermMap terms_;
};

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);

// -- relation regression harness --------------------------------------------

struct Relation {
    std::string name;
    AlgebraElement lhs;
    AlgebraElement rhs;
};

struct RelationResult {
    std::string name;
    bool ok = false;
    int effective_order = 0;
    std::string residual;
};

std::vector<RelationResult> check_relations(const std::vector<Relation>& relations);

// Diamond check: for all generator triples a >= b >= c, (a*b)*c == a*(b*c).
std::vector<RelationResult> check_pbw_confluence(const SystemPtr& sys);

// -- element expression parsing ----------------------------------------------

// Grammar: sum of terms; a term is an optional Gaussian/h-power coefficient
// followed by generator names, all '*'-or-space separated, e.g.
//   "X0 X1 + i h X1"  or  "-1/2 i h^2 P0^3".
AlgebraElement parse_element(const SystemPtr& sys, std::string_view text, int order);

// -- presets -----------------------------------------------------------------

std::vector<std::vector<Rational>> minkowski_metric(std::size_t n);

// Weyl algebra: generators x^0..x^{n-1}, p_0..p_{n-1}; [p_mu, x^nu] = -i delta.
std::shared_ptr<GeneratorSystem> make_weyl(std::size_t n, int order,
                                           std::vector<std::vector<Rational>> metric = {});
// Inhomogeneous general linear algebra: P_0..P_{n-1}, L^mu_nu.
std::shared_ptr<GeneratorSystem> make_igl(std::size_t n, int order);
// Weyl extension of igl(n): x-block, P-block, L-block.
std::shared_ptr<GeneratorSystem> make_weyl_igl(std::size_t n, int order);
// Poincare algebra in physical generators: P_0..P_3, M_1..3, N_1..3.
std::shared_ptr<GeneratorSystem> make_io13_physical(int order);
// Weyl extension of io(1,3): x-block, p-block, M-block, N-block.
std::shared_ptr<GeneratorSystem> make_weyl_io13(int order);
// Solvable coordinate algebra: [X^0, X^k] = scale * i X^k (scale = h or 1/kappa).
std::shared_ptr<GeneratorSystem> make_an(std::size_t n, int order, const HSeries& scale);
// Commutative polynomial coordinates x^0..x^{n-1}.
std::shared_ptr<GeneratorSystem> make_coordinates(std::size_t n, int order);
// Custom system from the plain-text straightening format:
//   generators: <name> <name> ...
//   <g_j> <g_i> -> <element expression>      (one line per noncommuting pair)
std::shared_ptr<GeneratorSystem> make_custom(std::string_view text, int order);

// Index helpers for the presets above.
struct WeylIndices {
    std::size_t n;
    GenIndex x(std::size_t mu) const { return static_cast<GenIndex>(mu); }
    GenIndex p(std::size_t mu) const { return static_cast<GenIndex>(n + mu); }
};
struct IglIndices {
    std::size_t n;
    GenIndex P(std::size_t mu) const { return static_cast<GenIndex>(mu); }
    GenIndex L(std::size_t mu, std::size_t nu) const { return static_cast<GenIndex>(n + mu * n + nu); }
};
struct WeylIglIndices {
    std::size_t n;
    GenIndex x(std::size_t mu) const { return static_cast<GenIndex>(mu); }
    GenIndex P(std::size_t mu) const { return static_cast<GenIndex>(n + mu); }
    GenIndex L(std::size_t mu, std::size_t nu) const { return static_cast<GenIndex>(2 * n + mu * n + nu); }
};
struct Io13Indices {
    GenIndex P(std::size_t mu) const { return static_cast<GenIndex>(mu); }
    GenIndex M(std::size_t i) const { return static_cast<GenIndex>(3 + i); }   // i = 1..3
    GenIndex N(std::size_t i) const { return static_cast<GenIndex>(6 + i); }   // i = 1..3
};
struct WeylIo13Indices {
    GenIndex x(std::size_t mu) const { return static_cast<GenIndex>(mu); }
    GenIndex p(std::size_t mu) const { return static_cast<GenIndex>(4 + mu); }
    GenIndex M(std::size_t i) const { return static_cast<GenIndex>(7 + i); }
    GenIndex N(std::size_t i) const { return static_cast<GenIndex>(10 + i); }
};

int levi_civita(std::size_t i, std::size_t j, std::size_t k);

}  // namespace kappa
