#include "kappa/pbw.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace kappa {

namespace {

// dst += src * c, keeping only coefficients known at `order`.
void add_scaled(TermMap& dst, const TermMap& src, const HSeries& c, int order) {
    if (c.is_zero()) return;
    for (const auto& [m, s] : src) {
        HSeries prod = (s * c).truncated(order);
        if (prod.is_zero()) continue;
        auto it = dst.find(m);
        if (it == dst.end()) {
            dst.emplace(m, std::move(prod));
        } else {
            it->second += prod;
            if (it->second.is_zero()) dst.erase(it);
        }
    }
}

void add_term_map(TermMap& dst, const Monomial& m, HSeries c) {
    if (c.is_zero()) return;
    auto it = dst.find(m);
    if (it == dst.end()) {
        dst.emplace(m, std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) dst.erase(it);
    }
}

}  // namespace

int Monomial::degree() const {
    int d = 0;
    for (auto e : exp) d += e;
    return d;
}

Word Monomial::word() const {
    Word w;
    for (GenIndex g = 0; g < exp.size(); ++g)
        for (int k = 0; k < exp[g]; ++k) w.push_back(g);
    return w;
}

bool Monomial::operator<(const Monomial& o) const {
    int da = degree(), db = o.degree();
    if (da != db) return da < db;
    return exp < o.exp;
}

// ---------------------------------------------------------------------------
// GeneratorSystem

std::shared_ptr<GeneratorSystem> GeneratorSystem::create(std::vector<GeneratorInfo> gens, int order) {
    auto sys = std::shared_ptr<GeneratorSystem>(new GeneratorSystem());
    sys->gens_ = std::move(gens);
    sys->order_ = order;
    if (sys->gens_.size() > 200) throw std::invalid_argument("GeneratorSystem: too many generators");
    return sys;
}

GenIndex GeneratorSystem::index_of(std::string_view name) const {
    for (GenIndex g = 0; g < gens_.size(); ++g)
        if (gens_[g].name == name) return g;
    throw std::invalid_argument("GeneratorSystem: unknown generator " + std::string(name));
}

void GeneratorSystem::set_straighten(GenIndex j, GenIndex i, TermMap remainder) {
    if (j <= i) throw std::invalid_argument("set_straighten: need j > i in the generator order");
    for (auto it = remainder.begin(); it != remainder.end();) {
        if (it->second.is_zero()) it = remainder.erase(it);
        else ++it;
    }
    {
        std::unique_lock lock(cache_mutex_);
        cache_.clear();
    }
    if (remainder.empty()) {
        straighten_.erase(static_cast<std::uint16_t>(j << 8 | i));
        return;
    }
    straighten_[static_cast<std::uint16_t>(j << 8 | i)] = std::move(remainder);
}

void GeneratorSystem::set_inverse_pair(GenIndex a, GenIndex b) {
    if (a >= b) throw std::invalid_argument("set_inverse_pair: need a < b");
    if (has_remainder(b, a)) throw std::invalid_argument("set_inverse_pair: pair must commute");
    {
        std::unique_lock lock(cache_mutex_);
        cache_.clear();
    }
    inverse_pair_ = {a, b};
}

bool GeneratorSystem::has_remainder(GenIndex j, GenIndex i) const {
    return straighten_.count(static_cast<std::uint16_t>(j << 8 | i)) != 0;
}

const TermMap* GeneratorSystem::remainder(GenIndex j, GenIndex i) const {
    auto it = straighten_.find(static_cast<std::uint16_t>(j << 8 | i));
    return it == straighten_.end() ? nullptr : &it->second;
}

void GeneratorSystem::cancel_inverses(Monomial& m) const {
    if (!inverse_pair_) return;
    auto [a, b] = *inverse_pair_;
    std::uint8_t c = std::min(m.exp[a], m.exp[b]);
    m.exp[a] = static_cast<std::uint8_t>(m.exp[a] - c);
    m.exp[b] = static_cast<std::uint8_t>(m.exp[b] - c);
}

std::shared_ptr<const TermMap> GeneratorSystem::left_mul_generator(GenIndex g, const Monomial& m) const {
    CacheKey key{g, m};
    {
        std::shared_lock lock(cache_mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    auto result = std::make_shared<const TermMap>(left_mul_uncached(g, m));
    {
        std::unique_lock lock(cache_mutex_);
        auto [it, inserted] = cache_.emplace(std::move(key), result);
        if (!inserted) return it->second;
    }
    return result;
}

TermMap GeneratorSystem::left_mul_uncached(GenIndex g, const Monomial& m) const {
    TermMap result;
    GenIndex first = 0;
    while (first < m.exp.size() && m.exp[first] == 0) ++first;

    if (first >= m.exp.size() || g <= first) {
        Monomial m2 = m;
        m2.exp[g] = static_cast<std::uint8_t>(m2.exp[g] + 1);
        cancel_inverses(m2);
        result.emplace(std::move(m2), HSeries::constant(1, order_));
        return result;
    }

    Monomial rest = m;
    rest.exp[first] = static_cast<std::uint8_t>(rest.exp[first] - 1);

    // g * m = first * (g * rest) + R_{g,first} * rest
    auto inner = left_mul_generator(g, rest);
    for (const auto& [mono, c] : *inner) {
        auto lifted = left_mul_generator(first, mono);
        add_scaled(result, *lifted, c, order_);
    }
    if (const TermMap* rem = remainder(g, first)) {
        for (const auto& [rmono, rc] : *rem) {
            // rmono * rest, folding the word of rmono from the right
            TermMap cur;
            cur.emplace(rest, HSeries::constant(1, order_));
            Word w = rmono.word();
            for (auto it = w.rbegin(); it != w.rend(); ++it) {
                TermMap next;
                for (const auto& [mono, c] : cur) add_scaled(next, *left_mul_generator(*it, mono), c, order_);
                cur = std::move(next);
            }
            add_scaled(result, cur, rc, order_);
        }
    }
    return result;
}

TermMap GeneratorSystem::normal_form_word(const Word& w) const {
    TermMap cur;
    cur.emplace(Monomial(num_generators()), HSeries::constant(1, order_));
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        TermMap next;
        for (const auto& [mono, c] : cur) add_scaled(next, *left_mul_generator(*it, mono), c, order_);
        cur = std::move(next);
    }
    return cur;
}

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement AlgebraElement::zero(SystemPtr sys, int order) { return AlgebraElement(std::move(sys), order); }

AlgebraElement AlgebraElement::scalar(SystemPtr sys, HSeries c) {
    AlgebraElement e(sys, c.order());
    if (!c.is_zero()) e.terms_.emplace(Monomial(sys->num_generators()), std::move(c));
    return e;
}

AlgebraElement AlgebraElement::scalar(SystemPtr sys, GaussianRational c, int order) {
    return scalar(std::move(sys), HSeries::constant(std::move(c), order));
}

AlgebraElement AlgebraElement::one(SystemPtr sys, int order) {
    return scalar(std::move(sys), GaussianRational(1), order);
}

AlgebraElement AlgebraElement::generator(SystemPtr sys, GenIndex g, int order) {
    AlgebraElement e(sys, order);
    Monomial m(sys->num_generators());
    m.exp[g] = 1;
    e.terms_.emplace(std::move(m), HSeries::constant(1, order));
    return e;
}

AlgebraElement AlgebraElement::from_terms(SystemPtr sys, int order, TermMap terms) {
    AlgebraElement e(std::move(sys), order);
    e.terms_ = std::move(terms);
    e.normalize();
    return e;
}

AlgebraElement AlgebraElement::from_word(SystemPtr sys, const Word& w, int order) {
    TermMap nf = sys->normal_form_word(w);
    return from_terms(std::move(sys), order, std::move(nf));
}

int AlgebraElement::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

HSeries AlgebraElement::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? HSeries::zero(order_) : it->second;
}

HSeries AlgebraElement::scalar_part() const {
    if (!sys_) return HSeries::zero(order_);
    return coefficient(Monomial(sys_->num_generators()));
}

void AlgebraElement::add_term(const Monomial& m, const HSeries& c) {
    add_term_map(terms_, m, c.truncated(order_));
}

void AlgebraElement::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second = it->second.truncated(order_);
        if (it->second.is_zero()) it = terms_.erase(it);
        else ++it;
    }
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    if (!a.sys_) return b;
    if (!b.sys_) return a;
    AlgebraElement r(a.sys_, std::min(a.order_, b.order_));
    r.terms_ = a.terms_;
    for (const auto& [m, c] : b.terms_) add_term_map(r.terms_, m, c);
    r.normalize();
    return r;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) { return a + (-b); }

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement r(a.sys_, std::min(a.order_, b.order_));
    const GeneratorSystem& sys = *a.sys_;
    for (const auto& [ma, ca] : a.terms_) {
        Word wa = ma.word();
        for (const auto& [mb, cb] : b.terms_) {
            HSeries c = (ca * cb).truncated(r.order_);
            if (c.is_zero()) continue;
            TermMap cur;
            cur.emplace(mb, HSeries::constant(1, sys.order()));
            for (auto it = wa.rbegin(); it != wa.rend(); ++it) {
                TermMap next;
                for (const auto& [mono, cc] : cur) add_scaled(next, *sys.left_mul_generator(*it, mono), cc, sys.order());
                cur = std::move(next);
            }
            add_scaled(r.terms_, cur, c, r.order_);
        }
    }
    r.normalize();
    return r;
}

AlgebraElement AlgebraElement::scaled(const HSeries& c) const {
    AlgebraElement r(sys_, std::min(order_, c.order()));
    for (const auto& [m, s] : terms_) add_term_map(r.terms_, m, (s * c).truncated(r.order_));
    return r;
}

AlgebraElement AlgebraElement::scaled(const GaussianRational& c) const {
    AlgebraElement r = *this;
    for (auto& [m, s] : r.terms_) s = s * c;
    r.normalize();
    return r;
}

AlgebraElement AlgebraElement::shifted(int k) const {
    AlgebraElement r(sys_, order_ + k);
    for (const auto& [m, s] : terms_) {
        HSeries sh = s.shifted(k);
        if (!sh.is_zero()) r.terms_.emplace(m, std::move(sh));
    }
    return r;
}

AlgebraElement AlgebraElement::truncated(int order) const {
    AlgebraElement r(sys_, order);
    r.terms_ = terms_;
    r.normalize();
    return r;
}

bool AlgebraElement::equals(const AlgebraElement& o) const { return (*this - o).is_zero(); }

bool AlgebraElement::is_regular() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.second.valuation() >= 0; });
}

AlgebraElement AlgebraElement::classical_part() const {
    AlgebraElement r(sys_, order_);
    for (const auto& [m, c] : terms_) {
        GaussianRational c0 = c.coeff(0);
        if (!c0.is_zero()) r.terms_.emplace(m, HSeries::constant(c0, order_));
    }
    return r;
}

AlgebraElement AlgebraElement::h_coefficient(int k) const {
    AlgebraElement r(sys_, order_);
    for (const auto& [m, c] : terms_) {
        GaussianRational ck = c.coeff(k);
        if (!ck.is_zero()) r.terms_.emplace(m, HSeries::constant(ck, order_));
    }
    return r;
}

AlgebraElement AlgebraElement::exp() const {
    for (const auto& [m, c] : terms_)
        if (c.valuation() < 1) throw std::domain_error("AlgebraElement::exp requires an O(h) element");
    AlgebraElement result = one(sys_, order_);
    AlgebraElement term = result;
    Rational fact(1);
    for (int m = 1; m <= order_; ++m) {
        term = term * *this;
        if (term.is_zero()) break;
        fact *= m;
        result += term.scaled(GaussianRational(Rational(1) / fact));
    }
    return result;
}

AlgebraElement AlgebraElement::log() const {
    if (!scalar_part().is_one()) throw std::domain_error("AlgebraElement::log requires constant part 1");
    AlgebraElement v = *this - one(sys_, order_);
    for (const auto& [m, c] : v.terms_)
        if (c.valuation() < 1) throw std::domain_error("AlgebraElement::log requires 1 + O(h) form");
    AlgebraElement result = zero(sys_, order_);
    AlgebraElement term = one(sys_, order_);
    for (int m = 1; m <= order_; ++m) {
        term = term * v;
        if (term.is_zero()) break;
        result += term.scaled(GaussianRational(Rational(m % 2 == 1 ? 1 : -1, m)));
    }
    return result;
}

AlgebraElement AlgebraElement::invert() const {
    HSeries c0 = scalar_part();
    if (c0.is_zero() || c0.valuation() != 0)
        throw std::domain_error("AlgebraElement::invert requires an invertible scalar part");
    HSeries c0inv = c0.inverted();
    AlgebraElement v = (*this - scalar(sys_, c0)).scaled(c0inv);  // O(h) by requirement
    for (const auto& [m, c] : v.terms_)
        if (c.valuation() < 1) throw std::domain_error("AlgebraElement::invert requires 1 + O(h) form");
    AlgebraElement result = one(sys_, order_);
    AlgebraElement term = result;
    for (int m = 1; m <= order_; ++m) {
        term = term * v;
        if (term.is_zero()) break;
        result += m % 2 == 1 ? -term : term;
    }
    return result.scaled(c0inv);
}

AlgebraElement AlgebraElement::pow(const Rational& beta) const {
    HSeries c0 = scalar_part();
    if (!c0.is_one()) throw std::domain_error("AlgebraElement::pow requires constant part 1");
    AlgebraElement v = *this - one(sys_, order_);
    for (const auto& [m, c] : v.terms_)
        if (c.valuation() < 1) throw std::domain_error("AlgebraElement::pow requires 1 + O(h) form");
    AlgebraElement result = one(sys_, order_);
    AlgebraElement term = result;
    Rational binom(1);
    for (int m = 0; m < order_; ++m) {
        binom *= (beta - m) / (m + 1);
        term = term * v;
        if (term.is_zero() || binom == 0) break;
        result += term.scaled(GaussianRational(binom));
    }
    return result;
}

AlgebraElement AlgebraElement::dagger() const {
    AlgebraElement r(sys_, order_);
    for (const auto& [m, c] : terms_) {
        for (GenIndex g = 0; g < m.exp.size(); ++g)
            if (m.exp[g] > 0 && !sys_->generator(g).self_adjoint)
                throw std::domain_error("dagger: generator " + sys_->generator(g).name +
                                        " is not flagged self-adjoint");
        Word w = m.word();
        std::reverse(w.begin(), w.end());
        TermMap nf = sys_->normal_form_word(w);
        add_scaled(r.terms_, nf, c.conj(), r.order_);
    }
    r.normalize();
    return r;
}

std::string AlgebraElement::str() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Monomial, HSeries>*> sorted;
    sorted.reserve(terms_.size());
    for (const auto& t : terms_) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return a->first < b->first; });
    std::ostringstream os;
    bool first = true;
    for (const auto* t : sorted) {
        if (!first) os << " + ";
        first = false;
        std::string cs = t->second.str();
        bool composite = cs.find_first_of("+-") != std::string::npos && cs.size() > 1;
        if (t->first.is_unit()) {
            os << cs;
            continue;
        }
        if (cs != "1") os << (composite ? "(" + cs + ")" : cs) << " ";
        bool firstgen = true;
        for (GenIndex g = 0; g < t->first.exp.size(); ++g) {
            if (t->first.exp[g] == 0) continue;
            if (!firstgen) os << " ";
            firstgen = false;
            os << sys_->generator(g).name;
            if (t->first.exp[g] > 1) os << "^" << static_cast<int>(t->first.exp[g]);
        }
    }
    return os.str();
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) { return a * b - b * a; }

// ---------------------------------------------------------------------------
// relation harness

std::vector<RelationResult> check_relations(const std::vector<Relation>& relations) {
    std::vector<RelationResult> out;
    out.reserve(relations.size());
    for (const auto& rel : relations) {
        AlgebraElement residual = rel.lhs - rel.rhs;
        RelationResult r;
        r.name = rel.name;
        r.ok = residual.is_zero();
        r.effective_order = residual.order();
        if (!r.ok) r.residual = residual.str();
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<RelationResult> check_pbw_confluence(const SystemPtr& sys) {
    std::vector<RelationResult> out;
    int order = sys->order();
    auto n = static_cast<GenIndex>(sys->num_generators());
    for (GenIndex a = 0; a < n; ++a) {
        for (GenIndex b = 0; b <= a; ++b) {
            for (GenIndex c = 0; c <= b; ++c) {
                AlgebraElement ea = AlgebraElement::generator(sys, a, order);
                AlgebraElement eb = AlgebraElement::generator(sys, b, order);
                AlgebraElement ec = AlgebraElement::generator(sys, c, order);
                AlgebraElement left = (ea * eb) * ec;
                AlgebraElement right = ea * (eb * ec);
                AlgebraElement residual = left - right;
                RelationResult r;
                r.name = "overlap(" + sys->generator(a).name + "," + sys->generator(b).name + "," +
                         sys->generator(c).name + ")";
                r.ok = residual.is_zero();
                r.effective_order = residual.order();
                if (!r.ok) r.residual = residual.str();
                out.push_back(std::move(r));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// expression parsing

namespace {

struct Token {
    enum Kind { Name, Number, Plus, Minus, Caret, End } kind;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    Token next() {
        while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*'))
            ++pos_;
        if (pos_ >= s_.size()) return {Token::End, ""};
        char c = s_[pos_];
        if (c == '+') { ++pos_; return {Token::Plus, "+"}; }
        if (c == '-') { ++pos_; return {Token::Minus, "-"}; }
        if (c == '^') { ++pos_; return {Token::Caret, "^"}; }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
                ++pos_;
            return {Token::Number, std::string(s_.substr(start, pos_ - start))};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return {Token::Name, std::string(s_.substr(start, pos_ - start))};
        }
        throw std::invalid_argument(std::string("parse_element: unexpected character '") + c + "'");
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

namespace {

struct RawTerm {
    HSeries coeff;
    Word word;
};

std::vector<RawTerm> parse_raw_terms(const SystemPtr& sys, std::string_view text, int order) {
    Lexer lex(text);
    std::vector<RawTerm> out;
    Token tok = lex.next();
    if (tok.kind == Token::End) return out;
    while (true) {
        GaussianRational sign(1);
        bool saw_sign = false;
        while (tok.kind == Token::Plus || tok.kind == Token::Minus) {
            if (tok.kind == Token::Minus) sign = -sign;
            saw_sign = true;
            tok = lex.next();
        }
        if (tok.kind == Token::End) {
            if (saw_sign) throw std::invalid_argument("parse_element: dangling sign");
            break;
        }
        HSeries coeff = HSeries::constant(sign, order);
        Word w;
        bool any_factor = false;
        while (tok.kind == Token::Number || tok.kind == Token::Name) {
            int power = 1;
            Token cur = tok;
            tok = lex.next();
            if (tok.kind == Token::Caret) {
                Token p = lex.next();
                if (p.kind != Token::Number) throw std::invalid_argument("parse_element: expected exponent");
                power = std::stoi(p.text);
                tok = lex.next();
            }
            if (cur.kind == Token::Number) {
                Rational v = parse_rational(cur.text);
                Rational pw(1);
                for (int k = 0; k < power; ++k) pw *= v;
                coeff = coeff * GaussianRational(pw);
            } else if (cur.text == "i") {
                GaussianRational f(1);
                for (int k = 0; k < power; ++k) f *= GaussianRational::i();
                coeff = coeff * f;
            } else if (cur.text == "h") {
                coeff = coeff.shifted(power).truncated(order);
            } else {
                GenIndex g = sys->index_of(cur.text);
                for (int k = 0; k < power; ++k) w.push_back(g);
            }
            any_factor = true;
        }
        if (!any_factor) throw std::invalid_argument("parse_element: empty term");
        out.push_back({std::move(coeff), std::move(w)});
        if (tok.kind == Token::End) break;
        if (tok.kind != Token::Plus && tok.kind != Token::Minus)
            throw std::invalid_argument("parse_element: expected + or -");
    }
    return out;
}

}  // namespace

AlgebraElement parse_element(const SystemPtr& sys, std::string_view text, int order) {
    AlgebraElement result = AlgebraElement::zero(sys, order);
    for (const auto& term : parse_raw_terms(sys, text, sys->order())) {
        TermMap nf = sys->normal_form_word(term.word);
        AlgebraElement e = AlgebraElement::zero(sys, order);
        for (const auto& [m, c] : nf) e.add_term(m, c * term.coeff);
        result += e;
    }
    return result;
}

// ---------------------------------------------------------------------------
// presets

std::vector<std::vector<Rational>> minkowski_metric(std::size_t n) {
    std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n, Rational(0)));
    g[0][0] = -1;
    for (std::size_t k = 1; k < n; ++k) g[k][k] = 1;
    return g;
}

int levi_civita(std::size_t i, std::size_t j, std::size_t k) {
    if (i == j || j == k || i == k) return 0;
    if ((i == 1 && j == 2 && k == 3) || (i == 2 && j == 3 && k == 1) || (i == 3 && j == 1 && k == 2)) return 1;
    return -1;
}

namespace {

TermMap single(const SystemPtr& sys, GenIndex g, GaussianRational c) {
    Monomial m(sys->num_generators());
    m.exp[g] = 1;
    TermMap t;
    t.emplace(std::move(m), HSeries::constant(std::move(c), sys->order()));
    return t;
}

TermMap unit_term(const SystemPtr& sys, GaussianRational c) {
    TermMap t;
    t.emplace(Monomial(sys->num_generators()), HSeries::constant(std::move(c), sys->order()));
    return t;
}

const GaussianRational kI = GaussianRational::i();

}  // namespace

std::shared_ptr<GeneratorSystem> make_weyl(std::size_t n, int order,
                                           std::vector<std::vector<Rational>> metric) {
    std::vector<GeneratorInfo> gens;
    for (std::size_t mu = 0; mu < n; ++mu) gens.push_back({"x" + std::to_string(mu)});
    for (std::size_t mu = 0; mu < n; ++mu) gens.push_back({"p" + std::to_string(mu)});
    auto sys = GeneratorSystem::create(std::move(gens), order);
    sys->set_metric(metric.empty() ? minkowski_metric(n) : std::move(metric));
    WeylIndices ix{n};
    for (std::size_t mu = 0; mu < n; ++mu)
        sys->set_straighten(ix.p(mu), ix.x(mu), unit_term(sys, -kI));  // [p_mu, x^nu] = -i delta
    return sys;
}

std::shared_ptr<GeneratorSystem> make_igl(std::size_t n, int order) {
    std::vector<GeneratorInfo> gens;
    for (std::size_t mu = 0; mu < n; ++mu) gens.push_back({"P" + std::to_string(mu)});
    for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu) gens.push_back({"L" + std::to_string(mu) + std::to_string(nu)});
    auto sys = GeneratorSystem::create(std::move(gens), order);
    sys->set_metric(minkowski_metric(n));
    IglIndices ix{n};
    // [L^mu_nu, P_lambda] = i delta^mu_lambda P_nu
    for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu)
            sys->set_straighten(ix.L(mu, nu), ix.P(mu), single(sys, ix.P(nu), kI));
    // [L^mu_nu, L^rho_lambda] = -i delta^rho_nu L^mu_lambda + i delta^mu_lambda L^rho_nu
    for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu)
            for (std::size_t rho = 0; rho < n; ++rho)
                for (std::size_t lam = 0; lam < n; ++lam) {
                    GenIndex hi = ix.L(mu, nu), lo = ix.L(rho, lam);
                    if (hi <= lo) continue;
                    TermMap rem;
                    if (rho == nu) add_term_map(rem, [&] {
                        Monomial m(sys->num_generators());
                        m.exp[ix.L(mu, lam)] = 1;
                        return m;
                    }(), HSeries::constant(-kI, order));
                    if (mu == lam) add_term_map(rem, [&] {
                        Monomial m(sys->num_generators());
                        m.exp[ix.L(rho, nu)] = 1;
                        return m;
                    }(), HSeries::constant(kI, order));
                    if (!rem.empty()) sys->set_straighten(hi, lo, std::move(rem));
                }
    return sys;
}

std::shared_ptr<GeneratorSystem> make_weyl_igl(std::size_t n, int order) {
    std::vector<GeneratorInfo> gens;
    for (std::size_t mu = 0; mu < n; ++mu) gens.push_back({"x" + std::to_string(mu)});
    for (std::size_t mu = 0; mu < n; ++mu) gens.push_back({"P" + std::to_string(mu)});
    for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu) gens.push_back({"L" + std::to_string(mu) + std::to_string(nu)});
    auto sys = GeneratorSystem::create(std::move(gens), order);
    sys->set_metric(minkowski_metric(n));
    WeylIglIndices ix{n};
    for (std::size_t mu = 0; mu < n; ++mu) sys->set_straighten(ix.P(mu), ix.x(mu), unit_term(sys, -kI));
    // [L^mu_nu, x^lambda] = -i delta^lambda_nu x^mu
    for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu)
            sys->set_straighten(ix.L(mu, nu), ix.x(nu), single(sys, ix.x(mu), -kI));
    for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu)
            sys->set_straighten(ix.L(mu, nu), ix.P(mu), single(sys, ix.P(nu), kI));
    for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu)
            for (std::size_t rho = 0; rho < n; ++rho)
                for (std::size_t lam = 0; lam < n; ++lam) {
                    GenIndex hi = ix.L(mu, nu), lo = ix.L(rho, lam);
                    if (hi <= lo) continue;
                    TermMap rem;
                    if (rho == nu) add_term_map(rem, [&] {
                        Monomial m(sys->num_generators());
                        m.exp[ix.L(mu, lam)] = 1;
                        return m;
                    }(), HSeries::constant(-kI, order));
                    if (mu == lam) add_term_map(rem, [&] {
                        Monomial m(sys->num_generators());
                        m.exp[ix.L(rho, nu)] = 1;
                        return m;
                    }(), HSeries::constant(kI, order));
                    if (!rem.empty()) sys->set_straighten(hi, lo, std::move(rem));
                }
    return sys;
}

namespace {

// Installs the io(1,3) physical-basis brackets among (M_i, N_i) and with a
// 4-vector momentum block at index `p_of(mu)`.
template <typename SysPtr, typename PIdx, typename MIdx, typename NIdx>
void install_io13_block(const SysPtr& sys, PIdx p_of, MIdx M_of, NIdx N_of, int order) {
    // [M_i, M_j] = i eps_ijk M_k   (straighten stores [hi, lo] remainders)
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = 1; j < i; ++j) {
            TermMap rem;
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, j, k);
                if (eps != 0) add_term_map(rem, [&] {
                    Monomial m(sys->num_generators());
                    m.exp[M_of(k)] = 1;
                    return m;
                }(), HSeries::constant(kI * GaussianRational(eps), order));
            }
            sys->set_straighten(M_of(i), M_of(j), std::move(rem));
        }
    // [N_i, M_j] = i eps_ijk N_k   (from [M_j, N_i] = i eps_jik N_k)
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = 1; j <= 3; ++j) {
            TermMap rem;
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, j, k);
                if (eps != 0) add_term_map(rem, [&] {
                    Monomial m(sys->num_generators());
                    m.exp[N_of(k)] = 1;
                    return m;
                }(), HSeries::constant(kI * GaussianRational(eps), order));
            }
            if (!rem.empty()) sys->set_straighten(N_of(i), M_of(j), std::move(rem));
        }
    // [N_i, N_j] = -i eps_ijk M_k
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = 1; j < i; ++j) {
            TermMap rem;
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, j, k);
                if (eps != 0) add_term_map(rem, [&] {
                    Monomial m(sys->num_generators());
                    m.exp[M_of(k)] = 1;
                    return m;
                }(), HSeries::constant(-kI * GaussianRational(eps), order));
            }
            sys->set_straighten(N_of(i), N_of(j), std::move(rem));
        }
    // [M_j, P_k] = i eps_jkl P_l ; [M_j, P_0] = 0
    for (std::size_t j = 1; j <= 3; ++j)
        for (std::size_t k = 1; k <= 3; ++k) {
            TermMap rem;
            for (std::size_t l = 1; l <= 3; ++l) {
                int eps = levi_civita(j, k, l);
                if (eps != 0) add_term_map(rem, [&] {
                    Monomial m(sys->num_generators());
                    m.exp[p_of(l)] = 1;
                    return m;
                }(), HSeries::constant(kI * GaussianRational(eps), order));
            }
            if (!rem.empty()) sys->set_straighten(M_of(j), p_of(k), std::move(rem));
        }
    // [N_j, P_k] = -i delta_jk P_0 ; [N_j, P_0] = -i P_j
    for (std::size_t j = 1; j <= 3; ++j) {
        sys->set_straighten(N_of(j), p_of(j), [&] {
            TermMap rem;
            add_term_map(rem, [&] {
                Monomial m(sys->num_generators());
                m.exp[p_of(0)] = 1;
                return m;
            }(), HSeries::constant(-kI, order));
            return rem;
        }());
        sys->set_straighten(N_of(j), p_of(0), [&] {
            TermMap rem;
            add_term_map(rem, [&] {
                Monomial m(sys->num_generators());
                m.exp[p_of(j)] = 1;
                return m;
            }(), HSeries::constant(-kI, order));
            return rem;
        }());
    }
}

}  // namespace

std::shared_ptr<GeneratorSystem> make_io13_physical(int order) {
    std::vector<GeneratorInfo> gens;
    for (std::size_t mu = 0; mu < 4; ++mu) gens.push_back({"P" + std::to_string(mu)});
    for (std::size_t i = 1; i <= 3; ++i) gens.push_back({"M" + std::to_string(i)});
    for (std::size_t i = 1; i <= 3; ++i) gens.push_back({"N" + std::to_string(i)});
    auto sys = GeneratorSystem::create(std::move(gens), order);
    sys->set_metric(minkowski_metric(4));
    Io13Indices ix;
    install_io13_block(sys, [&](std::size_t mu) { return ix.P(mu); },
                       [&](std::size_t i) { return ix.M(i); }, [&](std::size_t i) { return ix.N(i); },
                       order);
    return sys;
}

std::shared_ptr<GeneratorSystem> make_weyl_io13(int order) {
    std::vector<GeneratorInfo> gens;
    for (std::size_t mu = 0; mu < 4; ++mu) gens.push_back({"x" + std::to_string(mu)});
    for (std::size_t mu = 0; mu < 4; ++mu) gens.push_back({"p" + std::to_string(mu)});
    for (std::size_t i = 1; i <= 3; ++i) gens.push_back({"M" + std::to_string(i)});
    for (std::size_t i = 1; i <= 3; ++i) gens.push_back({"N" + std::to_string(i)});
    auto sys = GeneratorSystem::create(std::move(gens), order);
    sys->set_metric(minkowski_metric(4));
    WeylIo13Indices ix;
    for (std::size_t mu = 0; mu < 4; ++mu) sys->set_straighten(ix.p(mu), ix.x(mu), unit_term(sys, -kI));
    install_io13_block(sys, [&](std::size_t mu) { return ix.p(mu); },
                       [&](std::size_t i) { return ix.M(i); }, [&](std::size_t i) { return ix.N(i); },
                       order);
    // [M_i, x^l] = i eps_ilk x^k ; [M_i, x^0] = 0
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t l = 1; l <= 3; ++l) {
            TermMap rem;
            for (std::size_t k = 1; k <= 3; ++k) {
                int eps = levi_civita(i, l, k);
                if (eps != 0) add_term_map(rem, [&] {
                    Monomial m(sys->num_generators());
                    m.exp[ix.x(k)] = 1;
                    return m;
                }(), HSeries::constant(kI * GaussianRational(eps), order));
            }
            if (!rem.empty()) sys->set_straighten(ix.M(i), ix.x(l), std::move(rem));
        }
    // [N_i, x^j] = i delta_ij x^0 ; [N_i, x^0] = i x^i
    for (std::size_t i = 1; i <= 3; ++i) {
        sys->set_straighten(ix.N(i), ix.x(i), single(sys, ix.x(0), kI));
        sys->set_straighten(ix.N(i), ix.x(0), single(sys, ix.x(i), kI));
    }
    return sys;
}

std::shared_ptr<GeneratorSystem> make_an(std::size_t n, int order, const HSeries& scale) {
    std::vector<GeneratorInfo> gens;
    for (std::size_t mu = 0; mu < n; ++mu) gens.push_back({"X" + std::to_string(mu)});
    auto sys = GeneratorSystem::create(std::move(gens), order);
    sys->set_metric(minkowski_metric(n));
    // [X^0, X^k] = i * scale * X^k  =>  X^k X^0 = X^0 X^k - i scale X^k
    for (std::size_t k = 1; k < n; ++k) {
        TermMap rem;
        Monomial m(sys->num_generators());
        m.exp[k] = 1;
        rem.emplace(std::move(m), (scale * (-kI)).truncated(order));
        sys->set_straighten(static_cast<GenIndex>(k), 0, std::move(rem));
    }
    return sys;
}

std::shared_ptr<GeneratorSystem> make_coordinates(std::size_t n, int order) {
    std::vector<GeneratorInfo> gens;
    for (std::size_t mu = 0; mu < n; ++mu) gens.push_back({"x" + std::to_string(mu)});
    auto sys = GeneratorSystem::create(std::move(gens), order);
    sys->set_metric(minkowski_metric(n));
    return sys;
}

std::shared_ptr<GeneratorSystem> make_custom(std::string_view text, int order) {
    std::vector<std::pair<std::string, std::string>> rules;
    std::vector<GeneratorInfo> gens;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        auto hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        std::string trimmed(line);
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        if (!trimmed.empty()) trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
        if (!trimmed.empty()) {
            if (trimmed.rfind("generators:", 0) == 0) {
                std::istringstream is(trimmed.substr(11));
                std::string name;
                while (is >> name) gens.push_back({name});
            } else {
                auto arrow = trimmed.find("->");
                if (arrow == std::string::npos)
                    throw std::invalid_argument("make_custom: expected '->' in rule: " + trimmed);
                rules.emplace_back(trimmed.substr(0, arrow), trimmed.substr(arrow + 2));
            }
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    if (gens.empty()) throw std::invalid_argument("make_custom: missing 'generators:' line");
    auto sys = GeneratorSystem::create(std::move(gens), order);
    sys->set_metric(minkowski_metric(4));
    for (auto& [lhs_text, rhs_text] : rules) {
        std::istringstream is(lhs_text);
        std::string a, b, extra;
        if (!(is >> a >> b) || (is >> extra))
            throw std::invalid_argument("make_custom: rule LHS must be two generators: " + lhs_text);
        GenIndex j = sys->index_of(a), i = sys->index_of(b);
        if (j <= i) throw std::invalid_argument("make_custom: LHS must be out of order (g_j g_i with j > i)");
        // RHS words must already be normal-ordered; they are turned into
        // monomials directly so that rules may be installed in any order.
        TermMap rhs;
        for (const auto& term : parse_raw_terms(sys, rhs_text, order)) {
            if (!std::is_sorted(term.word.begin(), term.word.end()))
                throw std::invalid_argument("make_custom: RHS terms must be normal-ordered: " + rhs_text);
            Monomial m(sys->num_generators());
            for (GenIndex g : term.word) m.exp[g] = static_cast<std::uint8_t>(m.exp[g] + 1);
            add_term_map(rhs, m, term.coeff);
        }
        Monomial swap(sys->num_generators());
        swap.exp[i] = 1;
        swap.exp[j] = static_cast<std::uint8_t>(swap.exp[j] + 1);
        auto lead = rhs.find(swap);
        if (lead == rhs.end() || !lead->second.is_one())
            throw std::invalid_argument("make_custom: inconsistent table, rule for " + a + " " + b +
                                        " must contain " + b + " " + a + " with coefficient 1");
        rhs.erase(lead);
        sys->set_straighten(j, i, std::move(rhs));
    }
    return sys;
}

}  // namespace kappa
