#include "kappa/tensor.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>

namespace kappa {

bool MonoTuple::operator<(const MonoTuple& o) const {
    int da = degree(), db = o.degree();
    if (da != db) return da < db;
    for (int k = 0; k < rank; ++k) {
        const auto& a = legs[static_cast<std::size_t>(k)];
        const auto& b = o.legs[static_cast<std::size_t>(k)];
        if (a == b) continue;
        return a < b;
    }
    return false;
}

int MonoTuple::degree() const {
    int d = 0;
    for (int k = 0; k < rank; ++k) d += legs[static_cast<std::size_t>(k)].degree();
    return d;
}

TensorElement::TensorElement(SystemPtr sys, int rank, int order)
    : sys_(std::move(sys)), rank_(rank), order_(order) {}

TensorElement TensorElement::unit(SystemPtr sys, int rank, int order) {
    TensorElement t(sys, rank, order);
    MonoTuple key;
    key.rank = rank;
    for (int k = 0; k < rank; ++k) key.legs[static_cast<std::size_t>(k)] = Monomial(sys->num_generators());
    t.terms_.emplace(std::move(key), HSeries::constant(1, order));
    return t;
}

TensorElement TensorElement::outer(const AlgebraElement& a, const AlgebraElement& b) {
    TensorElement t(a.system(), 2, std::min(a.order(), b.order()));
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            MonoTuple key;
            key.rank = 2;
            key.legs[0] = ma;
            key.legs[1] = mb;
            key.legs[2] = Monomial(0);
            t.add_term(key, ca * cb);
        }
    return t;
}

TensorElement TensorElement::outer3(const AlgebraElement& a, const AlgebraElement& b,
                                    const AlgebraElement& c) {
    TensorElement t(a.system(), 3, std::min({a.order(), b.order(), c.order()}));
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            for (const auto& [mc, cc] : c.terms()) {
                MonoTuple key;
                key.rank = 3;
                key.legs = {ma, mb, mc};
                t.add_term(key, ca * cb * cc);
            }
    return t;
}

void TensorElement::add_term(const MonoTuple& t, const HSeries& c) {
    HSeries tc = c.truncated(order_);
    if (tc.is_zero()) return;
    auto it = terms_.find(t);
    if (it == terms_.end()) {
        terms_.emplace(t, std::move(tc));
    } else {
        it->second += tc;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void TensorElement::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second = it->second.truncated(order_);
        if (it->second.is_zero()) it = terms_.erase(it);
        else ++it;
    }
}

TensorElement TensorElement::operator-() const {
    TensorElement r = *this;
    for (auto& [t, c] : r.terms_) c = -c;
    return r;
}

TensorElement operator+(const TensorElement& a, const TensorElement& b) {
    if (!a.sys_) return b;
    if (!b.sys_) return a;
    TensorElement r(a.sys_, a.rank_, std::min(a.order_, b.order_));
    r.terms_ = a.terms_;
    r.normalize();
    for (const auto& [t, c] : b.terms_) r.add_term(t, c);
    return r;
}

TensorElement operator-(const TensorElement& a, const TensorElement& b) { return a + (-b); }

TensorElement TensorElement::scaled(const HSeries& c) const {
    TensorElement r(sys_, rank_, std::min(order_, c.order()));
    for (const auto& [t, s] : terms_) r.add_term(t, s * c);
    return r;
}

TensorElement TensorElement::scaled(const GaussianRational& c) const {
    TensorElement r = *this;
    for (auto& [t, s] : r.terms_) s = s * c;
    r.normalize();
    return r;
}

TensorElement TensorElement::shifted(int k) const {
    TensorElement r(sys_, rank_, order_ + k);
    for (const auto& [t, s] : terms_) {
        HSeries sh = s.shifted(k);
        if (!sh.is_zero()) r.terms_.emplace(t, std::move(sh));
    }
    return r;
}

TensorElement TensorElement::truncated(int order) const {
    TensorElement r(sys_, rank_, order);
    r.terms_ = terms_;
    r.normalize();
    return r;
}

bool TensorElement::equals(const TensorElement& o) const { return (*this - o).is_zero(); }

namespace {

// Normal form of the monomial product a*b as a term map at the system order.
TermMap mono_product(const GeneratorSystem& sys, const Monomial& a, const Monomial& b) {
    TermMap cur;
    cur.emplace(b, HSeries::constant(1, sys.order()));
    Word wa = a.word();
    for (auto it = wa.rbegin(); it != wa.rend(); ++it) {
        TermMap next;
        for (const auto& [mono, c] : cur) {
            for (const auto& [m2, c2] : *sys.left_mul_generator(*it, mono)) {
                HSeries prod = c * c2;
                if (prod.is_zero()) continue;
                auto jt = next.find(m2);
                if (jt == next.end()) next.emplace(m2, std::move(prod));
                else {
                    jt->second += prod;
                    if (jt->second.is_zero()) next.erase(jt);
                }
            }
        }
        cur = std::move(next);
    }
    return cur;
}

void accumulate_term(TensorTermMap& acc, MonoTuple key, HSeries c) {
    auto it = acc.find(key);
    if (it == acc.end()) acc.emplace(std::move(key), std::move(c));
    else {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

void accumulate_pair(TensorTermMap& acc, const GeneratorSystem& sys, int rank, int order,
                     const MonoTuple& ta, const HSeries& ca, const MonoTuple& tb, const HSeries& cb) {
    HSeries c = (ca * cb).truncated(order);
    if (c.is_zero()) return;
    std::array<TermMap, 3> factors;
    for (int k = 0; k < rank; ++k)
        factors[static_cast<std::size_t>(k)] =
            mono_product(sys, ta.legs[static_cast<std::size_t>(k)], tb.legs[static_cast<std::size_t>(k)]);
    for (const auto& [m0, c0] : factors[0]) {
        HSeries c01 = (c * c0).truncated(order);
        if (c01.is_zero()) continue;
        for (const auto& [m1, c1] : factors[1]) {
            HSeries c012 = (c01 * c1).truncated(order);
            if (c012.is_zero()) continue;
            if (rank == 2) {
                MonoTuple key;
                key.rank = 2;
                key.legs[0] = m0;
                key.legs[1] = m1;
                key.legs[2] = Monomial(0);
                accumulate_term(acc, std::move(key), std::move(c012));
            } else {
                for (const auto& [m2, c2] : factors[2]) {
                    HSeries call = (c012 * c2).truncated(order);
                    if (call.is_zero()) continue;
                    MonoTuple key;
                    key.rank = 3;
                    key.legs = {m0, m1, m2};
                    accumulate_term(acc, std::move(key), std::move(call));
                }
            }
        }
    }
}

}  // namespace

TensorElement TensorElement::mul_serial(const TensorElement& o) const {
    if (rank_ != o.rank_) throw std::invalid_argument("TensorElement: rank mismatch");
    TensorElement r(sys_, rank_, std::min(order_, o.order_));
    for (const auto& [ta, ca] : terms_)
        for (const auto& [tb, cb] : o.terms_) accumulate_pair(r.terms_, *sys_, rank_, r.order_, ta, ca, tb, cb);
    return r;
}

TensorElement TensorElement::mul_parallel(const TensorElement& o) const {
    if (rank_ != o.rank_) throw std::invalid_argument("TensorElement: rank mismatch");
    TensorElement r(sys_, rank_, std::min(order_, o.order_));
    std::vector<const std::pair<const MonoTuple, HSeries>*> lhs;
    lhs.reserve(terms_.size());
    for (const auto& t : terms_) lhs.push_back(&t);

    std::vector<TensorTermMap> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel for schedule(dynamic)
    for (std::size_t idx = 0; idx < lhs.size(); ++idx) {
        TensorTermMap& acc = partial[static_cast<std::size_t>(omp_get_thread_num())];
        for (const auto& [tb, cb] : o.terms_)
            accumulate_pair(acc, *sys_, rank_, r.order_, lhs[idx]->first, lhs[idx]->second, tb, cb);
    }
    for (auto& acc : partial)
        for (auto& [t, c] : acc) r.add_term(t, c);
    return r;
}

TensorElement operator*(const TensorElement& a, const TensorElement& b) {
    // Exact arithmetic makes the merge order irrelevant, so the parallel
    // kernel is bit-identical to the serial reference.
    if (a.term_count() * b.term_count() >= 512 && omp_get_max_threads() > 1) return a.mul_parallel(b);
    return a.mul_serial(b);
}

TensorElement TensorElement::exp() const {
    for (const auto& [t, c] : terms_)
        if (c.valuation() < 1) throw std::domain_error("TensorElement::exp requires an O(h) argument");
    TensorElement result = unit(sys_, rank_, order_);
    TensorElement term = result;
    Rational fact(1);
    for (int m = 1; m <= order_; ++m) {
        term = term * *this;
        if (term.is_zero()) break;
        fact *= m;
        result += term.scaled(GaussianRational(Rational(1) / fact));
    }
    return result;
}

TensorElement TensorElement::invert() const {
    TensorElement v = *this - unit(sys_, rank_, order_);
    for (const auto& [t, c] : v.terms_)
        if (c.valuation() < 1) throw std::domain_error("TensorElement::invert requires 1 + O(h) form");
    TensorElement result = unit(sys_, rank_, order_);
    TensorElement term = result;
    for (int m = 1; m <= order_; ++m) {
        term = term * v;
        if (term.is_zero()) break;
        result += m % 2 == 1 ? -term : term;
    }
    return result;
}

TensorElement TensorElement::swap12() const {
    if (rank_ != 2) throw std::invalid_argument("swap12: rank-2 only");
    TensorElement r(sys_, 2, order_);
    for (const auto& [t, c] : terms_) {
        MonoTuple key = t;
        std::swap(key.legs[0], key.legs[1]);
        r.terms_.emplace(std::move(key), c);
    }
    return r;
}

TensorElement TensorElement::negate_h() const {
    TensorElement r = *this;
    for (auto& [t, c] : r.terms_) c = c.negate_h();
    return r;
}

TensorElement TensorElement::insert_unit_leg(int pos) const {
    if (rank_ != 2) throw std::invalid_argument("insert_unit_leg: rank-2 only");
    TensorElement r(sys_, 3, order_);
    Monomial unit_mono(sys_->num_generators());
    for (const auto& [t, c] : terms_) {
        MonoTuple key;
        key.rank = 3;
        int src = 0;
        for (int k = 0; k < 3; ++k)
            key.legs[static_cast<std::size_t>(k)] =
                (k == pos) ? unit_mono : t.legs[static_cast<std::size_t>(src++)];
        r.terms_.emplace(std::move(key), c);
    }
    return r;
}

AlgebraElement TensorElement::multiply_legs() const {
    AlgebraElement r = AlgebraElement::zero(sys_, order_);
    for (const auto& [t, c] : terms_) {
        TermMap seed;
        seed.emplace(t.legs[0], HSeries::constant(1, order_));
        AlgebraElement prod = AlgebraElement::from_terms(sys_, order_, std::move(seed));
        for (int k = 1; k < rank_; ++k) {
            TermMap f;
            f.emplace(t.legs[static_cast<std::size_t>(k)], HSeries::constant(1, order_));
            prod = prod * AlgebraElement::from_terms(sys_, order_, std::move(f));
        }
        r += prod.scaled(c);
    }
    return r;
}

TensorElement TensorElement::h_coefficient(int k) const {
    TensorElement r(sys_, rank_, order_);
    for (const auto& [t, c] : terms_) {
        GaussianRational ck = c.coeff(k);
        if (!ck.is_zero()) r.terms_.emplace(t, HSeries::constant(ck, order_));
    }
    return r;
}

std::string TensorElement::str() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const MonoTuple, HSeries>*> sorted;
    sorted.reserve(terms_.size());
    for (const auto& t : terms_) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return a->first < b->first; });
    auto mono_str = [this](const Monomial& m) -> std::string {
        if (m.is_unit()) return "1";
        std::ostringstream os;
        bool first = true;
        for (GenIndex g = 0; g < m.exp.size(); ++g) {
            if (m.exp[g] == 0) continue;
            if (!first) os << " ";
            first = false;
            os << sys_->generator(g).name;
            if (m.exp[g] > 1) os << "^" << static_cast<int>(m.exp[g]);
        }
        return os.str();
    };
    std::ostringstream os;
    bool first = true;
    for (const auto* t : sorted) {
        if (!first) os << " + ";
        first = false;
        std::string cs = t->second.str();
        if (cs != "1") os << "(" << cs << ") ";
        os << mono_str(t->first.legs[0]);
        for (int k = 1; k < rank_; ++k) os << " (x) " << mono_str(t->first.legs[static_cast<std::size_t>(k)]);
    }
    return os.str();
}

}  // namespace kappa
