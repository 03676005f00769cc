#include "kappa/hseries.hpp"

#include <algorithm>
#include <sstream>

namespace kappa {

namespace {
const GaussianRational kZero{};
}

HSeries HSeries::constant(GaussianRational c, int order) {
    HSeries s(order);
    if (!c.is_zero() && order >= 0) {
        s.low_ = 0;
        s.coeffs_.push_back(std::move(c));
    }
    return s;
}

HSeries HSeries::h_power(int k, int order) {
    HSeries s(order);
    if (k <= order) {
        s.low_ = k;
        s.coeffs_.push_back(GaussianRational(1));
    }
    return s;
}

HSeries HSeries::parse(std::string_view text, int order) {
    HSeries s(order);
    int k = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string_view item = comma == std::string_view::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        if (!item.empty() || comma != std::string_view::npos) s.set_coeff(k++, parse_gaussian(item));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return s;
}

const GaussianRational& HSeries::coeff(int k) const {
    if (coeffs_.empty() || k < low_ || k >= low_ + static_cast<int>(coeffs_.size())) return kZero;
    return coeffs_[static_cast<std::size_t>(k - low_)];
}

void HSeries::set_coeff(int k, GaussianRational c) {
    if (k > order_) return;
    if (coeffs_.empty()) {
        if (c.is_zero()) return;
        low_ = k;
        coeffs_.push_back(std::move(c));
        return;
    }
    int hi = low_ + static_cast<int>(coeffs_.size()) - 1;
    if (k < low_) {
        coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - k), GaussianRational{});
        low_ = k;
    } else if (k > hi) {
        coeffs_.resize(static_cast<std::size_t>(k - low_ + 1));
    }
    coeffs_[static_cast<std::size_t>(k - low_)] = std::move(c);
    normalize();
}

void HSeries::normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead == coeffs_.size() || low_ + static_cast<int>(lead) > order_) {
        coeffs_.clear();
        low_ = 0;
        return;
    }
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        low_ += static_cast<int>(lead);
    }
    int hi = low_ + static_cast<int>(coeffs_.size()) - 1;
    if (hi > order_) coeffs_.resize(coeffs_.size() - static_cast<std::size_t>(hi - order_));
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) low_ = 0;
}

bool HSeries::is_one() const {
    return coeffs_.size() == 1 && low_ == 0 && coeffs_[0] == GaussianRational(1);
}

HSeries HSeries::truncated(int new_order) const {
    HSeries r = *this;
    r.order_ = new_order;
    r.normalize();
    return r;
}

HSeries HSeries::shifted(int k) const {
    HSeries r = *this;
    r.low_ += k;
    r.order_ += k;
    return r;
}

HSeries HSeries::operator-() const {
    HSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

HSeries operator+(const HSeries& a, const HSeries& b) {
    HSeries r(std::min(a.order_, b.order_));
    if (a.coeffs_.empty() && b.coeffs_.empty()) return r;
    int lo = std::min(a.valuation(), b.valuation());
    int hi = r.order_;
    for (int k = lo; k <= hi; ++k) {
        GaussianRational c = a.coeff(k) + b.coeff(k);
        if (!c.is_zero()) r.set_coeff(k, std::move(c));
    }
    return r;
}

HSeries operator-(const HSeries& a, const HSeries& b) { return a + (-b); }

HSeries operator*(const HSeries& a, const HSeries& b) {
    int order = std::min(a.order_ + b.valuation(), b.order_ + a.valuation());
    HSeries r(order);
    if (a.coeffs_.empty() || b.coeffs_.empty()) return r;
    int lo = a.low_ + b.low_;
    if (lo > order) return r;
    std::vector<GaussianRational> acc(static_cast<std::size_t>(order - lo + 1));
    for (std::size_t ia = 0; ia < a.coeffs_.size(); ++ia) {
        if (a.coeffs_[ia].is_zero()) continue;
        for (std::size_t ib = 0; ib < b.coeffs_.size(); ++ib) {
            int k = a.low_ + static_cast<int>(ia) + b.low_ + static_cast<int>(ib);
            if (k > order) break;
            acc[static_cast<std::size_t>(k - lo)] += a.coeffs_[ia] * b.coeffs_[ib];
        }
    }
    r.low_ = lo;
    r.coeffs_ = std::move(acc);
    r.normalize();
    return r;
}

HSeries HSeries::operator*(const GaussianRational& c) const {
    if (c.is_zero()) return HSeries(order_);
    HSeries r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

HSeries HSeries::inverted() const {
    if (coeffs_.empty()) throw std::domain_error("HSeries: cannot invert the zero series");
    int v = low_;
    HSeries u = shifted(-v);  // regular with nonzero constant term
    int n = u.order_;
    GaussianRational c0inv = u.coeffs_[0].inverse();
    std::vector<GaussianRational> w(static_cast<std::size_t>(std::max(n, 0) + 1));
    if (n >= 0) {
        w[0] = c0inv;
        for (int k = 1; k <= n; ++k) {
            GaussianRational s;
            for (int j = 1; j <= k; ++j) {
                const GaussianRational& uj = u.coeff(j);
                if (!uj.is_zero() && !w[static_cast<std::size_t>(k - j)].is_zero())
                    s += uj * w[static_cast<std::size_t>(k - j)];
            }
            w[static_cast<std::size_t>(k)] = -(c0inv * s);
        }
    }
    HSeries res(n);
    res.low_ = 0;
    res.coeffs_ = std::move(w);
    res.normalize();
    return res.shifted(-v);
}

HSeries HSeries::exp() const {
    if (valuation() < 1) throw std::domain_error("HSeries::exp requires a series of order O(h)");
    HSeries result = HSeries::constant(1, order_);
    HSeries term = result;
    Rational fact(1);
    for (int m = 1; m <= order_; ++m) {
        term = term * *this;
        if (term.is_zero()) break;
        fact *= m;
        result += term * GaussianRational(Rational(1) / fact);
    }
    return result;
}

HSeries HSeries::log() const {
    if (!(constant_term() == GaussianRational(1)) || low_ < 0)
        throw std::domain_error("HSeries::log requires constant term 1");
    HSeries x = *this - HSeries::constant(1, order_);
    HSeries result = HSeries::zero(order_);
    HSeries term = HSeries::constant(1, order_);
    for (int m = 1; m <= order_; ++m) {
        term = term * x;
        if (term.is_zero()) break;
        GaussianRational c(Rational(m % 2 == 1 ? 1 : -1, m));
        result += term * c;
    }
    return result;
}

HSeries HSeries::pow(const Rational& beta) const {
    if (!(constant_term() == GaussianRational(1)) || low_ < 0)
        throw std::domain_error("HSeries::pow requires constant term 1");
    HSeries x = *this - HSeries::constant(1, order_);
    HSeries result = HSeries::constant(1, order_);
    HSeries term = result;
    Rational binom(1);
    for (int m = 0; m < order_; ++m) {
        binom *= (beta - m) / (m + 1);
        term = term * x;
        if (term.is_zero() || binom == 0) break;
        result += term * GaussianRational(binom);
    }
    return result;
}

HSeries HSeries::compose(const HSeries& g) const {
    if (g.valuation() < 1) throw std::domain_error("HSeries::compose requires g with zero constant term");
    if (low_ < 0) throw std::domain_error("HSeries::compose requires a regular series");
    int order = std::min(order_, g.order_);
    HSeries r = HSeries::zero(order);
    for (int k = low_ + static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
        r = r * g + HSeries::constant(coeff(k), order);
    }
    return r;
}

HSeries HSeries::conj() const {
    HSeries r = *this;
    for (auto& c : r.coeffs_) c = c.conj();
    return r;
}

HSeries HSeries::negate_h() const {
    HSeries r = *this;
    for (std::size_t j = 0; j < r.coeffs_.size(); ++j)
        if ((r.low_ + static_cast<int>(j)) % 2 != 0) r.coeffs_[j] = -r.coeffs_[j];
    return r;
}

bool HSeries::equals(const HSeries& o) const {
    int hi = std::min(order_, o.order_);
    int lo = std::min(valuation(), o.valuation());
    for (int k = lo; k <= hi; ++k)
        if (!(coeff(k) == o.coeff(k))) return false;
    return true;
}

Rational HSeries::ultra_norm() const {
    if (coeffs_.empty()) return Rational(0);
    int v = valuation();
    Integer two(2);
    if (v >= 0) return Rational(Integer(1), boost::multiprecision::pow(two, static_cast<unsigned>(v)));
    return Rational(boost::multiprecision::pow(two, static_cast<unsigned>(-v)));
}

std::string HSeries::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = low_; k <= low_ + static_cast<int>(coeffs_.size()) - 1; ++k) {
        const GaussianRational& c = coeff(k);
        if (c.is_zero()) continue;
        std::string cs = to_string(c);
        bool neg = cs.front() == '-' && c.im == 0;
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        if (neg) cs = cs.substr(1);
        bool composite = cs.find('+') != std::string::npos || cs.find('-') != std::string::npos;
        if (k == 0) {
            os << (composite ? "(" + cs + ")" : cs);
        } else {
            if (cs == "1") {
                // bare h^k
            } else if (composite) {
                os << "(" << cs << ")";
            } else {
                os << cs << " ";
            }
            os << "h";
            if (k != 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

HSeries hseries_arith(const HSeries& a, const HSeries& b, HSeriesOp op) {
    switch (op) {
        case HSeriesOp::add:
            if (a.order() != b.order()) throw std::invalid_argument("hseries_arith: order mismatch");
            return a + b;
        case HSeriesOp::mul:
            if (a.order() != b.order()) throw std::invalid_argument("hseries_arith: order mismatch");
            return a * b;
        case HSeriesOp::invert_first:
            return a.inverted();
    }
    throw std::logic_error("hseries_arith: unknown op");
}

}  // namespace kappa
