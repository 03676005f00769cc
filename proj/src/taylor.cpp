#include "kappa/taylor.hpp"

#include <algorithm>
#include <sstream>

namespace kappa {

TaylorSeries::TaylorSeries(std::vector<Rational> coeffs, int order)
    : coeffs_(std::move(coeffs)) {
    coeffs_.resize(static_cast<std::size_t>(order) + 1);
}

TaylorSeries TaylorSeries::constant(Rational c, int order) {
    TaylorSeries s(order);
    s.coeffs_[0] = std::move(c);
    return s;
}

TaylorSeries TaylorSeries::variable(int order) {
    TaylorSeries s(order);
    if (order >= 1) s.coeffs_[1] = 1;
    return s;
}

TaylorSeries TaylorSeries::parse(std::string_view text, int order) {
    TaylorSeries s(order);
    int k = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string_view item = comma == std::string_view::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        if (!item.empty() || comma != std::string_view::npos) s.set_coeff(k++, parse_rational(item));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return s;
}

const Rational& TaylorSeries::coeff(int k) const {
    static const Rational zero(0);
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return zero;
    return coeffs_[static_cast<std::size_t>(k)];
}

void TaylorSeries::set_coeff(int k, Rational c) {
    if (k >= 0 && k < static_cast<int>(coeffs_.size())) coeffs_[static_cast<std::size_t>(k)] = std::move(c);
}

bool TaylorSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

TaylorSeries TaylorSeries::truncated(int new_order) const {
    TaylorSeries r(new_order);
    for (int k = 0; k <= std::min(order(), new_order); ++k) r.coeffs_[static_cast<std::size_t>(k)] = coeff(k);
    return r;
}

TaylorSeries TaylorSeries::operator-() const {
    TaylorSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b) {
    TaylorSeries r(std::min(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) r.coeffs_[static_cast<std::size_t>(k)] = a.coeff(k) + b.coeff(k);
    return r;
}

TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b) { return a + (-b); }

TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
    TaylorSeries r(std::min(a.order(), b.order()));
    for (int i = 0; i <= r.order(); ++i) {
        if (a.coeff(i) == 0) continue;
        for (int j = 0; i + j <= r.order(); ++j) {
            if (b.coeff(j) == 0) continue;
            r.coeffs_[static_cast<std::size_t>(i + j)] += a.coeff(i) * b.coeff(j);
        }
    }
    return r;
}

TaylorSeries TaylorSeries::operator*(const Rational& c) const {
    TaylorSeries r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

bool operator==(const TaylorSeries& a, const TaylorSeries& b) {
    int hi = std::min(a.order(), b.order());
    for (int k = 0; k <= hi; ++k)
        if (a.coeff(k) != b.coeff(k)) return false;
    return true;
}

TaylorSeries TaylorSeries::reciprocal() const {
    if (coeff(0) == 0) throw std::domain_error("TaylorSeries::reciprocal: zero constant term");
    TaylorSeries r(order());
    Rational c0inv = Rational(1) / coeff(0);
    r.coeffs_[0] = c0inv;
    for (int k = 1; k <= order(); ++k) {
        Rational s(0);
        for (int j = 1; j <= k; ++j) s += coeff(j) * r.coeffs_[static_cast<std::size_t>(k - j)];
        r.coeffs_[static_cast<std::size_t>(k)] = -c0inv * s;
    }
    return r;
}

TaylorSeries TaylorSeries::derivative() const {
    TaylorSeries r(order());
    for (int k = 1; k <= order(); ++k) r.coeffs_[static_cast<std::size_t>(k - 1)] = coeff(k) * k;
    r.coeffs_[static_cast<std::size_t>(order())] = 0;
    return r;
}

TaylorSeries TaylorSeries::integral() const {
    TaylorSeries r(order());
    for (int k = 1; k <= order(); ++k)
        r.coeffs_[static_cast<std::size_t>(k)] = coeff(k - 1) / k;
    return r;
}

TaylorSeries TaylorSeries::exp() const {
    if (coeff(0) != 0) throw std::domain_error("TaylorSeries::exp: nonzero constant term");
    // f = exp(g) satisfies f' = g' f: f_k = (1/k) sum_{j=1..k} j g_j f_{k-j}.
    TaylorSeries r(order());
    r.coeffs_[0] = 1;
    for (int k = 1; k <= order(); ++k) {
        Rational s(0);
        for (int j = 1; j <= k; ++j) s += coeff(j) * j * r.coeffs_[static_cast<std::size_t>(k - j)];
        r.coeffs_[static_cast<std::size_t>(k)] = s / k;
    }
    return r;
}

TaylorSeries TaylorSeries::log() const {
    if (coeff(0) != 1) throw std::domain_error("TaylorSeries::log: constant term must be 1");
    return (derivative() * reciprocal()).integral();
}

TaylorSeries TaylorSeries::pow(const Rational& beta) const {
    if (coeff(0) != 1) throw std::domain_error("TaylorSeries::pow: constant term must be 1");
    return (log() * beta).exp();
}

TaylorSeries TaylorSeries::compose(const TaylorSeries& g) const {
    if (g.coeff(0) != 0) throw std::domain_error("TaylorSeries::compose: g must vanish at 0");
    TaylorSeries r = TaylorSeries::zero(std::min(order(), g.order()));
    for (int k = order(); k >= 0; --k) r = r * g + TaylorSeries::constant(coeff(k), r.order());
    return r;
}

TaylorSeries TaylorSeries::scale_arg(const Rational& c) const {
    TaylorSeries r = *this;
    Rational p(1);
    for (int k = 1; k <= order(); ++k) {
        p *= c;
        r.coeffs_[static_cast<std::size_t>(k)] *= p;
    }
    return r;
}

std::string TaylorSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= order(); ++k) {
        if (coeff(k) == 0) continue;
        Rational c = coeff(k);
        bool neg = c < 0;
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        Rational a = neg ? Rational(-c) : c;
        if (k == 0) os << a;
        else {
            if (a != 1) os << a << " ";
            os << "t";
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    if (first) return "0";
    return os.str();
}

std::pair<TaylorSeries, TaylorSeries> build_psi_gamma(const TaylorSeries& psi, const TaylorSeries& gamma,
                                                      int order) {
    if (psi.coeff(0) != 1) throw std::domain_error("build_psi_gamma: psi(0) must be 1");
    TaylorSeries inv = psi.truncated(order).reciprocal();
    TaylorSeries big_psi = inv.integral().exp();
    TaylorSeries big_gamma = (gamma.truncated(order) * inv).integral().exp();
    return {big_psi, big_gamma};
}

}  // namespace kappa
