#include "kappa/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace kappa {

namespace {

std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Rational pow10(long e) {
    Rational r(1);
    Integer ten(10);
    if (e >= 0) {
        return Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(e)));
    }
    return Rational(Integer(1), boost::multiprecision::pow(ten, static_cast<unsigned>(-e)));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = strip(text);
    if (s.empty()) throw std::invalid_argument("parse_rational: empty input");

    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
        s = strip(s);
    }

    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        std::string_view num = strip(s.substr(0, slash));
        std::string_view den = strip(s.substr(slash + 1));
        if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("parse_rational: bad fraction");
        Rational r{Integer(std::string(num)), Integer(std::string(den))};
        return neg ? -r : r;
    }

    // Decimal / scientific form; convert exactly.
    auto epos = s.find_first_of("eE");
    long exponent = 0;
    if (epos != std::string_view::npos) {
        std::string etxt(strip(s.substr(epos + 1)));
        if (etxt.empty()) throw std::invalid_argument("parse_rational: bad exponent");
        try {
            exponent = std::stol(etxt);
        } catch (const std::exception&) {
            throw std::invalid_argument("parse_rational: bad exponent");
        }
        s = strip(s.substr(0, epos));
    }
    auto dot = s.find('.');
    std::string digits;
    long frac_len = 0;
    if (dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) throw std::invalid_argument("parse_rational: bad decimal");
        if (!ip.empty() && !all_digits(ip)) throw std::invalid_argument("parse_rational: bad decimal");
        if (!fp.empty() && !all_digits(fp)) throw std::invalid_argument("parse_rational: bad decimal");
        digits = std::string(ip) + std::string(fp);
        frac_len = static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) throw std::invalid_argument("parse_rational: bad number: " + std::string(text));
        digits = std::string(s);
    }
    // strip leading zeros (GMP would read a leading 0 as an octal prefix)
    std::size_t nz = digits.find_first_not_of('0');
    digits = nz == std::string::npos ? "0" : digits.substr(nz);
    Rational r = Rational(Integer(digits)) * pow10(exponent - frac_len);
    return neg ? -r : r;
}

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string to_decimal(const Rational& r, int digits) {
    if (digits < 1) digits = 1;
    if (r == 0) {
        std::string body = "0.";
        body.append(static_cast<std::size_t>(digits - 1), '0');
        return body + "e+00";
    }
    Rational a = r < 0 ? Rational(-r) : r;

    // Find exp10 with 10^exp10 <= a < 10^(exp10+1).
    long exp10 = 0;
    while (a >= 10) {
        a /= 10;
        ++exp10;
    }
    while (a < 1) {
        a *= 10;
        --exp10;
    }
    // a in [1,10); want `digits` significant digits of a, half-to-even.
    Rational scaled = a * pow10(digits - 1);
    Integer ip = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
    Rational frac = scaled - Rational(ip);
    if (frac > Rational(1, 2) || (frac == Rational(1, 2) && (ip % 2) != 0)) ip += 1;
    std::string ds = ip.str();
    if (static_cast<int>(ds.size()) > digits) {  // rounding overflowed, e.g. 9.99 -> 10.0
        ds.pop_back();
        ++exp10;
    }
    std::string out;
    if (r < 0) out += '-';
    out += ds.substr(0, 1);
    out += '.';
    out += ds.substr(1);
    out += 'e';
    out += exp10 < 0 ? '-' : '+';
    long ae = exp10 < 0 ? -exp10 : exp10;
    std::string es = std::to_string(ae);
    if (es.size() < 2) es.insert(es.begin(), '0');
    out += es;
    return out;
}

std::size_t hash_value(const Rational& r) {
    std::size_t h = 1469598103934665603ULL;
    auto mix = [&h](const Integer& z) {
        for (unsigned limb = 0;; ++limb) {
            Integer shifted = z >> (64 * limb);
            auto v = static_cast<std::uint64_t>(shifted & Integer(0xffffffffffffffffULL));
            h = (h ^ v) * 1099511628211ULL;
            if (shifted >= -1 && shifted <= 1) break;
        }
    };
    mix(boost::multiprecision::numerator(r));
    mix(boost::multiprecision::denominator(r));
    return h;
}

GaussianRational parse_gaussian(std::string_view text) {
    std::string_view s = strip(text);
    if (s.empty()) throw std::invalid_argument("parse_gaussian: empty input");

    // Split at the last top-level '+'/'-' that is not a leading sign and not
    // part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        char c = s[k];
        if (c != '+' && c != '-') continue;
        char prev = s[k - 1];
        if (prev == 'e' || prev == 'E') continue;
        split = k;
        break;
    }

    auto parse_part = [](std::string_view part, bool expect_imag) -> Rational {
        part = strip(part);
        if (expect_imag) {
            if (part.empty() || (part.back() != 'i' && part.back() != 'I'))
                throw std::invalid_argument("parse_gaussian: missing i");
            part.remove_suffix(1);
            part = strip(part);
            if (part.empty() || part == "+") return Rational(1);
            if (part == "-") return Rational(-1);
        }
        return parse_rational(part);
    };

    bool has_i = !s.empty() && (s.back() == 'i' || s.back() == 'I');
    if (split == std::string_view::npos) {
        if (has_i) return {Rational(0), parse_part(s, true)};
        return {parse_rational(s), Rational(0)};
    }
    if (!has_i) throw std::invalid_argument("parse_gaussian: expected trailing i in " + std::string(text));
    std::string_view left = s.substr(0, split);
    std::string_view right = s.substr(split);  // keeps the sign
    return {parse_rational(left), parse_part(right, true)};
}

std::string to_string(const GaussianRational& z) {
    if (z.im == 0) return to_string(z.re);
    std::string imag = to_string(z.im < 0 ? Rational(-z.im) : z.im) + "i";
    if (z.re == 0) return (z.im < 0 ? "-" : "") + imag;
    return to_string(z.re) + (z.im < 0 ? "-" : "+") + imag;
}

}  // namespace kappa
