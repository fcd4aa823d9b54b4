#include "cbp/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>

namespace cbp {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

} // namespace

Rational Rational::reduced(__int128 num, __int128 den) {
    if (den == 0) throw PreconditionError("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num > kMax || num < -static_cast<__int128>(kMax) || den > kMax)
        throw RationalOverflow("rational arithmetic overflowed 64 bits");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) { *this = reduced(num, den); }

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return reduced(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                   static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return reduced(static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_,
                   static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return reduced(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw PreconditionError("rational: division by zero");
    return reduced(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    __int128 lhs = static_cast<__int128>(num_) * o.den_;
    __int128 rhs = static_cast<__int128>(o.num_) * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::int64_t Rational::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::int64_t Rational::ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

namespace {

std::int64_t parse_digits(std::string_view s, std::string_view whole) {
    if (s.empty()) throw ValidationError("rational parse: empty number in '" + std::string(whole) + "'");
    __int128 v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ValidationError("rational parse: bad character in '" + std::string(whole) + "'");
        v = v * 10 + (c - '0');
        if (v > std::numeric_limits<std::int64_t>::max())
            throw RationalOverflow("rational parse: number too large in '" + std::string(whole) + "'");
    }
    return static_cast<std::int64_t>(v);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw ValidationError("rational parse: empty string");
    bool negative = false;
    if (s.front() == '-') {
        negative = true;
        s.remove_prefix(1);
    }
    Rational r;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::int64_t p = parse_digits(trim(s.substr(0, slash)), text);
        std::int64_t q = parse_digits(trim(s.substr(slash + 1)), text);
        if (q == 0) throw ValidationError("rational parse: zero denominator in '" + std::string(text) + "'");
        r = Rational(p, q);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if (frac.empty()) throw ValidationError("rational parse: trailing dot in '" + std::string(text) + "'");
        std::int64_t int_part = whole.empty() ? 0 : parse_digits(whole, text);
        std::int64_t frac_part = parse_digits(frac, text);
        if (frac.size() > 18) throw RationalOverflow("rational parse: too many decimal places");
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        r = Rational(int_part) + Rational(frac_part, scale);
    } else {
        r = Rational(parse_digits(s, text));
    }
    return negative ? -r : r;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace cbp
