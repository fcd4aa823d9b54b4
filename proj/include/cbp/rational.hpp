#pragma once

#include <cstdint>
#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include "cbp/errors.hpp"

namespace cbp {

/// Exact rational with 64-bit numerator/denominator in canonical form
/// (den > 0, gcd(|num|, den) == 1). All arithmetic runs through __int128
/// intermediates and throws RationalOverflow if a reduced result does not
/// fit back into 64 bits. No silent rounding anywhere.
class Rational {
  public:
    constexpr Rational() = default;
    Rational(std::int64_t value) : num_(value), den_(1) {} // NOLINT: implicit by design
    Rational(std::int64_t num, std::int64_t den);

    /// Accepts "p/q", an integer "p", or a decimal string like "0.375",
    /// each with an optional leading '-'. Decimal strings convert exactly.
    static Rational parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const;

    std::int64_t floor() const;
    std::int64_t ceil() const;
    Rational abs() const { return num_ < 0 ? -*this : *this; }

    /// True iff the value is 1/k for some integer k >= 1.
    bool is_unit_fraction() const { return num_ == 1; }

    /// "p/q", or just "p" when the denominator is 1.
    std::string str() const;

    double approx() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  private:
    static Rational reduced(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream&, const Rational&);

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

} // namespace cbp
