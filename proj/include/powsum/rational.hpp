#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace powsum {

using BigInt = mpz_class;

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    explicit Rational(const BigInt& v) : value_(v) {}
    Rational(const BigInt& num, const BigInt& den);

    BigInt numerator() const { return value_.get_num(); }
    BigInt denominator() const { return value_.get_den(); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { Rational r; r.value_ = -value_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    int sign() const { return sgn(value_); }
    double to_double() const { return value_.get_d(); }

    /// "p/q", or "p" when the denominator is 1.
    std::string str() const;

    /// Decimal rendering with `digits` fractional digits, rounded toward
    /// negative infinity (floor) or positive infinity (ceil).
    enum class Rounding { Floor, Ceil, Nearest };
    std::string to_decimal(int digits, Rounding mode = Rounding::Nearest) const;

    /// Parses "p/q" or an integer.
    static Rational parse(const std::string& text);

    const mpq_class& raw() const { return value_; }

private:
    mpq_class value_;
};

inline Rational operator""_q(unsigned long long v) { return Rational(static_cast<long>(v)); }

} // namespace powsum
