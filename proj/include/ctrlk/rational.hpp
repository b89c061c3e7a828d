#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

namespace ctrlk {

/// Exact rational number, always kept in lowest terms with positive
/// denominator. This is the coefficient scalar used throughout the library;
/// integers are the special case den() == 1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den);
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(const mpq_class& q);

    /// Parses "p/q" or "p" (optional sign, arbitrary precision).
    static Rational parse(const std::string& text);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    /// Largest integer <= *this.
    mpz_class floor() const;
    /// Fractional part in [0,1): *this - floor().
    Rational frac() const;
    Rational abs() const;

    /// floor() as long; throws UsageError if it does not fit.
    long floor_long() const;

    /// "p/q", or just "p" when the value is an integer.
    std::string str() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o); // throws UsageError on zero divisor

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class v_;
};

Rational max(const Rational& a, const Rational& b);
Rational min(const Rational& a, const Rational& b);

/// lcm of the denominators of a range of rationals (1 for an empty range).
template <typename It>
mpz_class denominator_lcm(It first, It last) {
    mpz_class l = 1;
    for (; first != last; ++first) {
        mpz_class g;
        mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), first->den().get_mpz_t());
        l = g;
    }
    return l;
}

} // namespace ctrlk
