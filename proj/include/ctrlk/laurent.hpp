#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "ctrlk/rational.hpp"

namespace ctrlk {

/// Laurent polynomial over Rational: a finite sum of c * t^k, k in Z.
/// Coefficient map is sorted by exponent and never stores zeros; the empty
/// map is the zero polynomial.
class LaurentPoly {
public:
    using CoeffMap = std::map<long, Rational>;

    LaurentPoly() = default;
    LaurentPoly(const Rational& constant);
    LaurentPoly(long constant) : LaurentPoly(Rational(constant)) {}

    /// c * t^k
    static LaurentPoly monomial(const Rational& c, long k);
    static LaurentPoly t(long k = 1) { return monomial(Rational(1), k); }

    const CoeffMap& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;
    Rational coeff(long k) const;

    /// Nonzero single-term polynomial c * t^k (the units of the ring when
    /// the scalar ring is a field).
    bool is_unit() const;
    LaurentPoly unit_inverse() const; // throws UsageError if not a unit

    long min_degree() const; // throws UsageError on zero
    long max_degree() const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

private:
    void add_term(long k, const Rational& c);

    CoeffMap coeffs_;
};

} // namespace ctrlk
