#include "ctrlk/rational.hpp"

#include <ostream>

#include "ctrlk/errors.hpp"

namespace ctrlk {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw UsageError("rational with zero denominator");
    v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw UsageError("rational with zero denominator");
    v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q) {
    v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0)
        throw ParseError("bad rational: '" + text + "'");
    if (q.get_den() == 0) throw ParseError("bad rational (zero denominator): '" + text + "'");
    q.canonicalize();
    return Rational(q);
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
}

Rational Rational::frac() const {
    return *this - Rational(floor(), 1);
}

Rational Rational::abs() const {
    Rational r = *this;
    r.v_ = ::abs(r.v_);
    return r;
}

long Rational::floor_long() const {
    mpz_class f = floor();
    if (!f.fits_slong_p()) throw UsageError("integer out of machine range: " + f.get_str());
    return f.get_si();
}

std::string Rational::str() const {
    return v_.get_str();
}

Rational Rational::operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) { v_ += o.v_; return *this; }
Rational& Rational::operator-=(const Rational& o) { v_ -= o.v_; return *this; }
Rational& Rational::operator*=(const Rational& o) { v_ *= o.v_; return *this; }

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw UsageError("division by zero");
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

} // namespace ctrlk
