#include "ctrlk/laurent.hpp"

#include <ostream>
#include <sstream>

#include "ctrlk/errors.hpp"

namespace ctrlk {

LaurentPoly::LaurentPoly(const Rational& constant) {
    if (!constant.is_zero()) coeffs_[0] = constant;
}

LaurentPoly LaurentPoly::monomial(const Rational& c, long k) {
    LaurentPoly p;
    if (!c.is_zero()) p.coeffs_[k] = c;
    return p;
}

bool LaurentPoly::is_one() const {
    return coeffs_.size() == 1 && coeffs_.begin()->first == 0 &&
           coeffs_.begin()->second == Rational(1);
}

Rational LaurentPoly::coeff(long k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

bool LaurentPoly::is_unit() const {
    return coeffs_.size() == 1;
}

LaurentPoly LaurentPoly::unit_inverse() const {
    if (!is_unit()) throw UsageError("Laurent polynomial is not a unit: " + str());
    const auto& [k, c] = *coeffs_.begin();
    return monomial(Rational(1) / c, -k);
}

long LaurentPoly::min_degree() const {
    if (is_zero()) throw UsageError("degree of zero polynomial");
    return coeffs_.begin()->first;
}

long LaurentPoly::max_degree() const {
    if (is_zero()) throw UsageError("degree of zero polynomial");
    return coeffs_.rbegin()->first;
}

void LaurentPoly::add_term(long k, const Rational& c) {
    auto it = coeffs_.find(k);
    if (it == coeffs_.end()) {
        if (!c.is_zero()) coeffs_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k, -c);
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [k, c] : o.coeffs_) add_term(k, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [k, c] : o.coeffs_) add_term(k, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ka, ca] : a.coeffs_)
        for (const auto& [kb, cb] : b.coeffs_) r.add_term(ka + kb, ca * cb);
    return r;
}

std::string LaurentPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        if (k == 0) {
            os << c;
        } else {
            if (c != Rational(1)) os << c << "*";
            os << "t^" << k;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
    return os << p.str();
}

} // namespace ctrlk
