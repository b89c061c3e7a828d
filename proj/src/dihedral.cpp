#include "ctrlk/dihedral.hpp"

#include <ostream>
#include <sstream>

#include "ctrlk/errors.hpp"

namespace ctrlk {

DihedralElem::DihedralElem(const Rational& constant) {
    if (!constant.is_zero()) coeffs_[{0, 0}] = constant;
}

DihedralElem DihedralElem::term(const Rational& c, const DihedralWord& w) {
    DihedralElem e;
    if (!c.is_zero()) e.coeffs_[{w.m, w.n}] = c;
    return e;
}

bool DihedralElem::is_one() const {
    return coeffs_.size() == 1 && coeffs_.begin()->first == std::pair<long, int>{0, 0} &&
           coeffs_.begin()->second == Rational(1);
}

bool DihedralElem::is_translation_only() const {
    for (const auto& [key, c] : coeffs_)
        if (key.second != 0) return false;
    return true;
}

bool DihedralElem::is_unit() const {
    return coeffs_.size() == 1;
}

DihedralElem DihedralElem::unit_inverse() const {
    if (!is_unit()) throw UsageError("dihedral element is not a unit: " + str());
    const auto& [key, c] = *coeffs_.begin();
    DihedralWord w{key.first, key.second};
    return term(Rational(1) / c, w.inverse());
}

void DihedralElem::add_term(const DihedralWord& w, const Rational& c) {
    auto key = std::pair<long, int>{w.m, w.n};
    auto it = coeffs_.find(key);
    if (it == coeffs_.end()) {
        if (!c.is_zero()) coeffs_.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
}

DihedralElem DihedralElem::operator-() const {
    DihedralElem r;
    for (const auto& [key, c] : coeffs_) r.coeffs_.emplace(key, -c);
    return r;
}

DihedralElem& DihedralElem::operator+=(const DihedralElem& o) {
    for (const auto& [key, c] : o.coeffs_) add_term({key.first, key.second}, c);
    return *this;
}

DihedralElem& DihedralElem::operator-=(const DihedralElem& o) {
    for (const auto& [key, c] : o.coeffs_) add_term({key.first, key.second}, -c);
    return *this;
}

DihedralElem operator*(const DihedralElem& a, const DihedralElem& b) {
    DihedralElem r;
    for (const auto& [ka, ca] : a.coeffs_) {
        DihedralWord wa{ka.first, ka.second};
        for (const auto& [kb, cb] : b.coeffs_) {
            DihedralWord wb{kb.first, kb.second};
            r.add_term(wa * wb, ca * cb);
        }
    }
    return r;
}

std::string DihedralElem::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        const auto& [m, n] = key;
        if (m == 0 && n == 0) {
            os << c;
            continue;
        }
        if (c != Rational(1)) os << c << "*";
        if (m != 0) {
            os << "r^" << m;
            if (n) os << "*";
        }
        if (n) os << "s";
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const DihedralElem& e) {
    return os << e.str();
}

} // namespace ctrlk
