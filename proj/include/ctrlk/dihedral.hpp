#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>

#include "ctrlk/rational.hpp"

namespace ctrlk {

/// Element of the infinite dihedral group <r, s | s^2 = 1, rs = sr^-1>,
/// in the normal form r^m s^n with m in Z and n in {0,1}.
struct DihedralWord {
    long m = 0;
    int n = 0; // 0 or 1

    /// (r^m s^n)(r^m' s^n') = r^(m + (-1)^n m') s^(n xor n')
    friend DihedralWord operator*(const DihedralWord& a, const DihedralWord& b) {
        return {a.m + (a.n ? -b.m : b.m), a.n ^ b.n};
    }
    DihedralWord inverse() const { return {n ? m : -m, n}; }
    friend auto operator<=>(const DihedralWord&, const DihedralWord&) = default;
};

/// Element of the group ring Q[Dinf]: finite sum of c * r^m s^n. No stored
/// zero coefficients; keys sorted by (m, n).
class DihedralElem {
public:
    using CoeffMap = std::map<std::pair<long, int>, Rational>;

    DihedralElem() = default;
    DihedralElem(const Rational& constant);
    DihedralElem(long constant) : DihedralElem(Rational(constant)) {}

    static DihedralElem term(const Rational& c, const DihedralWord& w);
    static DihedralElem r(long m = 1) { return term(Rational(1), {m, 0}); }
    static DihedralElem s() { return term(Rational(1), {0, 1}); }
    static DihedralElem group(const DihedralWord& w) { return term(Rational(1), w); }

    const CoeffMap& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;

    /// True when every term is a pure translation power r^m (the commutative
    /// subring, isomorphic to Laurent polynomials in r).
    bool is_translation_only() const;

    /// Single-term elements c * g are the obvious units.
    bool is_unit() const;
    DihedralElem unit_inverse() const;

    DihedralElem operator-() const;
    DihedralElem& operator+=(const DihedralElem& o);
    DihedralElem& operator-=(const DihedralElem& o);
    friend DihedralElem operator+(DihedralElem a, const DihedralElem& b) { return a += b; }
    friend DihedralElem operator-(DihedralElem a, const DihedralElem& b) { return a -= b; }
    friend DihedralElem operator*(const DihedralElem& a, const DihedralElem& b);

    friend bool operator==(const DihedralElem& a, const DihedralElem& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const DihedralElem& a, const DihedralElem& b) { return !(a == b); }

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const DihedralElem& e);

private:
    void add_term(const DihedralWord& w, const Rational& c);

    CoeffMap coeffs_;
};

} // namespace ctrlk
