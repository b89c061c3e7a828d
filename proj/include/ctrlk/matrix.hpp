#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <vector>

#include "ctrlk/dihedral.hpp"
#include "ctrlk/errors.hpp"
#include "ctrlk/laurent.hpp"
#include "ctrlk/rational.hpp"

namespace ctrlk {

inline bool ring_is_zero(const Rational& x) { return x.is_zero(); }
inline bool ring_is_zero(const LaurentPoly& x) { return x.is_zero(); }
inline bool ring_is_zero(const DihedralElem& x) { return x.is_zero(); }

inline bool ring_is_unit(const Rational& x) { return !x.is_zero(); }
inline bool ring_is_unit(const LaurentPoly& x) { return x.is_unit(); }
inline bool ring_is_unit(const DihedralElem& x) { return x.is_unit(); }

inline Rational ring_unit_inverse(const Rational& x) {
    if (x.is_zero()) throw UsageError("zero is not a unit");
    return Rational(1) / x;
}
inline LaurentPoly ring_unit_inverse(const LaurentPoly& x) { return x.unit_inverse(); }
inline DihedralElem ring_unit_inverse(const DihedralElem& x) { return x.unit_inverse(); }

/// Dense matrix over one of the exact coefficient rings. Row-major storage;
/// all entries value types, all operations pure.
template <typename R>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, R(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = R(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    R& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const R& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_square() const { return rows_ == cols_; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(),
                           [](const R& x) { return ring_is_zero(x); });
    }

    bool is_identity() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != (i == j ? R(1) : R(0))) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    Matrix operator-() const {
        Matrix m(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = -data_[k];
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw UsageError("matrix product shape mismatch: " + std::to_string(a.rows_) + "x" +
                             std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                             std::to_string(b.cols_));
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (ring_is_zero(a.at(i, k))) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (ring_is_zero(b.at(k, j))) continue;
                    m.at(i, j) += a.at(i, k) * b.at(k, j);
                }
            }
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i == 0 ? "[" : " ") << "[";
            for (std::size_t j = 0; j < m.cols_; ++j) {
                if (j) os << ", ";
                os << m.at(i, j);
            }
            os << "]" << (i + 1 == m.rows_ ? "]" : "\n");
        }
        return os;
    }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<R> data_;
};

inline constexpr int kDefaultDetBound = 12;

inline void require_commutative_entries(const Matrix<Rational>&) {}
inline void require_commutative_entries(const Matrix<LaurentPoly>&) {}
inline void require_commutative_entries(const Matrix<DihedralElem>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_translation_only())
                throw UsageError(
                    "determinant requires entries in the commutative translation subring");
}

namespace detail {

// Cofactor expansion along the currently sparsest row of the active
// submatrix. All the matrices this is used on are small and mostly zero, so
// the zero-skipping expansion terminates quickly.
template <typename R>
R det_rec(const Matrix<R>& m, std::vector<std::size_t>& rows, std::vector<std::size_t>& cols) {
    const std::size_t n = rows.size();
    if (n == 0) return R(1);
    if (n == 1) return m.at(rows[0], cols[0]);

    std::size_t best = 0, best_nnz = cols.size() + 1;
    for (std::size_t ri = 0; ri < n; ++ri) {
        std::size_t nnz = 0;
        for (std::size_t cj = 0; cj < n; ++cj)
            if (!ring_is_zero(m.at(rows[ri], cols[cj]))) ++nnz;
        if (nnz < best_nnz) {
            best_nnz = nnz;
            best = ri;
        }
    }
    if (best_nnz == 0) return R(0);

    const std::size_t row = rows[best];
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
    R acc = R(0);
    for (std::size_t cj = 0; cj < cols.size(); ++cj) {
        const R& entry = m.at(row, cols[cj]);
        if (ring_is_zero(entry)) continue;
        const std::size_t col = cols[cj];
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(cj));
        R minor = det_rec(m, rows, cols);
        cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(cj), col);
        R term = entry * minor;
        if ((best + cj) % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(best), row);
    return acc;
}

} // namespace detail

/// Exact determinant over a commutative entry ring, by cofactor expansion
/// with sparsest-row pivoting. Guarded by a dimension bound because the
/// expansion is exponential on dense input.
template <typename R>
R det(const Matrix<R>& m, int size_bound = kDefaultDetBound) {
    if (!m.is_square()) throw UsageError("determinant of a non-square matrix");
    if (m.rows() > static_cast<std::size_t>(size_bound))
        throw UsageError("determinant dimension " + std::to_string(m.rows()) +
                         " exceeds bound " + std::to_string(size_bound));
    require_commutative_entries(m);
    std::vector<std::size_t> rows(m.rows()), cols(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) rows[i] = cols[i] = i;
    return detail::det_rec(m, rows, cols);
}

inline Matrix<LaurentPoly> to_laurent_entries(const Matrix<Rational>& m) {
    Matrix<LaurentPoly> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = LaurentPoly(m.at(i, j));
    return out;
}

/// Reads a matrix over the translation subring of Q[Dinf] as a Laurent
/// matrix, r^m becoming t^m. Throws if any entry involves a reflection.
inline Matrix<LaurentPoly> translation_part_as_laurent(const Matrix<DihedralElem>& m) {
    require_commutative_entries(m);
    Matrix<LaurentPoly> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            LaurentPoly p;
            for (const auto& [key, c] : m.at(i, j).coeffs())
                p += LaurentPoly::monomial(c, key.first);
            out.at(i, j) = p;
        }
    return out;
}

/// Exact inverse of a square rational matrix by Gauss-Jordan elimination.
/// Throws PreconditionError when singular.
Matrix<Rational> inverse(const Matrix<Rational>& m);

} // namespace ctrlk
