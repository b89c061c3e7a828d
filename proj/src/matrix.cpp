#include "ctrlk/matrix.hpp"

namespace ctrlk {

Matrix<Rational> inverse(const Matrix<Rational>& m) {
    if (!m.is_square()) throw UsageError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix<Rational> a = m;
    Matrix<Rational> inv = Matrix<Rational>::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a.at(pivot, col).is_zero()) ++pivot;
        if (pivot == n) throw PreconditionError("matrix is singular");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.at(pivot, j), a.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        }
        Rational scale = Rational(1) / a.at(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a.at(col, j) *= scale;
            inv.at(col, j) *= scale;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a.at(i, col).is_zero()) continue;
            Rational f = a.at(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

} // namespace ctrlk
