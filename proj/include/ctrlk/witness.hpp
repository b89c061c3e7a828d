#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ctrlk/matrix.hpp"

namespace ctrlk {

/// E(i, j, a): the identity with ring element a added at off-diagonal
/// position (i, j). Indices are 0-based, i != j.
template <typename R>
struct ElementaryFactor {
    std::size_t i = 0, j = 0;
    R a = R(0);

    Matrix<R> to_matrix(std::size_t n) const {
        Matrix<R> m = Matrix<R>::identity(n);
        m.at(i, j) = a;
        return m;
    }
};

/// Diagonal matrix of ring units, used as a declared residual that is not
/// reduced further.
template <typename R>
struct DiagonalFactor {
    std::vector<R> diag;

    Matrix<R> to_matrix(std::size_t n) const {
        if (diag.size() != n) throw UsageError("residual dimension mismatch");
        Matrix<R> m(n, n);
        for (std::size_t k = 0; k < n; ++k) m.at(k, k) = diag[k];
        return m;
    }
};

/// Ordered factorization certificate: the product of the factors, taken in
/// list order, is claimed to equal some target matrix. A factorization into
/// E-factors alone certifies triviality of the K1 class.
template <typename R>
struct ElementaryWitness {
    using Factor = std::variant<ElementaryFactor<R>, DiagonalFactor<R>>;

    std::size_t dim = 0;
    std::vector<Factor> factors;

    bool has_residual() const {
        for (const auto& f : factors)
            if (std::holds_alternative<DiagonalFactor<R>>(f)) return true;
        return false;
    }

    std::size_t elementary_count() const {
        std::size_t c = 0;
        for (const auto& f : factors)
            if (std::holds_alternative<ElementaryFactor<R>>(f)) ++c;
        return c;
    }

    /// Exact product of all factors in order.
    Matrix<R> product() const {
        Matrix<R> m = Matrix<R>::identity(dim);
        for (const auto& f : factors) {
            if (const auto* e = std::get_if<ElementaryFactor<R>>(&f)) {
                if (e->i == e->j || e->i >= dim || e->j >= dim)
                    throw UsageError("bad elementary factor indices");
                // M *= E(i,j,a): column j gains column i times a.
                for (std::size_t r = 0; r < dim; ++r)
                    if (!ring_is_zero(m.at(r, e->i))) m.at(r, e->j) += m.at(r, e->i) * e->a;
            } else {
                const auto& d = std::get<DiagonalFactor<R>>(f);
                if (d.diag.size() != dim) throw UsageError("residual dimension mismatch");
                for (std::size_t c = 0; c < dim; ++c)
                    for (std::size_t r = 0; r < dim; ++r)
                        m.at(r, c) = m.at(r, c) * d.diag[c];
            }
        }
        return m;
    }
};

/// True iff the exact product of the witness factors equals the target.
template <typename R>
bool verify_witness(const ElementaryWitness<R>& w, const Matrix<R>& target) {
    if (!target.is_square() || target.rows() != w.dim)
        throw UsageError("witness/target dimension mismatch");
    return w.product() == target;
}

namespace detail {

template <typename R>
struct MonomialShape {
    std::vector<std::size_t> row_of_col; // row index of the unique nonzero in each column
    bool odd_permutation = false;
};

template <typename R>
MonomialShape<R> monomial_shape(const Matrix<R>& m) {
    if (!m.is_square()) throw PreconditionError("not a generalized permutation matrix: not square");
    const std::size_t n = m.rows();
    MonomialShape<R> shape;
    shape.row_of_col.assign(n, n);
    std::vector<std::size_t> count_in_row(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t found = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (ring_is_zero(m.at(i, j))) continue;
            if (found != n)
                throw PreconditionError("not a generalized permutation matrix: column " +
                                        std::to_string(j) + " has several nonzero entries");
            found = i;
        }
        if (found == n)
            throw PreconditionError("not a generalized permutation matrix: column " +
                                    std::to_string(j) + " is zero");
        if (!ring_is_unit(m.at(found, j)))
            throw PreconditionError("generalized permutation entry is not a unit");
        shape.row_of_col[j] = found;
        if (++count_in_row[found] > 1)
            throw PreconditionError("not a generalized permutation matrix: row " +
                                    std::to_string(found) + " has several nonzero entries");
    }
    // Permutation parity by cycle decomposition.
    std::vector<bool> seen(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        if (seen[j]) continue;
        std::size_t len = 0, k = j;
        while (!seen[k]) {
            seen[k] = true;
            k = shape.row_of_col[k];
            ++len;
        }
        if (len % 2 == 0) shape.odd_permutation = !shape.odd_permutation;
    }
    return shape;
}

} // namespace detail

/// Factors a generalized permutation matrix of determinant one into
/// elementary matrices, with no residual. Row swaps are realized as signed
/// 3-factor rotations and diagonal units are cleared pairwise with
/// Whitehead-style diag(u, u^-1) identities.
template <typename R>
ElementaryWitness<R> elem_factor_monomial(const Matrix<R>& a) {
    const auto shape = detail::monomial_shape(a);
    const std::size_t n = a.rows();

    // det = sign(permutation) * product of the unit entries; require 1.
    R d = shape.odd_permutation ? R(-1) : R(1);
    for (std::size_t j = 0; j < n; ++j) d = d * a.at(shape.row_of_col[j], j);
    if (d != R(1)) throw PreconditionError("monomial matrix does not have determinant one");

    Matrix<R> m = a;
    // Left-multiplications applied so far, in application order.
    std::vector<ElementaryFactor<R>> applied;
    auto row_op = [&](std::size_t i, std::size_t j, const R& c) {
        applied.push_back({i, j, c});
        for (std::size_t col = 0; col < n; ++col)
            if (!ring_is_zero(m.at(j, col))) m.at(i, col) += c * m.at(j, col);
    };
    // new row_i = row_j, new row_j = -row_i
    auto signed_swap_up = [&](std::size_t i, std::size_t j) {
        row_op(i, j, R(1));
        row_op(j, i, R(-1));
        row_op(i, j, R(1));
    };
    // new row_i = -row_j, new row_j = row_i
    auto signed_swap_down = [&](std::size_t i, std::size_t j) {
        row_op(i, j, R(-1));
        row_op(j, i, R(1));
        row_op(i, j, R(-1));
    };

    for (std::size_t j = 0; j < n; ++j) {
        std::size_t i = j;
        while (i < n && ring_is_zero(m.at(i, j))) ++i;
        if (i == j) continue;
        // Orient the swap so entries -1 land on the diagonal as +1.
        if (m.at(i, j) == R(-1))
            signed_swap_down(j, i);
        else
            signed_swap_up(j, i);
    }

    // m is now diagonal with unit entries of product 1.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const R u = m.at(k, k);
        if (u == R(1)) continue;
        const R v = ring_unit_inverse(u);
        const R vinv = u;
        // diag(v, v^-1) on rows (k, k+1) as w(v) * w(-1), six factors.
        row_op(k, k + 1, R(-1));
        row_op(k + 1, k, R(1));
        row_op(k, k + 1, R(-1));
        row_op(k, k + 1, v);
        row_op(k + 1, k, -vinv);
        row_op(k, k + 1, v);
    }
    if (!m.is_identity()) throw UsageError("monomial reduction failed to reach the identity");

    // Gm * ... * G1 * a = id, so a = G1^-1 * G2^-1 * ... * Gm^-1.
    ElementaryWitness<R> w;
    w.dim = n;
    for (const auto& g : applied) w.factors.push_back(ElementaryFactor<R>{g.i, g.j, -g.a});
    return w;
}

} // namespace ctrlk
