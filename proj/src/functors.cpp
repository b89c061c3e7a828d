#include "ctrlk/functors.hpp"

#include <map>

#include "ctrlk/errors.hpp"

namespace ctrlk {

namespace {

// Basis offsets (in matrix columns/rows) for the sorted fundamental-domain
// representatives of a module at base height.
std::map<Point, std::size_t> basis_offsets(const GeoModule& m, std::size_t& total) {
    std::map<Point, std::size_t> off;
    total = 0;
    for (const auto& [rep, rank] : m.orbit_data()) {
        if (rep.t != Rational(1))
            throw PreconditionError("group-ring matrix requires all heights equal to 1");
        off[rep] = total;
        total += static_cast<std::size_t>(rank);
    }
    return off;
}

LaurentPoly scale_term(const LaurentPoly& g, const Rational& c) {
    return g * LaurentPoly(c);
}

DihedralElem scale_term(const DihedralElem& g, const Rational& c) {
    return g * DihedralElem(c);
}

template <typename R, typename MakeTerm>
Matrix<R> forget_geometry(const GeoMorphism& f, MakeTerm make_term) {
    std::size_t src_dim = 0, tgt_dim = 0;
    auto src_off = basis_offsets(f.source(), src_dim);
    auto tgt_off = basis_offsets(f.target(), tgt_dim);

    Matrix<R> out(tgt_dim, src_dim);
    for (const auto& [key, m] : f.blocks()) {
        const auto& [s, p] = key;
        CanonicalPoint c = canonicalize(f.group(), p);
        R g = make_term(c.g);
        std::size_t row0 = tgt_off.at(c.rep), col0 = src_off.at(s);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (m.at(i, j).is_zero()) continue;
                out.at(row0 + i, col0 + j) += scale_term(g, m.at(i, j));
            }
    }
    return out;
}

} // namespace

Matrix<LaurentPoly> to_laurent_matrix(const GeoMorphism& f) {
    if (f.group() != Group::InfiniteCyclic)
        throw UsageError("Laurent matrix requires the cyclic group");
    return forget_geometry<LaurentPoly>(
        f, [](const GroupElem& g) { return LaurentPoly::t(g.m); });
}

Matrix<DihedralElem> to_dihedral_matrix(const GeoMorphism& f) {
    if (f.group() != Group::InfiniteDihedral)
        throw UsageError("dihedral matrix requires the dihedral group");
    return forget_geometry<DihedralElem>(
        f, [](const GroupElem& g) { return DihedralElem::group({g.m, g.flip}); });
}

GeoModule grid_module(int n, int rank) {
    if (n < 1) throw UsageError("grid resolution must be positive");
    if (rank < 1) throw UsageError("grid rank must be positive");
    GeoModule m(Group::InfiniteCyclic);
    for (int j = 0; j < n; ++j) m.add_orbit({0, Rational(j, n), Rational(1)}, rank);
    return m;
}

GeoMorphism grid_morphism(const Matrix<LaurentPoly>& a, int n, int rank) {
    if (n < 1 || rank < 1) throw UsageError("grid parameters must be positive");
    const std::size_t dim = static_cast<std::size_t>(n) * static_cast<std::size_t>(rank);
    if (a.rows() != dim || a.cols() != dim)
        throw UsageError("matrix dimension does not match the grid: expected " +
                         std::to_string(dim) + ", got " + std::to_string(a.rows()));

    GeoModule m = grid_module(n, rank);
    GeoMorphism f(m, m);
    const std::size_t r = static_cast<std::size_t>(rank);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            // collect degrees present in block (p, q)
            std::map<long, Matrix<Rational>> per_degree;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) {
                    const LaurentPoly& e = a.at(p * r + i, q * r + j);
                    for (const auto& [k, c] : e.coeffs()) {
                        auto [it, fresh] = per_degree.try_emplace(k, Matrix<Rational>(r, r));
                        it->second.at(i, j) = c;
                    }
                }
            for (const auto& [k, mat] : per_degree)
                f.add_block({0, Rational(q, n), Rational(1)},
                            {0, Rational(k) + Rational(p, n), Rational(1)}, mat);
        }
    return f;
}

Matrix<DihedralElem> opposite_product(const Matrix<DihedralElem>& a,
                                      const Matrix<DihedralElem>& b) {
    if (a.cols() != b.rows()) throw UsageError("matrix product shape mismatch");
    Matrix<DihedralElem> m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t k = 0; k < a.cols(); ++k)
                m.at(i, j) += b.at(k, j) * a.at(i, k);
    return m;
}

Matrix<Rational> distance_matrix(long k, int n) {
    if (n < 1) throw UsageError("grid resolution must be positive");
    Matrix<Rational> d(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            d.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                (Rational(k) + Rational(i - j, n)).abs();
    return d;
}

Rational matrix_size(const Matrix<LaurentPoly>& a, int n, int rank) {
    if (n < 1 || rank < 1) throw UsageError("grid parameters must be positive");
    const std::size_t dim = static_cast<std::size_t>(n) * static_cast<std::size_t>(rank);
    if (a.rows() != dim || a.cols() != dim)
        throw UsageError("matrix dimension does not match the grid");
    Rational best(0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            long p = static_cast<long>(i) / rank, q = static_cast<long>(j) / rank;
            for (const auto& [k, c] : a.at(i, j).coeffs())
                best = max(best, (Rational(k) + Rational(p - q, n)).abs());
        }
    return best;
}

} // namespace ctrlk
