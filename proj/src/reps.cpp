#include "ctrlk/reps.hpp"

#include <algorithm>
#include <cstdlib>

#include "ctrlk/errors.hpp"

namespace ctrlk {

namespace {

Matrix<Rational> scalar_block(long v) {
    Matrix<Rational> m(1, 1);
    m.at(0, 0) = Rational(v);
    return m;
}

GeoModule two_copy_grid(int n) {
    if (n < 1) throw UsageError("grid resolution must be positive");
    GeoModule m(Group::InfiniteDihedral);
    for (int j = 0; j < n; ++j) m.add_orbit({0, Rational(j, n), Rational(1)}, 1);
    return m;
}

// Forward cycle blocks shared by the cyclic and dihedral rotation
// representatives: advance by 1/n with the sign convention that keeps the
// companion determinant equal to the generator.
void fill_cycle(GeoMorphism& f, int n, long sign) {
    auto at = [&](long j) { return Point{0, Rational(j, n), Rational(1)}; };
    if (n == 1) {
        f.add_block(at(0), {0, Rational(1), Rational(1)}, scalar_block(1));
        return;
    }
    f.add_block(at(0), at(1), scalar_block(sign));
    for (long j = 1; j + 1 <= n - 1; ++j) f.add_block(at(j), at(j + 1), scalar_block(1));
    f.add_block(at(n - 1), {0, Rational(1), Rational(1)}, scalar_block(1));
}

void fill_cycle_inverse(GeoMorphism& f, int n, long sign) {
    auto at = [&](long j) { return Point{0, Rational(j, n), Rational(1)}; };
    if (n == 1) {
        f.add_block(at(0), {0, Rational(-1), Rational(1)}, scalar_block(1));
        return;
    }
    f.add_block(at(1), at(0), scalar_block(sign));
    for (long j = 1; j + 1 <= n - 1; ++j) f.add_block(at(j + 1), at(j), scalar_block(1));
    f.add_block(at(0), {0, Rational(-1, n), Rational(1)}, scalar_block(1));
}

void attach_sizes(RepBundle& b) {
    b.fwd_sizes = b.fwd.sizes();
    b.inv_sizes = b.inv.sizes();
}

long minimal_grid(const Rational& budget, const Rational& eps, long at_least) {
    // smallest N with budget / N < eps
    if (!(eps > Rational(0))) throw UsageError("size budget must be positive");
    long n0 = budget.is_zero() ? 1 : (budget / eps).floor_long() + 1;
    return std::max(at_least, std::max(1L, n0));
}

} // namespace

RepBundle xi_rep(int n) {
    if (n < 1) throw UsageError("grid resolution must be positive");
    const long sign = n % 2 == 0 ? -1 : 1; // (-1)^(n+1)
    GeoModule q = grid_module(n);
    RepBundle b;
    b.family = "xi";
    b.t_exponent = 1;
    b.fwd = GeoMorphism(q, q);
    b.inv = GeoMorphism(q, q);
    fill_cycle(b.fwd, n, sign);
    fill_cycle_inverse(b.inv, n, sign);
    attach_sizes(b);

    // identification with the diagonal representative: U(xi) U(nu)^-1 is a
    // monomial matrix of determinant one
    Matrix<LaurentPoly> u = to_laurent_matrix(b.fwd);
    Matrix<LaurentPoly> nu_inv = Matrix<LaurentPoly>::identity(static_cast<std::size_t>(n));
    nu_inv.at(0, 0) = LaurentPoly::t(-1);
    b.witness = elem_factor_monomial(u * nu_inv);
    return b;
}

RepBundle nu_rep(int n) {
    if (n < 1) throw UsageError("grid resolution must be positive");
    GeoModule q = grid_module(n);
    RepBundle b;
    b.family = "nu";
    b.t_exponent = 1;
    b.fwd = GeoMorphism(q, q);
    b.inv = GeoMorphism(q, q);
    b.fwd.add_block({0, Rational(0), Rational(1)}, {0, Rational(1), Rational(1)},
                    scalar_block(1));
    b.inv.add_block({0, Rational(0), Rational(1)}, {0, Rational(-1), Rational(1)},
                    scalar_block(1));
    for (long j = 1; j < n; ++j) {
        Point p{0, Rational(j, n), Rational(1)};
        b.fwd.add_block(p, p, scalar_block(1));
        b.inv.add_block(p, p, scalar_block(1));
    }
    attach_sizes(b);
    return b;
}

GeoMorphism grid_swap(int n) {
    GeoModule m = two_copy_grid(n);
    GeoMorphism f(m, m);
    for (int j = 0; j < n; ++j)
        f.add_block({0, Rational(j, n), Rational(1)}, {1, Rational(j, n), Rational(1)},
                    scalar_block(1));
    return f;
}

RepBundle s_rep() {
    RepBundle b;
    b.family = "s";
    b.group_word = "s";
    b.fwd = grid_swap(1);
    b.inv = b.fwd;
    attach_sizes(b);
    return b;
}

RepBundle r_rep(int n) {
    if (n < 1) throw UsageError("grid resolution must be positive");
    const long sign = n % 2 == 0 ? -1 : 1;
    GeoModule q = two_copy_grid(n);
    RepBundle b;
    b.family = "r";
    b.group_word = "r";
    b.t_exponent = 1;
    b.fwd = GeoMorphism(q, q);
    b.inv = GeoMorphism(q, q);
    fill_cycle(b.fwd, n, sign);
    fill_cycle_inverse(b.inv, n, sign);
    attach_sizes(b);
    return b;
}

RepBundle squeeze_constant(const Matrix<Rational>& m, const Rational& eps) {
    if (!m.is_square() || m.rows() == 0) throw UsageError("expected a nonempty square matrix");
    Matrix<Rational> m_inv = inverse(m); // throws PreconditionError when singular
    const long rows = static_cast<long>(m.rows());
    const long n = minimal_grid(Rational(rows - 1), eps, rows);

    auto stabilized = [&](const Matrix<Rational>& top) {
        Matrix<Rational> s = Matrix<Rational>::identity(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < top.rows(); ++i)
            for (std::size_t j = 0; j < top.cols(); ++j) s.at(i, j) = top.at(i, j);
        return grid_morphism(to_laurent_entries(s), static_cast<int>(n));
    };

    RepBundle b;
    b.family = "constant";
    b.unit_det = det(m, static_cast<int>(m.rows()));
    b.fwd = stabilized(m);
    b.inv = stabilized(m_inv);
    attach_sizes(b);
    return b;
}

RepBundle squeeze_class(long k, const Matrix<Rational>& m, const Rational& eps) {
    if (!m.is_square() || m.rows() == 0) throw UsageError("expected a nonempty square matrix");
    Matrix<Rational> m_inv = inverse(m);
    const long rows = static_cast<long>(m.rows());
    const long n = minimal_grid(Rational(std::abs(k) + rows - 1), eps, rows);

    RepBundle rot = xi_rep(static_cast<int>(n));
    const GeoMorphism& step_fwd = k >= 0 ? rot.fwd : rot.inv;
    const GeoMorphism& step_inv = k >= 0 ? rot.inv : rot.fwd;
    GeoMorphism pow_fwd = GeoMorphism::identity(rot.fwd.source());
    GeoMorphism pow_inv = pow_fwd;
    for (long i = 0; i < std::abs(k); ++i) {
        pow_fwd = compose(step_fwd, pow_fwd);
        pow_inv = compose(pow_inv, step_inv);
    }

    Matrix<Rational> stab = Matrix<Rational>::identity(static_cast<std::size_t>(n));
    Matrix<Rational> stab_inv = stab;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            stab.at(i, j) = m.at(i, j);
            stab_inv.at(i, j) = m_inv.at(i, j);
        }
    GeoMorphism const_fwd = grid_morphism(to_laurent_entries(stab), static_cast<int>(n));
    GeoMorphism const_inv = grid_morphism(to_laurent_entries(stab_inv), static_cast<int>(n));

    RepBundle b;
    b.family = "class";
    b.t_exponent = k;
    b.unit_det = det(m, static_cast<int>(m.rows()));
    b.fwd = compose(pow_fwd, const_fwd);
    b.inv = compose(const_inv, pow_inv);
    attach_sizes(b);
    return b;
}

} // namespace ctrlk
