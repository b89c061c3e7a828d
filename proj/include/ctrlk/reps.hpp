#pragma once

#include <optional>
#include <string>

#include "ctrlk/functors.hpp"
#include "ctrlk/geometry.hpp"
#include "ctrlk/witness.hpp"

namespace ctrlk {

/// A mutually inverse pair of equivariant automorphisms together with the
/// class it represents in K1 of the group ring: t^k times a scalar
/// determinant for the cyclic group, or a group word for the dihedral one.
/// The xi family carries an elementary-matrix witness identifying it with
/// the diagonal representative.
struct RepBundle {
    std::string family; // xi | nu | s | r | class | constant
    GeoMorphism fwd, inv;
    Sizes fwd_sizes, inv_sizes;
    long t_exponent = 0;
    Rational unit_det = Rational(1);
    std::string group_word;
    std::optional<ElementaryWitness<LaurentPoly>> witness;
};

/// Cyclic rotation of the 1/n grid: the 1/n-automorphism whose group-ring
/// matrix is the n x n companion matrix of determinant t.
RepBundle xi_rep(int n);

/// Block-diagonal comparison automorphism: the full shift on the first grid
/// line and the identity elsewhere; same class as xi_rep(n).
RepBundle nu_rep(int n);

/// Same-x copy swap on the two-copy 1/n grid of the dihedral group; an
/// involution of size zero.
GeoMorphism grid_swap(int n);

/// The size-zero involution representing the reflection class.
RepBundle s_rep();

/// The xi construction on the two-copy grid: size 1/n, class r.
RepBundle r_rep(int n);

/// Squeezes an invertible constant matrix below size eps by stabilizing to
/// the smallest grid with (m-1)/N < eps.
RepBundle squeeze_constant(const Matrix<Rational>& m, const Rational& eps);

/// Squeezes the class t^k * [M]: a grid rotation power composed with the
/// stabilized constant block on a common 1/N grid, with
/// (|k| + m - 1)/N < eps so both sizes stay below eps.
RepBundle squeeze_class(long k, const Matrix<Rational>& m, const Rational& eps);

} // namespace ctrlk
