#pragma once

#include "ctrlk/dihedral.hpp"
#include "ctrlk/geometry.hpp"
#include "ctrlk/laurent.hpp"
#include "ctrlk/matrix.hpp"

namespace ctrlk {

/// Forgets the geometry of an equivariant morphism at base height (all
/// heights exactly 1) and returns the matrix over the group ring, indexed by
/// the sorted fundamental-domain basis: rows by target representatives,
/// columns by source representatives, rank-many rows/columns per point. The
/// orientation is fixed so the shift-up-by-one morphism on the integer grid
/// maps to the 1x1 matrix (t).
Matrix<LaurentPoly> to_laurent_matrix(const GeoMorphism& f);
Matrix<DihedralElem> to_dihedral_matrix(const GeoMorphism& f);

/// Section of the forgetful functor: places an n x n Laurent matrix (blocked
/// into rank x rank scalar blocks when rank > 1) on the height-1 grid
/// {k + j/n}, producing the equivariant endomorphism with
/// to_laurent_matrix(grid_morphism(A, n)) == A.
GeoMorphism grid_morphism(const Matrix<LaurentPoly>& a, int n, int rank = 1);

/// The grid module used by grid_morphism.
GeoModule grid_module(int n, int rank = 1);

/// Matrix product with the entry multiplications reversed (the product in
/// the opposite coefficient ring). With the orientation fixed by the shift
/// convention, to_dihedral_matrix carries composition to this product; over
/// a commutative ring it coincides with the ordinary one.
Matrix<DihedralElem> opposite_product(const Matrix<DihedralElem>& a,
                                      const Matrix<DihedralElem>& b);

/// Distance matrix whose (i, j) entry is |k + (i-j)/n|: the horizontal reach
/// contributed by the t^k coefficient at position (i, j) of an n x n Laurent
/// matrix. Transposition gives the matrix for -k.
Matrix<Rational> distance_matrix(long k, int n);

/// Size of an n x n Laurent matrix (rank r blocks supported): the maximum
/// distance_matrix entry over positions carrying a nonzero coefficient.
/// Equals sizes(grid_morphism(a, n, rank)).size.
Rational matrix_size(const Matrix<LaurentPoly>& a, int n, int rank = 1);

} // namespace ctrlk
