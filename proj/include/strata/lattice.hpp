#pragma once

#include "strata/integer.hpp"

namespace strata {

/// Row Hermite normal form of the lattice spanned by the rows of `gens`
/// (positive pivots, entries above a pivot reduced into [0, pivot)). Zero rows
/// are dropped, so the result is the canonical basis of the row lattice.
Matrix hnf_basis(Matrix gens, int n);

/// Canonical (HNF) basis of {x in Z^n : a.x = 0 for every row a}.
Matrix integer_kernel(const Matrix& rows, int n);

/// Canonical basis of (span_Q gens) cap Z^n.
Matrix saturate(const Matrix& gens, int n);

Int determinant(const Matrix& m);
int rank(const Matrix& m, int n);

/// Classical adjugate by cofactor expansion: adj(m) m = m adj(m) = det(m) I.
Matrix adjugate(const Matrix& m);

Matrix transpose(const Matrix& m, int n);
Vec mat_vec(const Matrix& m, const Vec& x);

/// Integer matrix P with P v parallel to the orthogonal projection of v onto
/// span(basis)^perp, scaled by det(B B^T) > 0. `basis` rows must be independent.
Matrix orthogonal_projector(const Matrix& basis, int n);

/// Primitive vector along P v (the zero vector stays zero).
Vec project_primitive(const Matrix& projector, const Vec& v);

/// Whether v lies in the Z-span of the rows of `basis`.
bool lattice_contains(const Matrix& basis, const Vec& v, int n);

}  // namespace strata
