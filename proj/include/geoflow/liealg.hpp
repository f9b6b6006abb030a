#pragma once

#include <optional>

#include "geoflow/algebra.hpp"

namespace geoflow {

/// [X, Y] re-expanded in the basis (computed through structure constants).
AlgebraElement bracket(const AlgebraElement& X, const AlgebraElement& Y);

/// Invariant inner product -Re tr(XY). Equals the coordinate dot product.
double inner(const AlgebraElement& X, const AlgebraElement& Y);

/// exp(tX) via eigendecomposition (X is normal).
GroupElement exp_to_group(const AlgebraElement& X, double t = 1.0);

/// g X g^{-1} re-expanded in the basis.
AlgebraElement Ad(const GroupElement& g, const AlgebraElement& X);

/// Orthonormal basis of {eta in `within` : [xi, eta] = 0}, via SVD nullspace
/// at the relative threshold tol_rank. `within` defaults to the whole algebra.
Subspace centralizer(const AlgebraElement& xi,
                     const std::optional<Subspace>& within = std::nullopt,
                     double tol_rank = tol::rank_rel);

/// True iff dim centralizer(xi) equals the rank of the algebra.
bool is_regular(const AlgebraElement& xi, double tol_rank = tol::rank_rel);

/// Power-sum invariant p_k(xi) = sum_j lambda_j^k, spectrum(xi) = {i lambda_j}.
double invariant_poly(int k, const AlgebraElement& xi);

/// Gradient of p_k at xi with respect to the invariant inner product;
/// commutes with xi.
AlgebraElement grad_invariant_poly(int k, const AlgebraElement& xi);

/// Minimum centralizer dimension over 32 seeded samples, cross-checked
/// against the closed form (n-1 for su, n for sp, floor(n/2) for so).
/// Throws RankMismatch when the two disagree.
int rank_of_algebra(const AlgebraSpec::Ptr& spec, std::uint64_t seed = 0x9e0f10);

}  // namespace geoflow
