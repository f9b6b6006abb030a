#pragma once

#include <algorithm>

namespace geoflow::tol {

/// Group-element structure tolerance (unitarity, determinant, J-compatibility).
inline constexpr double structure = 1e-10;

/// Basis closure / re-expansion residual bound.
inline constexpr double closure = 1e-12;

/// Relative singular-value threshold for every numerical rank decision.
/// Singular values below rank_rel * max(sigma_max, 1) count as zero.
inline constexpr double rank_rel = 1e-8;

inline double rank_threshold(double sigma_max, double rel = rank_rel) {
  return rel * std::max(sigma_max, 1.0);
}

}  // namespace geoflow::tol
