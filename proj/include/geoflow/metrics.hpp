#pragma once

#include <optional>
#include <utility>

#include "geoflow/liealg.hpp"

namespace geoflow {

class CotangentState;

/// Symmetric operator phi on the algebra with phi|t = D and
/// phi|t_perp = ad_a^{-1} ad_b, stored as a dense symmetric matrix in the
/// global algebra basis.
class SectionalOperator {
 public:
  const Subspace& cartan() const { return cartan_; }
  const AlgebraElement& a() const { return a_; }
  const AlgebraElement& b() const { return b_; }
  /// dim x dim symmetric matrix in algebra coordinates.
  const Eigen::MatrixXd& matrix() const { return phi_; }

  AlgebraElement apply(const AlgebraElement& x) const;

  friend SectionalOperator build_sectional(const Subspace& t, const AlgebraElement& a,
                                           const AlgebraElement& b,
                                           const Eigen::MatrixXd& D, double tol_rank);

 private:
  SectionalOperator(Subspace t, AlgebraElement a, AlgebraElement b, Eigen::MatrixXd phi)
      : cartan_(std::move(t)), a_(std::move(a)), b_(std::move(b)), phi_(std::move(phi)) {}

  Subspace cartan_;
  AlgebraElement a_, b_;
  Eigen::MatrixXd phi_;
};

/// Assembles the sectional operator. `D` acts on the coordinates of `t`
/// (in the order of its orthonormal basis). Throws NotCartan when t is not
/// commutative and NotRegular when ad_a is singular on t_perp.
SectionalOperator build_sectional(const Subspace& t, const AlgebraElement& a,
                                  const AlgebraElement& b, const Eigen::MatrixXd& D,
                                  double tol_rank = tol::rank_rel);

/// (positive definite?, smallest eigenvalue).
std::pair<bool, double> is_positive_definite(const SectionalOperator& phi);

/// Standard Cartan subalgebra: diagonal directions for su/sp, 2x2 rotation
/// blocks for so.
Subspace default_cartan(const AlgebraSpec::Ptr& spec);

/// Left/right metric specification on left-trivialized T*G.
struct MetricSpec {
  enum class Side { None, Identity, Sectional };

  Side left = Side::Identity;
  Side right = Side::None;
  std::optional<SectionalOperator> left_op;
  std::optional<SectionalOperator> right_op;

  static MetricSpec biinvariant() { return MetricSpec{}; }
  static MetricSpec left_sectional(SectionalOperator op);
  static MetricSpec right_sectional(SectionalOperator op);
  static MetricSpec sum(SectionalOperator left, SectionalOperator right);

  bool has_left() const { return left != Side::None; }
  bool has_right() const { return right != Side::None; }

  AlgebraElement apply_left(const AlgebraElement& x) const;
  AlgebraElement apply_right(const AlgebraElement& x) const;
};

/// H = 1/2 <phi_left m, m> + 1/2 <phi_right n, n>, n = Ad_g m.
double hamiltonian(const MetricSpec& spec, const CotangentState& x);

/// Fiber derivative Omega = phi_left m + Ad_{g^-1} phi_right (Ad_g m).
AlgebraElement velocity(const MetricSpec& spec, const CotangentState& x);

}  // namespace geoflow
