#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geoflow/errors.hpp"
#include "geoflow/tolerances.hpp"

namespace geoflow {

enum class Family { SU, SO, Sp };

std::string family_name(Family f);

class AlgebraElement;

/// A fixed real basis of a compact matrix Lie algebra su(n), so(n) or sp(n),
/// together with structure constants, the invariant inner product
/// <X,Y> = -Re tr(XY), and the cached rank.
///
/// Basis matrices are normalized to unit invariant norm, so the coordinate
/// map is an isometry onto R^dim and the Gram matrix is the identity.
class AlgebraSpec : public std::enable_shared_from_this<AlgebraSpec> {
 public:
  using Ptr = std::shared_ptr<const AlgebraSpec>;

  static Ptr create(Family family, int n);

  Family family() const { return family_; }
  int n() const { return n_; }
  int dim() const { return dim_; }
  int rank() const { return rank_; }
  /// Side length of the defining complex matrices (n for su/so, 2n for sp).
  int matrix_size() const { return msize_; }
  std::string name() const;

  const std::vector<Eigen::MatrixXcd>& basis() const { return basis_; }

  /// adrep[i](k,j) = k-th coordinate of [e_i, e_j].
  const std::vector<Eigen::MatrixXd>& adrep() const { return adrep_; }

  /// Matrix of ad_xi acting on coordinates: column j = coords of [xi, e_j].
  Eigen::MatrixXd ad_matrix(const Eigen::VectorXd& coords) const;

  /// Coordinates of the orthogonal projection of M onto the algebra.
  Eigen::VectorXd project(const Eigen::MatrixXcd& M) const;

  /// Default invariant-polynomial degree list (power sums): 2..n for su(n),
  /// even degrees up to 2*rank for so/sp.
  const std::vector<int>& default_poly_degrees() const { return poly_degrees_; }

  /// Largest residual when re-expanding a basis bracket in the basis.
  double closure_residual() const { return closure_residual_; }

  AlgebraElement zero() const;
  AlgebraElement element(Eigen::VectorXd coords) const;
  AlgebraElement element_from_matrix(const Eigen::MatrixXcd& M,
                                     bool check_residual = true) const;

 private:
  AlgebraSpec() = default;

  Family family_{};
  int n_ = 0, dim_ = 0, rank_ = 0, msize_ = 0;
  std::vector<Eigen::MatrixXcd> basis_;
  std::vector<Eigen::MatrixXd> adrep_;
  std::vector<int> poly_degrees_;
  double closure_residual_ = 0.0;
};

/// Coordinate vector over the fixed real basis of an AlgebraSpec.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraSpec::Ptr spec, Eigen::VectorXd coords)
      : spec_(std::move(spec)), coords_(std::move(coords)) {
    if (coords_.size() != spec_->dim())
      throw SpecMismatch("coordinate length does not match algebra dimension");
  }

  const AlgebraSpec::Ptr& spec() const { return spec_; }
  const Eigen::VectorXd& coords() const { return coords_; }

  Eigen::MatrixXcd matrix() const;

  double norm() const { return coords_.norm(); }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(double s) const { return {spec_, coords_ * s}; }

 private:
  AlgebraSpec::Ptr spec_;
  Eigen::VectorXd coords_;
};

inline AlgebraElement operator*(double s, const AlgebraElement& x) { return x * s; }

/// Unitary (resp. special unitary / real orthogonal / unitary-symplectic)
/// matrix with a structure-tolerance certificate.
class GroupElement {
 public:
  /// Validates the family constraints to `tolerance` and throws
  /// NumericalFailure when violated.
  static GroupElement checked(AlgebraSpec::Ptr spec, Eigen::MatrixXcd mat,
                              double tolerance = tol::structure);

  /// No validation; for internal integrator states.
  static GroupElement unchecked(AlgebraSpec::Ptr spec, Eigen::MatrixXcd mat);

  static GroupElement identity(AlgebraSpec::Ptr spec);

  const AlgebraSpec::Ptr& spec() const { return spec_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }

  double unitarity_defect() const;
  /// det/J-compatibility/realness defect for the family; 0-based norm.
  double family_defect() const;

  GroupElement inverse() const { return unchecked(spec_, mat_.adjoint()); }
  GroupElement operator*(const GroupElement& o) const;

 private:
  GroupElement(AlgebraSpec::Ptr spec, Eigen::MatrixXcd mat)
      : spec_(std::move(spec)), mat_(std::move(mat)) {}

  AlgebraSpec::Ptr spec_;
  Eigen::MatrixXcd mat_;
};

/// Orthonormalized subspace of an algebra, stored as coordinate columns.
class Subspace {
 public:
  /// Columns are orthonormalized (they are orthonormal already when coming
  /// from an SVD); zero columns are dropped.
  Subspace(AlgebraSpec::Ptr spec, const Eigen::MatrixXd& span_coords);

  const AlgebraSpec::Ptr& spec() const { return spec_; }
  /// dim x k matrix with orthonormal columns.
  const Eigen::MatrixXd& basis_coords() const { return basis_; }
  int dimension() const { return static_cast<int>(basis_.cols()); }

  AlgebraElement basis_element(int i) const;
  std::vector<AlgebraElement> basis_elements() const;

  /// Orthogonal projection of coords onto the subspace.
  Eigen::VectorXd project(const Eigen::VectorXd& coords) const;
  /// Orthonormal basis of the orthogonal complement inside the algebra.
  Subspace complement() const;

  bool contains(const AlgebraElement& x, double tolerance = 1e-10) const;
  /// || P_this - P_other ||: 0 iff the subspaces agree.
  double projector_distance(const Subspace& other) const;

 private:
  AlgebraSpec::Ptr spec_;
  Eigen::MatrixXd basis_;
};

}  // namespace geoflow
