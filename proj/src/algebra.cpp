#include "geoflow/algebra.hpp"

#include <cmath>
#include <complex>

namespace geoflow {

using Cplx = std::complex<double>;
namespace {

constexpr Cplx kI{0.0, 1.0};

// Frobenius-orthogonal real basis of u(n): for j<k the pair
// (E_jk - E_kj)/sqrt2, i(E_jk + E_kj)/sqrt2, then i E_jj.
std::vector<Eigen::MatrixXcd> unitary_basis(int n) {
  std::vector<Eigen::MatrixXcd> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
      A(j, k) = s;
      A(k, j) = -s;
      out.push_back(A);
      Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
      S(j, k) = kI * s;
      S(k, j) = kI * s;
      out.push_back(S);
    }
  }
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n, n);
    D(j, j) = kI;
    out.push_back(D);
  }
  return out;
}

std::vector<Eigen::MatrixXcd> su_basis(int n) {
  std::vector<Eigen::MatrixXcd> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
      A(j, k) = s;
      A(k, j) = -s;
      out.push_back(A);
      Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
      S(j, k) = kI * s;
      S(k, j) = kI * s;
      out.push_back(S);
    }
  }
  // Traceless orthogonal diagonal directions i*diag(1,..,1,-m,0,..)/norm.
  for (int m = 1; m < n; ++m) {
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n, n);
    const double norm = std::sqrt(static_cast<double>(m) * (m + 1));
    for (int j = 0; j < m; ++j) D(j, j) = kI / norm;
    D(m, m) = -kI * static_cast<double>(m) / norm;
    out.push_back(D);
  }
  return out;
}

std::vector<Eigen::MatrixXcd> so_basis(int n) {
  std::vector<Eigen::MatrixXcd> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
      A(j, k) = s;
      A(k, j) = -s;
      out.push_back(A);
    }
  }
  return out;
}

// sp(n) inside u(2n): X = [[A, B], [-conj(B), conj(A)]] with A in u(n)
// and B complex symmetric; then X^T J + J X = 0 for J = [[0, I], [-I, 0]].
Eigen::MatrixXcd sp_embed(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  const int n = static_cast<int>(A.rows());
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  X.topLeftCorner(n, n) = A;
  X.topRightCorner(n, n) = B;
  X.bottomLeftCorner(n, n) = -B.conjugate();
  X.bottomRightCorner(n, n) = A.conjugate();
  return X;
}

std::vector<Eigen::MatrixXcd> sp_basis(int n) {
  std::vector<Eigen::MatrixXcd> out;
  const Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& A : unitary_basis(n))
    out.push_back(sp_embed(A, Z) / std::sqrt(2.0));
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(n, n);
      double w = (j == k) ? 1.0 : s;
      B(j, k) = w;
      B(k, j) = w;
      out.push_back(sp_embed(Z, B) / std::sqrt(2.0));
      Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
      C(j, k) = kI * w;
      C(k, j) = kI * w;
      out.push_back(sp_embed(Z, C) / std::sqrt(2.0));
    }
  }
  return out;
}

Eigen::MatrixXcd standard_J(int two_n) {
  const int n = two_n / 2;
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(two_n, two_n);
  J.topRightCorner(n, n) = Eigen::MatrixXcd::Identity(n, n);
  J.bottomLeftCorner(n, n) = -Eigen::MatrixXcd::Identity(n, n);
  return J;
}

double frobenius_inner(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y) {
  // -Re tr(XY); equals the Frobenius inner product for skew-Hermitian X, Y.
  return -(X * Y).trace().real();
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::SU: return "su";
    case Family::SO: return "so";
    case Family::Sp: return "sp";
  }
  return "?";
}

std::string AlgebraSpec::name() const {
  return family_name(family_) + "(" + std::to_string(n_) + ")";
}

AlgebraSpec::Ptr AlgebraSpec::create(Family family, int n) {
  if (n < 2) throw InvalidParameters("algebra requires n >= 2");
  auto spec = std::shared_ptr<AlgebraSpec>(new AlgebraSpec());
  spec->family_ = family;
  spec->n_ = n;
  switch (family) {
    case Family::SU:
      spec->basis_ = su_basis(n);
      spec->rank_ = n - 1;
      spec->msize_ = n;
      for (int k = 2; k <= n; ++k) spec->poly_degrees_.push_back(k);
      break;
    case Family::SO:
      spec->basis_ = so_basis(n);
      spec->rank_ = n / 2;
      spec->msize_ = n;
      for (int k = 1; k <= n / 2; ++k) spec->poly_degrees_.push_back(2 * k);
      break;
    case Family::Sp:
      spec->basis_ = sp_basis(n);
      spec->rank_ = n;
      spec->msize_ = 2 * n;
      for (int k = 1; k <= n; ++k) spec->poly_degrees_.push_back(2 * k);
      break;
  }
  spec->dim_ = static_cast<int>(spec->basis_.size());
  const int d = spec->dim_;

  // Gram must be the identity with the unit-norm construction.
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      double g = frobenius_inner(spec->basis_[i], spec->basis_[j]);
      double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - expect) > tol::structure)
        throw NumericalFailure("basis Gram matrix is not the identity");
    }
  }

  // Structure constants with closure check.
  spec->adrep_.assign(d, Eigen::MatrixXd::Zero(d, d));
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Eigen::MatrixXcd C = spec->basis_[i] * spec->basis_[j] -
                           spec->basis_[j] * spec->basis_[i];
      Eigen::VectorXd c = spec->project(C);
      Eigen::MatrixXcd R = C;
      for (int k = 0; k < d; ++k) R -= c[k] * spec->basis_[k];
      worst = std::max(worst, R.norm());
      spec->adrep_[i].col(j) = c;
    }
  }
  spec->closure_residual_ = worst;
  if (worst > tol::closure)
    throw NumericalFailure("basis bracket closure residual " + std::to_string(worst));
  return spec;
}

Eigen::MatrixXd AlgebraSpec::ad_matrix(const Eigen::VectorXd& coords) const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (coords[i] != 0.0) M += coords[i] * adrep_[i];
  return M;
}

Eigen::VectorXd AlgebraSpec::project(const Eigen::MatrixXcd& M) const {
  Eigen::VectorXd c(dim_);
  for (int i = 0; i < dim_; ++i) c[i] = frobenius_inner(M, basis_[i]);
  return c;
}

AlgebraElement AlgebraSpec::zero() const {
  return AlgebraElement(shared_from_this(), Eigen::VectorXd::Zero(dim_));
}

AlgebraElement AlgebraSpec::element(Eigen::VectorXd coords) const {
  return AlgebraElement(shared_from_this(), std::move(coords));
}

AlgebraElement AlgebraSpec::element_from_matrix(const Eigen::MatrixXcd& M,
                                                bool check_residual) const {
  Eigen::VectorXd c = project(M);
  if (check_residual) {
    Eigen::MatrixXcd R = M;
    for (int i = 0; i < dim_; ++i) R -= c[i] * basis_[i];
    if (R.norm() > 1e-10 * std::max(1.0, M.norm()))
      throw InvalidParameters("matrix is not in the algebra (projection residual " +
                              std::to_string(R.norm()) + ")");
  }
  return AlgebraElement(shared_from_this(), std::move(c));
}

Eigen::MatrixXcd AlgebraElement::matrix() const {
  Eigen::MatrixXcd M =
      Eigen::MatrixXcd::Zero(spec_->matrix_size(), spec_->matrix_size());
  for (int i = 0; i < spec_->dim(); ++i)
    if (coords_[i] != 0.0) M += coords_[i] * spec_->basis()[i];
  return M;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  if (spec_ != o.spec_) throw SpecMismatch("adding elements of different algebras");
  return {spec_, coords_ + o.coords_};
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  if (spec_ != o.spec_) throw SpecMismatch("subtracting elements of different algebras");
  return {spec_, coords_ - o.coords_};
}

GroupElement GroupElement::checked(AlgebraSpec::Ptr spec, Eigen::MatrixXcd mat,
                                   double tolerance) {
  GroupElement g(std::move(spec), std::move(mat));
  if (g.unitarity_defect() > tolerance)
    throw NumericalFailure("unitarity defect " + std::to_string(g.unitarity_defect()));
  if (g.family_defect() > tolerance)
    throw NumericalFailure("family constraint defect " + std::to_string(g.family_defect()));
  return g;
}

GroupElement GroupElement::unchecked(AlgebraSpec::Ptr spec, Eigen::MatrixXcd mat) {
  return GroupElement(std::move(spec), std::move(mat));
}

GroupElement GroupElement::identity(AlgebraSpec::Ptr spec) {
  const int m = spec->matrix_size();
  return GroupElement(std::move(spec), Eigen::MatrixXcd::Identity(m, m));
}

double GroupElement::unitarity_defect() const {
  const int m = spec_->matrix_size();
  return (mat_.adjoint() * mat_ - Eigen::MatrixXcd::Identity(m, m)).norm();
}

double GroupElement::family_defect() const {
  switch (spec_->family()) {
    case Family::SU:
      return std::abs(mat_.determinant() - Cplx(1.0, 0.0));
    case Family::SO: {
      double im = mat_.imag().norm();
      double det = std::abs(mat_.determinant() - Cplx(1.0, 0.0));
      return std::max(im, det);
    }
    case Family::Sp: {
      Eigen::MatrixXcd J = standard_J(spec_->matrix_size());
      return (mat_.transpose() * J * mat_ - J).norm();
    }
  }
  return 0.0;
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  if (spec_ != o.spec_) throw SpecMismatch("multiplying elements of different groups");
  return unchecked(spec_, mat_ * o.mat_);
}

Subspace::Subspace(AlgebraSpec::Ptr spec, const Eigen::MatrixXd& span_coords)
    : spec_(std::move(spec)) {
  if (span_coords.rows() != spec_->dim())
    throw SpecMismatch("subspace coordinates have wrong length");
  if (span_coords.cols() == 0) {
    basis_ = Eigen::MatrixXd::Zero(spec_->dim(), 0);
    return;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(span_coords, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double thresh = tol::rank_threshold(sv.size() ? sv[0] : 0.0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > thresh) ++r;
  basis_ = svd.matrixU().leftCols(r);
}

AlgebraElement Subspace::basis_element(int i) const {
  return AlgebraElement(spec_, basis_.col(i));
}

std::vector<AlgebraElement> Subspace::basis_elements() const {
  std::vector<AlgebraElement> out;
  out.reserve(dimension());
  for (int i = 0; i < dimension(); ++i) out.push_back(basis_element(i));
  return out;
}

Eigen::VectorXd Subspace::project(const Eigen::VectorXd& coords) const {
  return basis_ * (basis_.transpose() * coords);
}

Subspace Subspace::complement() const {
  const int d = spec_->dim();
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(d, d) - basis_ * basis_.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(P, Eigen::ComputeThinU);
  Eigen::MatrixXd comp = svd.matrixU().leftCols(d - dimension());
  Subspace out(spec_, Eigen::MatrixXd::Zero(d, 0));
  out.basis_ = comp;
  return out;
}

bool Subspace::contains(const AlgebraElement& x, double tolerance) const {
  Eigen::VectorXd r = x.coords() - project(x.coords());
  return r.norm() <= tolerance * std::max(1.0, x.coords().norm());
}

double Subspace::projector_distance(const Subspace& other) const {
  Eigen::MatrixXd P = basis_ * basis_.transpose();
  Eigen::MatrixXd Q = other.basis_coords() * other.basis_coords().transpose();
  return (P - Q).norm();
}

}  // namespace geoflow
