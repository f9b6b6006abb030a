#include "geoflow/liealg.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "geoflow/rng.hpp"

namespace geoflow {

namespace {

void require_same(const AlgebraElement& X, const AlgebraElement& Y) {
  if (X.spec() != Y.spec())
    throw SpecMismatch("operands live in different algebras");
}

// Eigendecomposition of the Hermitian matrix -i*X.
struct Spectral {
  Eigen::VectorXd lambda;   // spectrum(X) = { i*lambda_j }
  Eigen::MatrixXcd vectors;
};

Spectral spectral(const AlgebraElement& X) {
  Eigen::MatrixXcd H = std::complex<double>(0.0, -1.0) * X.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("eigendecomposition failed for " + X.spec()->name());
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace

AlgebraElement bracket(const AlgebraElement& X, const AlgebraElement& Y) {
  require_same(X, Y);
  const auto& spec = X.spec();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(spec->dim());
  for (int i = 0; i < spec->dim(); ++i)
    if (X.coords()[i] != 0.0) c += X.coords()[i] * (spec->adrep()[i] * Y.coords());
  return spec->element(std::move(c));
}

double inner(const AlgebraElement& X, const AlgebraElement& Y) {
  require_same(X, Y);
  return X.coords().dot(Y.coords());
}

GroupElement exp_to_group(const AlgebraElement& X, double t) {
  Spectral s = spectral(X);
  Eigen::VectorXcd phases(s.lambda.size());
  for (int i = 0; i < s.lambda.size(); ++i)
    phases[i] = std::exp(std::complex<double>(0.0, t * s.lambda[i]));
  Eigen::MatrixXcd M = s.vectors * phases.asDiagonal() * s.vectors.adjoint();
  if (X.spec()->family() == Family::SO) M = M.real().cast<std::complex<double>>();
  return GroupElement::checked(X.spec(), std::move(M));
}

AlgebraElement Ad(const GroupElement& g, const AlgebraElement& X) {
  if (g.spec() != X.spec())
    throw SpecMismatch("group and algebra elements have different specs");
  Eigen::MatrixXcd M = g.matrix() * X.matrix() * g.matrix().adjoint();
  return X.spec()->element(X.spec()->project(M));
}

Subspace centralizer(const AlgebraElement& xi, const std::optional<Subspace>& within,
                     double tol_rank) {
  const auto& spec = xi.spec();
  Eigen::MatrixXd A = spec->ad_matrix(xi.coords());
  if (within) {
    if (within->spec() != spec)
      throw SpecMismatch("`within` subspace has a different spec");
    Eigen::MatrixXd B = within->basis_coords();
    Eigen::MatrixXd AB = A * B;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(AB, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double thresh = tol::rank_threshold(sv.size() ? sv[0] : 0.0, tol_rank);
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv[i] > thresh) ++r;
    Eigen::MatrixXd null_in = svd.matrixV().rightCols(B.cols() - r);
    return Subspace(spec, B * null_in);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double thresh = tol::rank_threshold(sv.size() ? sv[0] : 0.0, tol_rank);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > thresh) ++r;
  return Subspace(spec, svd.matrixV().rightCols(spec->dim() - r));
}

bool is_regular(const AlgebraElement& xi, double tol_rank) {
  return centralizer(xi, std::nullopt, tol_rank).dimension() == xi.spec()->rank();
}

double invariant_poly(int k, const AlgebraElement& xi) {
  if (k < 1) throw InvalidParameters("invariant polynomial degree must be >= 1");
  Spectral s = spectral(xi);
  double p = 0.0;
  for (int i = 0; i < s.lambda.size(); ++i) p += std::pow(s.lambda[i], k);
  return p;
}

AlgebraElement grad_invariant_poly(int k, const AlgebraElement& xi) {
  if (k < 1) throw InvalidParameters("invariant polynomial degree must be >= 1");
  // p_k = tr(H^k), H = -i*xi; dp_k = k tr(H^{k-1} d H), so the gradient is
  // the algebra projection of i*k*H^{k-1}.
  Spectral s = spectral(xi);
  Eigen::VectorXcd powers(s.lambda.size());
  for (int i = 0; i < s.lambda.size(); ++i)
    powers[i] = std::complex<double>(0.0, k) * std::pow(s.lambda[i], k - 1);
  Eigen::MatrixXcd G = s.vectors * powers.asDiagonal() * s.vectors.adjoint();
  return xi.spec()->element(xi.spec()->project(G));
}

int rank_of_algebra(const AlgebraSpec::Ptr& spec, std::uint64_t seed) {
  constexpr int kSamples = 32;
  Rng rng(seed);
  int min_dim = spec->dim();
  for (int i = 0; i < kSamples; ++i) {
    AlgebraElement x = spec->element(rng.gaussian_vector(spec->dim()));
    min_dim = std::min(min_dim, centralizer(x).dimension());
  }
  if (min_dim != spec->rank())
    throw RankMismatch(spec->name() + ": sampled minimum centralizer dimension " +
                       std::to_string(min_dim) + " != closed form " +
                       std::to_string(spec->rank()));
  return min_dim;
}

}  // namespace geoflow
