#include "geoflow/metrics.hpp"

#include <cmath>

#include "geoflow/dynamics.hpp"

namespace geoflow {

AlgebraElement SectionalOperator::apply(const AlgebraElement& x) const {
  if (x.spec() != a_.spec())
    throw SpecMismatch("sectional operator applied across specs");
  return x.spec()->element(phi_ * x.coords());
}

SectionalOperator build_sectional(const Subspace& t, const AlgebraElement& a,
                                  const AlgebraElement& b, const Eigen::MatrixXd& D,
                                  double tol_rank) {
  const auto& spec = t.spec();
  if (a.spec() != spec || b.spec() != spec)
    throw SpecMismatch("a, b must live in the algebra of t");
  const int k = t.dimension();
  if (D.rows() != k || D.cols() != k)
    throw InvalidParameters("D must be a square matrix on the coordinates of t");
  if ((D - D.transpose()).norm() > 1e-12 * std::max(1.0, D.norm()))
    throw InvalidParameters("D must be symmetric");
  if (!t.contains(a) || !t.contains(b))
    throw InvalidParameters("a and b must lie in t");

  // t must be commutative.
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      double r = bracket(t.basis_element(i), t.basis_element(j)).norm();
      if (r > 1e-10) throw NotCartan("t is not commutative: bracket norm " + std::to_string(r));
    }

  // a regular with centralizer exactly t.
  Subspace cent = centralizer(a, std::nullopt, tol_rank);
  if (cent.dimension() != k || cent.projector_distance(t) > 1e-8)
    throw NotRegular("centralizer of a is not t");

  const Eigen::MatrixXd& T = t.basis_coords();
  Subspace perp = t.complement();
  const Eigen::MatrixXd& Q = perp.basis_coords();

  Eigen::MatrixXd A = spec->ad_matrix(a.coords());
  Eigen::MatrixXd B = spec->ad_matrix(b.coords());
  Eigen::MatrixXd Ap = Q.transpose() * A * Q;
  Eigen::MatrixXd Bp = Q.transpose() * B * Q;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Ap, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double thresh = tol::rank_threshold(sv.size() ? sv[0] : 0.0, tol_rank);
  if (sv.size() == 0 || sv[sv.size() - 1] <= thresh)
    throw NotRegular("ad_a is singular on the complement of t");
  Eigen::MatrixXd phi_perp = svd.solve(Bp);

  double sym_defect = (phi_perp - phi_perp.transpose()).norm();
  if (sym_defect > 1e-10 * std::max(1.0, phi_perp.norm()))
    throw NumericalFailure("sectional operator is not symmetric: defect " +
                           std::to_string(sym_defect));
  phi_perp = 0.5 * (phi_perp + phi_perp.transpose());

  Eigen::MatrixXd phi = T * D * T.transpose() + Q * phi_perp * Q.transpose();
  return SectionalOperator(t, a, b, std::move(phi));
}

std::pair<bool, double> is_positive_definite(const SectionalOperator& phi) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(phi.matrix());
  double min_ev = es.eigenvalues().minCoeff();
  return {min_ev > 0.0, min_ev};
}

Subspace default_cartan(const AlgebraSpec::Ptr& spec) {
  const int d = spec->dim();
  std::vector<int> idx;
  switch (spec->family()) {
    case Family::SU: {
      // Diagonal directions are the last n-1 basis elements.
      for (int i = d - (spec->n() - 1); i < d; ++i) idx.push_back(i);
      break;
    }
    case Family::SO: {
      // Rotation generators in the planes (0,1), (2,3), ...; basis order is
      // (j,k) lexicographic with j < k.
      const int n = spec->n();
      auto flat = [n](int j, int k) {
        // index of pair (j,k), j<k, in lexicographic order
        return j * n - j * (j + 1) / 2 + (k - j - 1);
      };
      for (int b = 0; 2 * b + 1 < n; ++b) idx.push_back(flat(2 * b, 2 * b + 1));
      break;
    }
    case Family::Sp: {
      // i*E_jj directions of the embedded u(n): the u(n) block basis lists
      // off-diagonal pairs first, then n diagonals.
      const int n = spec->n();
      const int un_dim = n * n;
      for (int j = 0; j < n; ++j) idx.push_back(un_dim - n + j);
      break;
    }
  }
  Eigen::MatrixXd span = Eigen::MatrixXd::Zero(d, static_cast<int>(idx.size()));
  for (int c = 0; c < static_cast<int>(idx.size()); ++c) span(idx[c], c) = 1.0;
  return Subspace(spec, span);
}

MetricSpec MetricSpec::left_sectional(SectionalOperator op) {
  MetricSpec s;
  s.left = Side::Sectional;
  s.right = Side::None;
  s.left_op = std::move(op);
  return s;
}

MetricSpec MetricSpec::right_sectional(SectionalOperator op) {
  MetricSpec s;
  s.left = Side::None;
  s.right = Side::Sectional;
  s.right_op = std::move(op);
  return s;
}

MetricSpec MetricSpec::sum(SectionalOperator l, SectionalOperator r) {
  MetricSpec s;
  s.left = Side::Sectional;
  s.right = Side::Sectional;
  s.left_op = std::move(l);
  s.right_op = std::move(r);
  return s;
}

AlgebraElement MetricSpec::apply_left(const AlgebraElement& x) const {
  switch (left) {
    case Side::None: return x.spec()->zero();
    case Side::Identity: return x;
    case Side::Sectional: return left_op->apply(x);
  }
  return x;
}

AlgebraElement MetricSpec::apply_right(const AlgebraElement& x) const {
  switch (right) {
    case Side::None: return x.spec()->zero();
    case Side::Identity: return x;
    case Side::Sectional: return right_op->apply(x);
  }
  return x;
}

double hamiltonian(const MetricSpec& spec, const CotangentState& x) {
  double H = 0.0;
  if (spec.has_left()) H += 0.5 * inner(spec.apply_left(x.m()), x.m());
  if (spec.has_right()) {
    AlgebraElement n = x.spatial();
    H += 0.5 * inner(spec.apply_right(n), n);
  }
  return H;
}

AlgebraElement velocity(const MetricSpec& spec, const CotangentState& x) {
  AlgebraElement omega = x.m().spec()->zero();
  if (spec.has_left()) omega = omega + spec.apply_left(x.m());
  if (spec.has_right()) {
    AlgebraElement n = x.spatial();
    omega = omega + Ad(x.g().inverse(), spec.apply_right(n));
  }
  return omega;
}

}  // namespace geoflow
