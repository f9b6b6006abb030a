#include "geoflow/actions.hpp"

#include <cmath>
#include <complex>

#include "geoflow/rng.hpp"

namespace geoflow {

namespace {

using Cplx = std::complex<double>;
constexpr Cplx kI{0.0, 1.0};

Eigen::VectorXd stack_pair(const GeneratorPair& p) {
  Eigen::VectorXd v(2 * p.a1.spec()->dim());
  v << p.a1.coords(), p.a2.coords();
  return v;
}

}  // namespace

TwoSidedAction::TwoSidedAction(AlgebraSpec::Ptr spec, std::vector<GeneratorPair> pairs,
                               std::string name)
    : spec_(std::move(spec)), pairs_(std::move(pairs)), name_(std::move(name)) {
  if (pairs_.empty()) throw InvalidParameters("action requires at least one pair");
  const int d = spec_->dim();
  const int p = static_cast<int>(pairs_.size());
  Eigen::MatrixXd S(2 * d, p);
  for (int i = 0; i < p; ++i) {
    if (pairs_[i].a1.spec() != spec_ || pairs_[i].a2.spec() != spec_)
      throw SpecMismatch("pair generators live in a different algebra");
    S.col(i) = stack_pair(pairs_[i]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(S, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double thresh = tol::rank_threshold(sv[0]);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > thresh) ++r;
  if (r != p)
    throw InvalidParameters("action pairs are linearly dependent in g + g");

  // u must be a subalgebra: componentwise brackets stay in the span.
  Eigen::MatrixXd U = svd.matrixU().leftCols(r);
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      GeneratorPair br{bracket(pairs_[i].a1, pairs_[j].a1),
                       bracket(pairs_[i].a2, pairs_[j].a2)};
      Eigen::VectorXd v = stack_pair(br);
      if (v.norm() > 1e-10) abelian_ = false;
      Eigen::VectorXd res = v - U * (U.transpose() * v);
      closure_residual_ = std::max(closure_residual_, res.norm());
    }
  }
  if (closure_residual_ > 1e-10)
    throw InvalidParameters("pairs do not span a subalgebra of g + g: residual " +
                            std::to_string(closure_residual_));
}

std::vector<AlgebraElement> generators_at(const TwoSidedAction& action,
                                          const GroupElement& g) {
  if (g.spec() != action.spec()) throw SpecMismatch("group element has a different spec");
  GroupElement ginv = g.inverse();
  std::vector<AlgebraElement> out;
  out.reserve(action.pairs().size());
  for (const auto& p : action.pairs()) out.push_back(Ad(ginv, p.a1) - p.a2);
  return out;
}

Eigen::VectorXd moment(const TwoSidedAction& action, const CotangentState& x) {
  AlgebraElement n = x.spatial();
  Eigen::VectorXd out(action.pairs().size());
  for (std::size_t i = 0; i < action.pairs().size(); ++i)
    out[i] = inner(n, action.pairs()[i].a1) - inner(x.m(), action.pairs()[i].a2);
  return out;
}

VerticalData vertical_horizontal(const TwoSidedAction& action) {
  const int d = action.spec()->dim();
  const int p = static_cast<int>(action.pairs().size());
  Eigen::MatrixXd span(d, p);
  for (int i = 0; i < p; ++i)
    span.col(i) = action.pairs()[i].a1.coords() - action.pairs()[i].a2.coords();
  Subspace vertical(action.spec(), span);
  Subspace horizontal = vertical.complement();
  bool degenerate = vertical.dimension() < p;
  return {std::move(vertical), std::move(horizontal), degenerate};
}

std::vector<AlgebraElement> sample_horizontal(const TwoSidedAction& action,
                                              std::uint64_t seed, int count) {
  VerticalData vd = vertical_horizontal(action);
  const Eigen::MatrixXd& H = vd.horizontal.basis_coords();
  std::vector<AlgebraElement> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Rng rng = Rng::stream(seed, i);
    Eigen::VectorXd c = H * rng.gaussian_vector(static_cast<int>(H.cols()));
    double nrm = c.norm();
    if (nrm == 0.0) nrm = 1.0;
    out.push_back(action.spec()->element(c / nrm));
  }
  return out;
}

int u_xi_dim(const TwoSidedAction& action, const AlgebraElement& xi, double tol_rank) {
  VerticalData vd = vertical_horizontal(action);
  if (vd.vertical.dimension() == 0) return 0;
  return centralizer(xi, vd.vertical, tol_rank).dimension();
}

double infinitesimal_freeness(const TwoSidedAction& action, std::uint64_t seed,
                              int samples) {
  const auto& spec = action.spec();
  const int p = static_cast<int>(action.pairs().size());
  double min_sv = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Rng rng = Rng::stream(seed, s);
    GroupElement g = exp_to_group(spec->element(rng.gaussian_vector(spec->dim())));
    auto gens = generators_at(action, g);
    Eigen::MatrixXd M(spec->dim(), p);
    for (int i = 0; i < p; ++i) M.col(i) = gens[i].coords();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    min_sv = std::min(min_sv, svd.singularValues().minCoeff());
  }
  return min_sv;
}

CotangentState action_flow(const GeneratorPair& pair, double t, const CotangentState& x) {
  GroupElement e1 = exp_to_group(pair.a1, t);
  GroupElement e2 = exp_to_group(pair.a2, t);
  GroupElement g = e1 * x.g() * e2.inverse();
  AlgebraElement m = Ad(e2, x.m());
  return CotangentState(std::move(g), std::move(m));
}

TwoSidedAction eschenburg_action(int k, int l, int p, int q) {
  if (k == p && l == q)
    throw InvalidParameters("eschenburg parameters give a vanishing vertical generator");
  auto spec = AlgebraSpec::create(Family::SU, 3);
  auto diag = [&](int u, int v) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(3, 3);
    M(0, 0) = kI * static_cast<double>(u);
    M(1, 1) = kI * static_cast<double>(v);
    M(2, 2) = kI * static_cast<double>(-u - v);
    return spec->element_from_matrix(M);
  };
  std::vector<GeneratorPair> pairs{{diag(k, l), diag(p, q)}};
  return TwoSidedAction(spec, std::move(pairs),
                        "eschenburg(" + std::to_string(k) + "," + std::to_string(l) +
                            "," + std::to_string(p) + "," + std::to_string(q) + ")");
}

TwoSidedAction gromoll_meyer_action() {
  auto spec = AlgebraSpec::create(Family::Sp, 2);
  // Quaternionic x = b*i + c*j + d*k maps to the 2x2 complex block pair
  // A = i*b, B = c + i*d inside [[A, B], [-conj B, conj A]].
  auto embed = [&](double b, double c, double d, bool both_slots) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(4, 4);
    auto slot = [&](int s) {
      Cplx A = kI * b;
      Cplx B = Cplx(c, d);
      M(s, s) = A;
      M(s, s + 2) = B;
      M(s + 2, s) = -std::conj(B);
      M(s + 2, s + 2) = std::conj(A);
    };
    slot(0);
    if (both_slots) slot(1);
    return spec->element_from_matrix(M);
  };
  std::vector<GeneratorPair> pairs;
  const double basis[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (const auto& x : basis)
    pairs.push_back({embed(x[0], x[1], x[2], true), embed(x[0], x[1], x[2], false)});
  return TwoSidedAction(spec, std::move(pairs), "gromoll_meyer");
}

TwoSidedAction flag_action(const AlgebraSpec::Ptr& spec) {
  Subspace t = default_cartan(spec);
  std::vector<GeneratorPair> pairs;
  for (int i = 0; i < t.dimension(); ++i)
    pairs.push_back({spec->zero(), t.basis_element(i)});
  return TwoSidedAction(spec, std::move(pairs), "flag(" + spec->name() + ")");
}

std::vector<ScenarioInfo> builtin_scenarios() {
  return {
      {"eschenburg", "eschenburg(k, l, p, q)",
       "T^1 in T^2 x T^2 acting on SU(3) by i*diag(k,l,-k-l) / i*diag(p,q,-p-q)"},
      {"gromoll_meyer", "gromoll_meyer()",
       "Sp(1) pairs (diag(x,x), diag(x,0)) in Sp(2) x Sp(2); quotient is the exotic 7-sphere"},
      {"flag", "flag(family, n)",
       "U = {e} x T; quotient is the flag manifold G/T"},
  };
}

}  // namespace geoflow
