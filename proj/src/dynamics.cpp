#include "geoflow/dynamics.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

#include <Eigen/Eigenvalues>

namespace geoflow {

namespace {

using Cplx = std::complex<double>;

Eigen::MatrixXcd exp_matrix(const AlgebraSpec::Ptr& spec, const Eigen::VectorXd& coords,
                            double t) {
  Eigen::MatrixXcd X = spec->element(coords).matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Cplx(0.0, -1.0) * X);
  if (es.info() != Eigen::Success) throw NumericalFailure("stage exponential failed");
  Eigen::VectorXcd ph(es.eigenvalues().size());
  for (int i = 0; i < ph.size(); ++i)
    ph[i] = std::exp(Cplx(0.0, t * es.eigenvalues()[i]));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

struct RawField {
  const MetricSpec& metric;
  const AlgebraSpec::Ptr& spec;

  // Velocity at a raw (possibly off-group) stage matrix.
  Eigen::VectorXd omega(const Eigen::MatrixXcd& g, const Eigen::VectorXd& m) const {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(spec->dim());
    if (metric.has_left())
      w += metric.apply_left(spec->element(m)).coords();
    if (metric.has_right()) {
      Eigen::MatrixXcd ginv = g.inverse();
      Eigen::VectorXd n = spec->project(g * spec->element(m).matrix() * ginv);
      Eigen::MatrixXcd phin = metric.apply_right(spec->element(n)).matrix();
      w += spec->project(ginv * phin * g);
    }
    return w;
  }

  Eigen::VectorXd mdot(const Eigen::VectorXd& m) const {
    // [m, phi_L m] vanishes identically unless phi_L genuinely reshapes m.
    if (metric.left != MetricSpec::Side::Sectional)
      return Eigen::VectorXd::Zero(spec->dim());
    AlgebraElement me = spec->element(m);
    return bracket(me, metric.apply_left(me)).coords();
  }

  Eigen::VectorXd ndot(const Eigen::VectorXd& n) const {
    if (!metric.has_right()) return Eigen::VectorXd::Zero(spec->dim());
    AlgebraElement ne = spec->element(n);
    return bracket(metric.apply_right(ne), ne).coords();
  }
};

struct RawState {
  Eigen::MatrixXcd g;
  Eigen::VectorXd m;
  Eigen::VectorXd n;  // co-evolved spatial momentum
};

RawState rk4_step(const RawField& f, const RawState& y, double h) {
  auto deriv = [&](const RawState& s) {
    RawState d;
    Eigen::VectorXd w = f.omega(s.g, s.m);
    d.g = s.g * f.spec->element(w).matrix();
    d.m = f.mdot(s.m);
    d.n = f.ndot(s.n);
    return d;
  };
  RawState k1 = deriv(y);
  RawState s2{y.g + (h / 2) * k1.g, y.m + (h / 2) * k1.m, y.n + (h / 2) * k1.n};
  RawState k2 = deriv(s2);
  RawState s3{y.g + (h / 2) * k2.g, y.m + (h / 2) * k2.m, y.n + (h / 2) * k2.n};
  RawState k3 = deriv(s3);
  RawState s4{y.g + h * k3.g, y.m + h * k3.m, y.n + h * k3.n};
  RawState k4 = deriv(s4);
  return {y.g + (h / 6) * (k1.g + 2 * k2.g + 2 * k3.g + k4.g),
          y.m + (h / 6) * (k1.m + 2 * k2.m + 2 * k3.m + k4.m),
          y.n + (h / 6) * (k1.n + 2 * k2.n + 2 * k3.n + k4.n)};
}

RawState lie_rk4_step(const RawField& f, const RawState& y, double h) {
  Eigen::VectorXd w1 = f.omega(y.g, y.m);
  Eigen::VectorXd km1 = f.mdot(y.m);
  Eigen::VectorXd kn1 = f.ndot(y.n);

  Eigen::MatrixXcd g2 = y.g * exp_matrix(f.spec, w1, h / 2);
  Eigen::VectorXd m2 = y.m + (h / 2) * km1;
  Eigen::VectorXd w2 = f.omega(g2, m2);
  Eigen::VectorXd km2 = f.mdot(m2);
  Eigen::VectorXd kn2 = f.ndot(y.n + (h / 2) * kn1);

  Eigen::MatrixXcd g3 = y.g * exp_matrix(f.spec, w2, h / 2);
  Eigen::VectorXd m3 = y.m + (h / 2) * km2;
  Eigen::VectorXd w3 = f.omega(g3, m3);
  Eigen::VectorXd km3 = f.mdot(m3);
  Eigen::VectorXd kn3 = f.ndot(y.n + (h / 2) * kn2);

  Eigen::MatrixXcd g4 = y.g * exp_matrix(f.spec, w3, h);
  Eigen::VectorXd m4 = y.m + h * km3;
  Eigen::VectorXd w4 = f.omega(g4, m4);
  Eigen::VectorXd km4 = f.mdot(m4);
  Eigen::VectorXd kn4 = f.ndot(y.n + h * kn3);

  Eigen::VectorXd w_avg = (w1 + 2 * w2 + 2 * w3 + w4) / 6;
  return {y.g * exp_matrix(f.spec, w_avg, h),
          y.m + (h / 6) * (km1 + 2 * km2 + 2 * km3 + km4),
          y.n + (h / 6) * (kn1 + 2 * kn2 + 2 * kn3 + kn4)};
}

}  // namespace

GroupElement polar_reproject(const AlgebraSpec::Ptr& spec, const Eigen::MatrixXcd& g) {
  if (spec->family() == Family::SO) {
    Eigen::MatrixXd gr = g.real();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(gr, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXd W = svd.matrixU() * svd.matrixV().transpose();
    return GroupElement::unchecked(spec, W.cast<Cplx>());
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXcd W = svd.matrixU() * svd.matrixV().adjoint();
  if (spec->family() == Family::SU) {
    double theta = std::arg(W.determinant());
    W *= std::exp(Cplx(0.0, -theta / spec->matrix_size()));
  }
  return GroupElement::unchecked(spec, std::move(W));
}

std::pair<AlgebraElement, AlgebraElement> vector_field(const MetricSpec& spec,
                                                       const CotangentState& x) {
  AlgebraElement omega = velocity(spec, x);
  AlgebraElement mdot = spec.left == MetricSpec::Side::Sectional
                            ? bracket(x.m(), spec.apply_left(x.m()))
                            : x.m().spec()->zero();
  return {std::move(omega), std::move(mdot)};
}

CotangentState step(const MetricSpec& spec, const CotangentState& x, double h,
                    IntegratorConfig::Method method, bool reproject) {
  if (h == 0.0) return x;
  const auto& aspec = x.m().spec();
  RawField f{spec, aspec};
  RawState y{x.g().matrix(), x.m().coords(), x.spatial().coords()};
  RawState z = (method == IntegratorConfig::Method::Rk4) ? rk4_step(f, y, h)
                                                         : lie_rk4_step(f, y, h);
  GroupElement g = reproject ? polar_reproject(aspec, z.g)
                             : GroupElement::unchecked(aspec, z.g);
  return CotangentState(std::move(g), aspec->element(z.m));
}

Trajectory integrate(const MetricSpec& spec, const CotangentState& x0,
                     const IntegratorConfig& cfg, const std::vector<Observable>& watch,
                     bool watch_reconstruction) {
  if (cfg.h <= 0.0 || cfg.horizon <= 0.0)
    throw InvalidParameters("integrator requires h > 0 and horizon > 0");
  const auto& aspec = x0.m().spec();
  const long nsteps = std::lround(cfg.horizon / cfg.h);

  Trajectory tr;
  tr.times.reserve(nsteps + 1);
  tr.states.reserve(nsteps + 1);
  for (const auto& w : watch) tr.watch_names.push_back(w.name);
  if (watch_reconstruction) tr.watch_names.push_back("reconstruction");
  tr.watch_values.assign(tr.watch_names.size(), {});

  RawField f{spec, aspec};
  RawState y{x0.g().matrix(), x0.m().coords(), x0.spatial().coords()};

  auto record = [&](double t, const RawState& s) {
    CotangentState x(GroupElement::unchecked(aspec, s.g), aspec->element(s.m));
    std::size_t col = 0;
    for (const auto& w : watch) tr.watch_values[col++].push_back(w.eval(x));
    if (watch_reconstruction) {
      double rec = (x.spatial().coords() - s.n).norm();
      tr.watch_values[col].push_back(rec);
    }
    tr.times.push_back(t);
    tr.states.push_back(std::move(x));
  };

  record(0.0, y);
  for (long i = 1; i <= nsteps; ++i) {
    y = (cfg.method == IntegratorConfig::Method::Rk4) ? rk4_step(f, y, cfg.h)
                                                      : lie_rk4_step(f, y, cfg.h);
    if (cfg.reproject) y.g = polar_reproject(aspec, y.g).matrix();
    record(i * cfg.h, y);
  }

  for (std::size_t c = 0; c < tr.watch_names.size(); ++c) {
    const auto& vals = tr.watch_values[c];
    double f0 = vals.front();
    double d = 0.0;
    for (double v : vals) d = std::max(d, std::abs(v - f0));
    tr.drift[tr.watch_names[c]] = d;
    tr.relative_drift[tr.watch_names[c]] = d / std::max(1.0, std::abs(f0));
  }
  return tr;
}

GroupElement exact_biinvariant_geodesic(const GroupElement& g0, const AlgebraElement& m,
                                        double t) {
  if (g0.spec() != m.spec()) throw SpecMismatch("geodesic data specs differ");
  return GroupElement::unchecked(g0.spec(),
                                 g0.matrix() * exp_matrix(m.spec(), m.coords(), t));
}

std::string trajectory_csv(const Trajectory& tr) {
  std::string out;
  char buf[32];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof(buf), "%.17g%c", v, sep);
    out += buf;
  };
  const int dim = tr.states.empty() ? 0 : tr.states.front().m().spec()->dim();
  out += "time";
  for (int i = 0; i < dim; ++i) out += ",m" + std::to_string(i);
  for (int i = 0; i < dim; ++i) out += ",n" + std::to_string(i);
  for (const auto& n : tr.watch_names) out += "," + n;
  out += "\n";
  for (std::size_t r = 0; r < tr.times.size(); ++r) {
    put(tr.times[r], ',');
    const Eigen::VectorXd& m = tr.states[r].m().coords();
    Eigen::VectorXd n = tr.states[r].spatial().coords();
    for (int i = 0; i < dim; ++i) put(m[i], ',');
    for (int i = 0; i < dim; ++i)
      put(n[i], (i + 1 == dim && tr.watch_names.empty()) ? '\n' : ',');
    for (std::size_t c = 0; c < tr.watch_names.size(); ++c)
      put(tr.watch_values[c][r], c + 1 == tr.watch_names.size() ? '\n' : ',');
  }
  return out;
}

}  // namespace geoflow
