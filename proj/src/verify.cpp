#include "geoflow/verify.hpp"

#include <algorithm>
#include <cmath>

#include "geoflow/parallel.hpp"
#include "geoflow/rng.hpp"

namespace geoflow {

namespace {

AlgebraElement ad_inv(const CotangentState& x, const AlgebraElement& a) {
  return Ad(x.g().inverse(), a);
}

int svd_rank(const Eigen::MatrixXd& M, double tol_rank, bool* ambiguous = nullptr) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  double thresh = tol::rank_threshold(sv[0], tol_rank);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv[i] > thresh) ++r;
    if (ambiguous && sv[i] > 0.1 * thresh && sv[i] < 10.0 * thresh) *ambiguous = true;
  }
  return r;
}

}  // namespace

PhaseFunction left_poly(const AlgebraSpec::Ptr& spec, int degree) {
  return {"p" + std::to_string(degree) + "(m)", "left-poly",
          [degree](const CotangentState& x) { return invariant_poly(degree, x.m()); },
          [degree](const CotangentState& x) { return grad_invariant_poly(degree, x.m()); },
          [spec](const CotangentState&) { return spec->zero(); }};
}

PhaseFunction left_coordinate(const AlgebraSpec::Ptr& spec, int i) {
  return {"m" + std::to_string(i), "left-coord",
          [i](const CotangentState& x) { return x.m().coords()[i]; },
          [spec, i](const CotangentState&) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(spec->dim());
            e[i] = 1.0;
            return spec->element(std::move(e));
          },
          [spec](const CotangentState&) { return spec->zero(); }};
}

PhaseFunction right_coordinate(const AlgebraSpec::Ptr& spec, int i) {
  auto ei = [spec, i]() {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(spec->dim());
    e[i] = 1.0;
    return spec->element(std::move(e));
  };
  return {"n" + std::to_string(i), "right-coord",
          [i](const CotangentState& x) { return x.spatial().coords()[i]; },
          [ei](const CotangentState& x) { return ad_inv(x, ei()); },
          [ei](const CotangentState& x) { return bracket(x.m(), ad_inv(x, ei())); }};
}

PhaseFunction moment_component(const TwoSidedAction& action, int pair_index) {
  GeneratorPair p = action.pairs().at(pair_index);
  return {"phi[" + std::to_string(pair_index) + "]", "moment",
          [p](const CotangentState& x) {
            return inner(x.spatial(), p.a1) - inner(x.m(), p.a2);
          },
          [p](const CotangentState& x) { return ad_inv(x, p.a1) - p.a2; },
          [p](const CotangentState& x) { return bracket(x.m(), ad_inv(x, p.a1)); }};
}

PhaseFunction shift_poly(const AlgebraSpec::Ptr& spec, int degree,
                         const AlgebraElement& a, double lambda) {
  AlgebraElement shift = a * lambda;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "p%d(m+%.3ga)", degree, lambda);
  return {buf, "shift",
          [degree, shift](const CotangentState& x) {
            return invariant_poly(degree, x.m() + shift);
          },
          [degree, shift](const CotangentState& x) {
            return grad_invariant_poly(degree, x.m() + shift);
          },
          [spec](const CotangentState&) { return spec->zero(); }};
}

PhaseFunction hamiltonian_function(const MetricSpec& metric) {
  return {"H", "hamiltonian",
          [metric](const CotangentState& x) { return hamiltonian(metric, x); },
          [metric](const CotangentState& x) { return velocity(metric, x); },
          [metric](const CotangentState& x) {
            if (!metric.has_right()) return x.m().spec()->zero();
            AlgebraElement omega_r = ad_inv(x, metric.apply_right(x.spatial()));
            return bracket(x.m(), omega_r);
          }};
}

IntegralFamily biinvariant_coordinate_family(const AlgebraSpec::Ptr& spec) {
  IntegralFamily fam{spec, {}};
  for (int i = 0; i < spec->dim(); ++i) fam.functions.push_back(left_coordinate(spec, i));
  for (int i = 0; i < spec->dim(); ++i) fam.functions.push_back(right_coordinate(spec, i));
  return fam;
}

double gradient_check(const PhaseFunction& F, const CotangentState& x, double h) {
  const auto& spec = x.m().spec();
  AlgebraElement gm = F.grad_m(x);
  AlgebraElement gg = F.grad_g(x);
  double worst = 0.0;
  for (int i = 0; i < spec->dim(); ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(spec->dim());
    e[i] = 1.0;
    AlgebraElement dir = spec->element(e);

    CotangentState xp(x.g(), x.m() + dir * h);
    CotangentState xm(x.g(), x.m() - dir * h);
    double fd = (F.value(xp) - F.value(xm)) / (2 * h);
    worst = std::max(worst, std::abs(fd - gm.coords()[i]) / std::max(1.0, std::abs(fd)));

    GroupElement gp = x.g() * exp_to_group(dir, h);
    GroupElement gn = x.g() * exp_to_group(dir, -h);
    double fdg = (F.value(CotangentState(gp, x.m())) -
                  F.value(CotangentState(gn, x.m()))) / (2 * h);
    worst = std::max(worst, std::abs(fdg - gg.coords()[i]) / std::max(1.0, std::abs(fdg)));
  }
  return worst;
}

double poisson_bracket(const PhaseFunction& F, const PhaseFunction& K,
                       const CotangentState& x) {
  AlgebraElement dF = F.grad_m(x);
  AlgebraElement dK = K.grad_m(x);
  return inner(F.grad_g(x), dK) - inner(K.grad_g(x), dF) -
         inner(x.m(), bracket(dF, dK));
}

DdimDind ddim_dind(const IntegralFamily& family, const CotangentState& x,
                   double tol_rank) {
  const auto& spec = family.spec;
  const int d = spec->dim();
  const int nf = static_cast<int>(family.functions.size());
  DdimDind out;
  if (nf == 0) return out;

  Eigen::MatrixXd J(2 * d, nf);  // columns = differentials (g-part, m-part)
  for (int j = 0; j < nf; ++j) {
    J.col(j).head(d) = family.functions[j].grad_g(x).coords();
    J.col(j).tail(d) = family.functions[j].grad_m(x).coords();
  }

  bool ambiguous = false;
  out.ddim = svd_rank(J, tol_rank, &ambiguous);

  // Maximal independent subset via column-pivoted QR.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(J);
  std::vector<int> chosen;
  for (int i = 0; i < out.ddim; ++i)
    chosen.push_back(qr.colsPermutation().indices()[i]);
  std::sort(chosen.begin(), chosen.end());

  Eigen::MatrixXd B(out.ddim, out.ddim);
  for (int i = 0; i < out.ddim; ++i)
    for (int j = 0; j < out.ddim; ++j)
      B(i, j) = (i == j) ? 0.0
                         : poisson_bracket(family.functions[chosen[i]],
                                           family.functions[chosen[j]], x);
  B = 0.5 * (B - B.transpose().eval());

  int rank_b = svd_rank(B, tol_rank, &ambiguous);
  out.odd_bracket_rank = (rank_b % 2) != 0;
  out.dind = out.ddim - rank_b;
  out.tolerance_ambiguous = ambiguous;
  return out;
}

CompletenessReport completeness_check(const IntegralFamily& family, int samples,
                                      std::uint64_t seed, double tol_rank) {
  const auto& spec = family.spec;
  CompletenessReport rep;
  rep.samples = samples;
  rep.phase_dim = 2 * spec->dim();
  rep.per_sample.resize(samples);

  parallel_for(samples, [&](int i) {
    Rng rng = Rng::stream(seed, i);
    GroupElement g = exp_to_group(spec->element(rng.gaussian_vector(spec->dim())));
    AlgebraElement m = spec->element(rng.gaussian_vector(spec->dim()));
    rep.per_sample[i] = ddim_dind(family, CotangentState(std::move(g), std::move(m)),
                                  tol_rank);
  });

  std::map<std::pair<int, int>, int> counts;
  for (const auto& s : rep.per_sample) {
    if (s.tolerance_ambiguous || s.odd_bracket_rank) {
      ++rep.ambiguous;
      continue;
    }
    ++counts[{s.ddim, s.dind}];
  }
  if (!counts.empty()) {
    auto best = std::max_element(counts.begin(), counts.end(),
                                 [](const auto& a, const auto& b) {
                                   return a.second < b.second;
                                 });
    rep.modal_ddim = best->first.first;
    rep.modal_dind = best->first.second;
    rep.pass = (rep.modal_ddim + rep.modal_dind == rep.phase_dim) && rep.modal_ddim > 0;
  }
  return rep;
}

RegularityReport horizontal_regularity(const TwoSidedAction& action, int samples,
                                       std::uint64_t seed, double tol_rank) {
  const auto& spec = action.spec();
  auto xis = sample_horizontal(action, seed, samples);
  const auto& degrees = spec->default_poly_degrees();

  RegularityReport rep;
  rep.samples = samples;
  std::vector<int> reg(samples, 0), full(samples, 0);
  parallel_for(samples, [&](int i) {
    const AlgebraElement& xi = xis[i];
    bool r = is_regular(xi, tol_rank);
    reg[i] = r ? 1 : 0;
    if (r) {
      Eigen::MatrixXd G(spec->dim(), static_cast<int>(degrees.size()));
      for (std::size_t k = 0; k < degrees.size(); ++k)
        G.col(static_cast<int>(k)) = grad_invariant_poly(degrees[k], xi).coords();
      full[i] = (svd_rank(G, tol_rank) == spec->rank()) ? 1 : 0;
    }
  });
  for (int i = 0; i < samples; ++i) {
    rep.regular += reg[i];
    rep.full_gradient_rank += full[i];
  }
  rep.regular_fraction = samples > 0 ? static_cast<double>(rep.regular) / samples : 0.0;
  rep.pass = rep.regular_fraction > 0.5;
  return rep;
}

TorusDimensionReport torus_dimension(const TwoSidedAction& action, int samples,
                                     std::uint64_t seed, double tol_rank) {
  RegularityReport reg = horizontal_regularity(action, samples, seed, tol_rank);
  if (reg.regular == 0)
    throw HypothesisFailed(action.name() + ": no sampled horizontal vector is regular");

  auto xis = sample_horizontal(action, seed, samples);
  std::vector<int> dims(samples, 0);
  parallel_for(samples, [&](int i) { dims[i] = u_xi_dim(action, xis[i], tol_rank); });

  TorusDimensionReport rep;
  rep.regularity_pass = reg.pass;
  rep.supported = reg.pass;
  int min_dim = action.spec()->dim();
  for (int d : dims) {
    ++rep.histogram[d];
    min_dim = std::min(min_dim, d);
  }
  rep.min_u_xi_dim = min_dim;
  auto best = std::max_element(rep.histogram.begin(), rep.histogram.end(),
                               [](const auto& a, const auto& b) {
                                 return a.second < b.second;
                               });
  rep.modal_u_xi_dim = best->first;
  rep.torus_dim = action.spec()->rank() - min_dim;
  return rep;
}

ConservationReport conservation_certificate(const MetricSpec& metric,
                                            const TwoSidedAction& action,
                                            const IntegralFamily& family,
                                            const IntegratorConfig& cfg,
                                            std::uint64_t seed, int state_count,
                                            double drift_tolerance) {
  const auto& spec = action.spec();
  auto xis = sample_horizontal(action, seed, state_count);

  ConservationReport rep;
  rep.drift_tolerance = drift_tolerance;
  for (int s = 0; s < state_count; ++s) {
    CotangentState x0(GroupElement::identity(spec), xis[s]);

    std::vector<Observable> watch;
    for (const auto& f : family.functions)
      watch.push_back({f.name, f.value});
    const int npairs = static_cast<int>(action.pairs().size());
    for (int i = 0; i < npairs; ++i) {
      PhaseFunction phi = moment_component(action, i);
      watch.push_back({phi.name, phi.value});
    }

    Trajectory tr = integrate(metric, x0, cfg, watch);

    ConservationReport::State st;
    st.initial_moment_norm = moment(action, x0).norm();
    st.horizontal_start = st.initial_moment_norm <= 1e-9;
    for (std::size_t c = 0; c < tr.watch_names.size(); ++c) {
      const std::string& name = tr.watch_names[c];
      if (name.rfind("phi[", 0) == 0) {
        st.max_moment_drift = std::max(st.max_moment_drift, tr.drift[name]);
        for (double v : tr.watch_values[c])
          st.max_moment_norm = std::max(st.max_moment_norm, std::abs(v));
      } else {
        st.family_drift[name] = tr.relative_drift[name];
      }
    }
    st.pass = st.max_moment_drift <= drift_tolerance;
    if (st.horizontal_start)
      st.pass = st.pass && st.max_moment_norm <= drift_tolerance;
    for (const auto& [name, d] : st.family_drift)
      st.pass = st.pass && d <= drift_tolerance;
    rep.pass = rep.pass && st.pass;
    rep.states.push_back(std::move(st));
  }
  return rep;
}

}  // namespace geoflow
