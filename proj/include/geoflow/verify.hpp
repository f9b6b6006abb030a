#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geoflow/actions.hpp"

namespace geoflow {

/// Scalar function on CotangentState with analytic gradients: grad_m is the
/// momentum-direction gradient, grad_g the left-trivialized group-direction
/// gradient (d/dt F(g exp(t eta), m) = <grad_g, eta>).
struct PhaseFunction {
  std::string name;
  std::string provenance;  // left-poly | right-coord | left-coord | moment | shift | hamiltonian
  std::function<double(const CotangentState&)> value;
  std::function<AlgebraElement(const CotangentState&)> grad_m;
  std::function<AlgebraElement(const CotangentState&)> grad_g;
};

/// Named list of phase functions forming a (candidate) integral family.
struct IntegralFamily {
  AlgebraSpec::Ptr spec;
  std::vector<PhaseFunction> functions;
};

/// Builders.
PhaseFunction left_poly(const AlgebraSpec::Ptr& spec, int degree);
PhaseFunction left_coordinate(const AlgebraSpec::Ptr& spec, int i);
PhaseFunction right_coordinate(const AlgebraSpec::Ptr& spec, int i);
PhaseFunction moment_component(const TwoSidedAction& action, int pair_index);
PhaseFunction shift_poly(const AlgebraSpec::Ptr& spec, int degree,
                         const AlgebraElement& a, double lambda);
PhaseFunction hamiltonian_function(const MetricSpec& metric);

/// {m_i} and {n_i} coordinate momenta for the bi-invariant family F1 + F2.
IntegralFamily biinvariant_coordinate_family(const AlgebraSpec::Ptr& spec);

/// Largest central-difference defect of the analytic gradients of F at x.
double gradient_check(const PhaseFunction& F, const CotangentState& x, double h = 1e-5);

/// Canonical Poisson bracket in left trivialization:
/// {F,K}(x) = <DgF, dK> - <DgK, dF> - <m, [dF, dK]>.
double poisson_bracket(const PhaseFunction& F, const PhaseFunction& K,
                       const CotangentState& x);

struct DdimDind {
  int ddim = 0;
  int dind = 0;
  bool tolerance_ambiguous = false;  // singular values cluster near the threshold
  bool odd_bracket_rank = false;     // rank(B) came out odd; tolerance trouble
};

/// l = numerical rank of the stacked differentials; r = l - rank(B) for the
/// bracket matrix B of a maximal independent subset.
DdimDind ddim_dind(const IntegralFamily& family, const CotangentState& x,
                   double tol_rank = tol::rank_rel);

struct CompletenessReport {
  int samples = 0;
  int ambiguous = 0;
  std::vector<DdimDind> per_sample;
  int modal_ddim = 0;
  int modal_dind = 0;
  int phase_dim = 0;  // 2 dim g
  bool pass = false;
};

CompletenessReport completeness_check(const IntegralFamily& family, int samples,
                                      std::uint64_t seed,
                                      double tol_rank = tol::rank_rel);

struct RegularityReport {
  int samples = 0;
  int regular = 0;
  /// Samples where the invariant-poly gradients span the full rank.
  int full_gradient_rank = 0;
  double regular_fraction = 0.0;
  bool pass = false;  // generic (majority) sample is regular
};

/// Samples horizontal covectors at the identity and probes regularity plus
/// the rank of the invariant-polynomial gradients.
RegularityReport horizontal_regularity(const TwoSidedAction& action, int samples,
                                       std::uint64_t seed,
                                       double tol_rank = tol::rank_rel);

struct TorusDimensionReport {
  int torus_dim = 0;
  int min_u_xi_dim = 0;
  int modal_u_xi_dim = 0;
  std::map<int, int> histogram;  // u_xi_dim value -> count
  bool regularity_pass = false;
  bool supported = false;  // false: regularity hypothesis failed, value unsupported
};

/// rank G - min over sampled horizontal xi of dim u_xi. Throws
/// HypothesisFailed when no sampled horizontal vector is regular.
TorusDimensionReport torus_dimension(const TwoSidedAction& action, int samples,
                                     std::uint64_t seed,
                                     double tol_rank = tol::rank_rel);

struct ConservationReport {
  struct State {
    bool horizontal_start = true;  // initial moment ~ 0
    double initial_moment_norm = 0.0;
    double max_moment_drift = 0.0;
    double max_moment_norm = 0.0;
    std::map<std::string, double> family_drift;  // relative
    bool pass = true;
  };
  std::vector<State> states;
  double drift_tolerance = 1e-7;
  bool pass = true;
};

/// Integrates from sampled horizontal initial states and certifies that the
/// moment components and every family member stay within drift_tolerance.
ConservationReport conservation_certificate(const MetricSpec& metric,
                                            const TwoSidedAction& action,
                                            const IntegralFamily& family,
                                            const IntegratorConfig& cfg,
                                            std::uint64_t seed, int state_count = 3,
                                            double drift_tolerance = 1e-7);

}  // namespace geoflow
