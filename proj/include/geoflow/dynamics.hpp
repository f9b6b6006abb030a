#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "geoflow/metrics.hpp"

namespace geoflow {

/// Phase point on left-trivialized T*G: group element plus body momentum.
class CotangentState {
 public:
  CotangentState(GroupElement g, AlgebraElement m) : g_(std::move(g)), m_(std::move(m)) {
    if (g_.spec() != m_.spec())
      throw SpecMismatch("group element and momentum have different specs");
  }

  const GroupElement& g() const { return g_; }
  const AlgebraElement& m() const { return m_; }
  /// Spatial momentum n = Ad_g m.
  AlgebraElement spatial() const { return Ad(g_, m_); }

 private:
  GroupElement g_;
  AlgebraElement m_;
};

/// Scalar function of the phase point, watched for drift along trajectories.
struct Observable {
  std::string name;
  std::function<double(const CotangentState&)> eval;
};

struct IntegratorConfig {
  double h = 1e-3;
  double horizon = 1.0;
  enum class Method {
    Rk4,     ///< classical RK4 on (g, m) with polar reprojection; order 4
             ///< against the closed-form bi-invariant geodesic
    LieRk4,  ///< RK4 stages with exponential group updates; reproduces
             ///< bi-invariant geodesics to roundoff
  };
  Method method = Method::Rk4;
  bool reproject = true;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<CotangentState> states;
  /// Per-observable values at each saved time, and max |f(t) - f(0)| drift.
  std::vector<std::string> watch_names;
  std::vector<std::vector<double>> watch_values;  // [observable][time index]
  std::map<std::string, double> drift;            // absolute
  std::map<std::string, double> relative_drift;   // / max(1, |f(0)|)
};

/// (Omega, mdot): Omega = velocity(spec, x); mdot = [m, phi_left m] when a
/// left factor is present (zero otherwise). The group evolves by gdot = g Omega.
std::pair<AlgebraElement, AlgebraElement> vector_field(const MetricSpec& spec,
                                                       const CotangentState& x);

/// One integrator step of size h.
CotangentState step(const MetricSpec& spec, const CotangentState& x, double h,
                    IntegratorConfig::Method method = IntegratorConfig::Method::Rk4,
                    bool reproject = true);

/// Integrates from x0 over cfg.horizon, recording every step and the drift
/// of the watched observables. The observable named "reconstruction" is
/// handled internally: it reports ||Ad_g m - n|| where n is co-evolved by
/// its own equation ndot = [phi_right n, n].
Trajectory integrate(const MetricSpec& spec, const CotangentState& x0,
                     const IntegratorConfig& cfg,
                     const std::vector<Observable>& watch = {},
                     bool watch_reconstruction = false);

/// g0 * exp(t m): geodesic of the bi-invariant metric, used as oracle.
GroupElement exact_biinvariant_geodesic(const GroupElement& g0, const AlgebraElement& m,
                                        double t);

/// Closest group matrix by polar decomposition (det-corrected for SU/SO).
GroupElement polar_reproject(const AlgebraSpec::Ptr& spec, const Eigen::MatrixXcd& g);

/// Writes the trajectory as CSV: time, coords of m, coords of n, watched
/// quantities, all doubles with 17 significant digits.
std::string trajectory_csv(const Trajectory& tr);

}  // namespace geoflow
