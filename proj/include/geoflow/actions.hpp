#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geoflow/dynamics.hpp"

namespace geoflow {

/// Generator pair (a1, a2) in g + g of the two-sided action
/// (g1, g2) . g = g1 g g2^{-1}.
struct GeneratorPair {
  AlgebraElement a1;
  AlgebraElement a2;
};

/// Basis of pairs spanning the Lie algebra u of U inside G x G.
class TwoSidedAction {
 public:
  /// Validates that the pairs are linearly independent in g + g and that
  /// their span is closed under the componentwise bracket.
  TwoSidedAction(AlgebraSpec::Ptr spec, std::vector<GeneratorPair> pairs,
                 std::string name);

  const AlgebraSpec::Ptr& spec() const { return spec_; }
  const std::vector<GeneratorPair>& pairs() const { return pairs_; }
  const std::string& name() const { return name_; }
  /// True when all componentwise brackets of pair generators vanish.
  bool abelian() const { return abelian_; }
  double closure_residual() const { return closure_residual_; }

 private:
  AlgebraSpec::Ptr spec_;
  std::vector<GeneratorPair> pairs_;
  std::string name_;
  bool abelian_ = true;
  double closure_residual_ = 0.0;
};

/// Vertical space at the neutral element (span of a1 - a2) and its
/// orthocomplement. `degenerate` reports a span collapse below the number of
/// pairs (e.g. diagonal subgroups); not fatal.
struct VerticalData {
  Subspace vertical;
  Subspace horizontal;
  bool degenerate = false;
};

/// Left-trivialized infinitesimal generators Ad_{g^-1} a1 - a2, one per pair.
std::vector<AlgebraElement> generators_at(const TwoSidedAction& action,
                                          const GroupElement& g);

/// Moment-map components <m, generator_i(g)> = <n, a1> - <m, a2>.
Eigen::VectorXd moment(const TwoSidedAction& action, const CotangentState& x);

VerticalData vertical_horizontal(const TwoSidedAction& action);

/// Unit-normalized Gaussian samples in the horizontal subspace.
std::vector<AlgebraElement> sample_horizontal(const TwoSidedAction& action,
                                              std::uint64_t seed, int count);

/// dim { eta in vertical : [eta, xi] = 0 }.
int u_xi_dim(const TwoSidedAction& action, const AlgebraElement& xi,
             double tol_rank = tol::rank_rel);

/// Min over sampled g of the smallest singular value of the generator map
/// u -> g. A value <= the rank threshold flags a locally non-free point.
double infinitesimal_freeness(const TwoSidedAction& action, std::uint64_t seed,
                              int samples);

/// Hamiltonian flow of the moment component of `pair` for time t:
/// (g, m) -> (exp(t a1) g exp(-t a2), Ad_{exp(t a2)} m). Test oracle for the
/// bracket identity and Noether checks.
CotangentState action_flow(const GeneratorPair& pair, double t, const CotangentState& x);

/// Catalog constructors. All entries pass the TwoSidedAction invariants.
TwoSidedAction eschenburg_action(int k, int l, int p, int q);
TwoSidedAction gromoll_meyer_action();
TwoSidedAction flag_action(const AlgebraSpec::Ptr& spec);

struct ScenarioInfo {
  std::string name;
  std::string signature;
  std::string description;
};
std::vector<ScenarioInfo> builtin_scenarios();

}  // namespace geoflow
