#pragma once

#include <stdexcept>
#include <string>

namespace geoflow {

/// Two values built over different algebra specs were combined.
struct SpecMismatch : std::invalid_argument {
  explicit SpecMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// An eigensolver / decomposition did not converge or produced garbage.
struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Sampled minimum centralizer dimension disagrees with the closed-form rank.
struct RankMismatch : std::runtime_error {
  explicit RankMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// The element handed to a sectional-operator constructor is not regular.
struct NotRegular : std::invalid_argument {
  explicit NotRegular(const std::string& what) : std::invalid_argument(what) {}
};

/// The subspace handed to a sectional-operator constructor is not commutative.
struct NotCartan : std::invalid_argument {
  explicit NotCartan(const std::string& what) : std::invalid_argument(what) {}
};

struct InvalidParameters : std::invalid_argument {
  explicit InvalidParameters(const std::string& what) : std::invalid_argument(what) {}
};

/// No sampled horizontal vector was regular; a torus-dimension value would be
/// unsupported by the theorem hypothesis.
struct HypothesisFailed : std::runtime_error {
  explicit HypothesisFailed(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidConfig : std::invalid_argument {
  explicit InvalidConfig(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace geoflow
