#include <complex>

#include "doctest.h"
#include "geoflow/rng.hpp"
#include "geoflow/verify.hpp"

using namespace geoflow;
using Cplx = std::complex<double>;

namespace {

const Cplx I{0.0, 1.0};

CotangentState random_state(const AlgebraSpec::Ptr& spec, Rng& rng) {
  auto g = exp_to_group(spec->element(rng.gaussian_vector(spec->dim())));
  auto m = spec->element(rng.gaussian_vector(spec->dim()));
  return {std::move(g), std::move(m)};
}

MetricSpec su3_sum_metric(const AlgebraSpec::Ptr& su3) {
  Subspace t = default_cartan(su3);
  Eigen::MatrixXcd Ma = Eigen::MatrixXcd::Zero(3, 3);
  Ma.diagonal() << I * 1.0, I * 2.0, I * -3.0;
  Eigen::MatrixXcd Mb = Eigen::MatrixXcd::Zero(3, 3);
  Mb.diagonal() << I * 0.9, I * 0.3, I * -1.2;
  auto a = su3->element_from_matrix(Ma);
  auto b = su3->element_from_matrix(Mb);
  auto phi1 = build_sectional(t, a, b, 2.0 * Eigen::MatrixXd::Identity(2, 2));
  auto phi2 = build_sectional(t, a, b * 0.4, 1.3 * Eigen::MatrixXd::Identity(2, 2));
  return MetricSpec::sum(phi1, phi2);
}

// Central-difference bracket oracle: flow K's Hamiltonian vector field
// through action_flow when K is a moment component, and compare dF/dt.
double flow_bracket_oracle(const PhaseFunction& F, const GeneratorPair& pair,
                           const CotangentState& x, double h = 1e-6) {
  double fp = F.value(action_flow(pair, h, x));
  double fm = F.value(action_flow(pair, -h, x));
  return (fp - fm) / (2 * h);
}

}  // namespace

TEST_CASE("gradient_check on every builder") {
  auto act = eschenburg_action(1, -1, 2, 2);
  auto su3 = act.spec();
  Rng rng(3);
  auto x = random_state(su3, rng);
  Eigen::MatrixXcd Ma = Eigen::MatrixXcd::Zero(3, 3);
  Ma.diagonal() << I * 1.0, I * 2.0, I * -3.0;
  auto a = su3->element_from_matrix(Ma);

  std::vector<PhaseFunction> fns = {
      left_poly(su3, 2),
      left_poly(su3, 3),
      left_coordinate(su3, 4),
      right_coordinate(su3, 2),
      moment_component(act, 0),
      shift_poly(su3, 3, a, 0.5),
      hamiltonian_function(su3_sum_metric(su3)),
      hamiltonian_function(MetricSpec::biinvariant()),
  };
  for (const auto& F : fns) {
    CAPTURE(F.name);
    CHECK(gradient_check(F, x) <= 1e-6);
  }
}

TEST_CASE("poisson_bracket values") {
  auto su2 = AlgebraSpec::create(Family::SU, 2);
  auto su3 = AlgebraSpec::create(Family::SU, 3);
  Rng rng(11);

  SUBCASE("invariant polynomials of m commute") {
    auto x = random_state(su3, rng);
    CHECK(std::abs(poisson_bracket(left_poly(su3, 2), left_poly(su3, 3), x)) <= 1e-8);
  }

  SUBCASE("left and right coordinate momenta commute") {
    for (int trial = 0; trial < 5; ++trial) {
      auto x = random_state(su3, rng);
      for (int i : {0, 3})
        for (int j : {1, 7}) {
          double v = poisson_bracket(left_coordinate(su3, i), right_coordinate(su3, j), x);
          CHECK(std::abs(v) <= 1e-6);
        }
    }
  }

  SUBCASE("su(2) coordinate momenta reproduce the structure constants") {
    // with the unit-norm basis e_i/sqrt(2), [e1h, e2h] = sqrt(2) e3h, and the
    // left momenta satisfy {m_i, m_j} = -<m, [e_i, e_j]>.
    auto x = random_state(su2, rng);
    double v = poisson_bracket(left_coordinate(su2, 0), left_coordinate(su2, 1), x);
    auto e0 = su2->element(Eigen::VectorXd::Unit(3, 0));
    auto e1 = su2->element(Eigen::VectorXd::Unit(3, 1));
    double expect = -inner(x.m(), bracket(e0, e1));
    CHECK(v == doctest::Approx(expect).epsilon(1e-10));
  }

  SUBCASE("antisymmetry and Leibniz-compatible bilinearity") {
    auto x = random_state(su3, rng);
    auto F = left_coordinate(su3, 2);
    auto K = right_coordinate(su3, 5);
    auto H = hamiltonian_function(su3_sum_metric(su3));
    CHECK(poisson_bracket(F, K, x) == doctest::Approx(-poisson_bracket(K, F, x)));
    CHECK(poisson_bracket(H, H, x) == doctest::Approx(0.0));
  }
}

TEST_CASE("bracket against the action-flow oracle") {
  auto act = eschenburg_action(1, -1, 2, 2);
  auto su3 = act.spec();
  Rng rng(17);

  SUBCASE("dF/dt along the moment flow equals {F, phi}") {
    auto phi = moment_component(act, 0);
    std::vector<PhaseFunction> fns = {
        left_poly(su3, 2), left_coordinate(su3, 3), right_coordinate(su3, 6),
        hamiltonian_function(su3_sum_metric(su3))};
    for (int trial = 0; trial < 5; ++trial) {
      auto x = random_state(su3, rng);
      for (const auto& F : fns) {
        CAPTURE(F.name);
        double pb = poisson_bracket(F, phi, x);
        double oracle = flow_bracket_oracle(F, act.pairs()[0], x);
        CHECK(std::abs(pb - oracle) <= 1e-6 * std::max(1.0, std::abs(oracle)));
      }
    }
  }

  SUBCASE("moment components close under the bracket: {phi_a, phi_b} = phi_[a,b]") {
    auto gm = gromoll_meyer_action();
    for (int trial = 0; trial < 10; ++trial) {
      auto x = random_state(gm.spec(), rng);
      for (std::size_t i = 0; i < gm.pairs().size(); ++i)
        for (std::size_t j = 0; j < gm.pairs().size(); ++j) {
          double pb =
              poisson_bracket(moment_component(gm, i), moment_component(gm, j), x);
          GeneratorPair br{bracket(gm.pairs()[i].a1, gm.pairs()[j].a1),
                           bracket(gm.pairs()[i].a2, gm.pairs()[j].a2)};
          double expect = inner(Ad(x.g(), x.m()), br.a1) - inner(x.m(), br.a2);
          CHECK(std::abs(pb - expect) <= 1e-6 * std::max(1.0, std::abs(expect)));
        }
    }
  }

  SUBCASE("flow consistency: dF/dt = {F, H} along the geodesic flow") {
    MetricSpec sum = su3_sum_metric(su3);
    auto H = hamiltonian_function(sum);
    std::vector<PhaseFunction> fns = {left_coordinate(su3, 1), right_coordinate(su3, 4),
                                      moment_component(act, 0), left_poly(su3, 2)};
    const double h = 1e-6;
    for (int trial = 0; trial < 5; ++trial) {
      auto x = random_state(su3, rng);
      auto xp = step(sum, x, h, IntegratorConfig::Method::LieRk4, false);
      auto xm = step(sum, x, -h, IntegratorConfig::Method::LieRk4, false);
      for (const auto& F : fns) {
        CAPTURE(F.name);
        double oracle = (F.value(xp) - F.value(xm)) / (2 * h);
        double pb = poisson_bracket(F, H, x);
        CHECK(std::abs(pb - oracle) <= 1e-6 * std::max(1.0, std::abs(oracle)));
      }
    }
  }
}

TEST_CASE("ddim_dind") {
  Rng rng(29);

  SUBCASE("a single hamiltonian gives (1, 1)") {
    auto su3 = AlgebraSpec::create(Family::SU, 3);
    IntegralFamily fam{su3, {hamiltonian_function(MetricSpec::biinvariant())}};
    auto x = random_state(su3, rng);
    auto r = ddim_dind(fam, x);
    CHECK(r.ddim == 1);
    CHECK(r.dind == 1);
    CHECK_FALSE(r.tolerance_ambiguous);
  }

  SUBCASE("su(2) left coordinates give (3, 1)") {
    auto su2 = AlgebraSpec::create(Family::SU, 2);
    IntegralFamily fam{su2, {}};
    for (int i = 0; i < 3; ++i) fam.functions.push_back(left_coordinate(su2, i));
    auto x = random_state(su2, rng);
    auto r = ddim_dind(fam, x);
    CHECK(r.ddim == 3);
    CHECK(r.dind == 1);
  }

  SUBCASE("SU(3) bi-invariant coordinate family gives (14, 2)") {
    auto su3 = AlgebraSpec::create(Family::SU, 3);
    auto fam = biinvariant_coordinate_family(su3);
    REQUIRE(fam.functions.size() == 16);
    auto x = random_state(su3, rng);
    auto r = ddim_dind(fam, x);
    CHECK(r.ddim == 14);
    CHECK(r.dind == 2);
    CHECK_FALSE(r.odd_bracket_rank);
  }

  SUBCASE("counts are stable when the momentum is rescaled across 3 decades") {
    auto su3 = AlgebraSpec::create(Family::SU, 3);
    auto fam = biinvariant_coordinate_family(su3);
    auto x = random_state(su3, rng);
    for (double s : {1e-2, 1e-1, 1.0, 1e1}) {
      CotangentState xs(x.g(), x.m() * s);
      auto r = ddim_dind(fam, xs);
      CHECK(r.ddim == 14);
      CHECK(r.dind == 2);
    }
  }
}

TEST_CASE("completeness_check") {
  SUBCASE("SU(2): modal (5, 1), 5 + 1 = 6 = phase dim -> pass") {
    auto su2 = AlgebraSpec::create(Family::SU, 2);
    auto rep = completeness_check(biinvariant_coordinate_family(su2), 12, 555);
    CHECK(rep.modal_ddim == 5);
    CHECK(rep.modal_dind == 1);
    CHECK(rep.phase_dim == 6);
    CHECK(rep.pass);
  }

  SUBCASE("SU(3): modal (14, 2) -> pass") {
    auto su3 = AlgebraSpec::create(Family::SU, 3);
    auto rep = completeness_check(biinvariant_coordinate_family(su3), 12, 555);
    CHECK(rep.modal_ddim == 14);
    CHECK(rep.modal_dind == 2);
    CHECK(rep.phase_dim == 16);
    CHECK(rep.pass);
  }

  SUBCASE("a too-small family fails") {
    auto su3 = AlgebraSpec::create(Family::SU, 3);
    IntegralFamily fam{su3, {left_poly(su3, 2), left_poly(su3, 3)}};
    auto rep = completeness_check(fam, 8, 555);
    CHECK_FALSE(rep.pass);
  }

  SUBCASE("result is deterministic in the seed") {
    auto su2 = AlgebraSpec::create(Family::SU, 2);
    auto fam = biinvariant_coordinate_family(su2);
    auto r1 = completeness_check(fam, 10, 99);
    auto r2 = completeness_check(fam, 10, 99);
    CHECK(r1.modal_ddim == r2.modal_ddim);
    CHECK(r1.ambiguous == r2.ambiguous);
    REQUIRE(r1.per_sample.size() == r2.per_sample.size());
    for (std::size_t i = 0; i < r1.per_sample.size(); ++i) {
      CHECK(r1.per_sample[i].ddim == r2.per_sample[i].ddim);
      CHECK(r1.per_sample[i].dind == r2.per_sample[i].dind);
    }
  }
}

TEST_CASE("horizontal_regularity") {
  SUBCASE("gromoll-meyer horizontal covectors are generically regular") {
    auto rep = horizontal_regularity(gromoll_meyer_action(), 40, 777);
    CHECK(rep.samples == 40);
    CHECK(rep.pass);
    CHECK(rep.regular_fraction > 0.9);
    CHECK(rep.full_gradient_rank == rep.regular);
  }

  SUBCASE("eschenburg horizontal covectors are generically regular") {
    auto rep = horizontal_regularity(eschenburg_action(1, -1, 2, 2), 40, 777);
    CHECK(rep.pass);
    CHECK(rep.regular_fraction > 0.9);
  }
}

TEST_CASE("torus_dimension") {
  SUBCASE("eschenburg(1,-1,2,2): rank 2 - min dim 0 = 2") {
    auto rep = torus_dimension(eschenburg_action(1, -1, 2, 2), 60, 1234);
    CHECK(rep.torus_dim == 2);
    CHECK(rep.min_u_xi_dim == 0);
    CHECK(rep.supported);
  }

  SUBCASE("flag action on SU(3): the full torus survives, dimension 2") {
    auto su3 = AlgebraSpec::create(Family::SU, 3);
    auto rep = torus_dimension(flag_action(su3), 60, 1234);
    CHECK(rep.torus_dim == 2);
    CHECK(rep.min_u_xi_dim == 0);
    CHECK(rep.supported);
    CHECK(rep.histogram.count(0) == 1);
  }
}

TEST_CASE("conservation_certificate") {
  IntegratorConfig cfg;
  cfg.h = 1e-3;
  cfg.horizon = 2.0;

  SUBCASE("bi-invariant SU(3) flow with eschenburg data passes") {
    auto act = eschenburg_action(1, -1, 2, 2);
    auto fam = biinvariant_coordinate_family(act.spec());
    auto rep = conservation_certificate(MetricSpec::biinvariant(), act, fam, cfg, 5, 2);
    CHECK(rep.pass);
    for (const auto& s : rep.states) {
      CHECK(s.horizontal_start);
      CHECK(s.max_moment_drift <= 1e-7);
      for (const auto& [name, d] : s.family_drift) CHECK(d <= 1e-7);
    }
  }

  SUBCASE("left polynomials survive a left-only sectional flow") {
    auto act = eschenburg_action(1, -1, 2, 2);
    auto su3 = act.spec();
    Subspace t = default_cartan(su3);
    Eigen::MatrixXcd Ma = Eigen::MatrixXcd::Zero(3, 3);
    Ma.diagonal() << I * 1.0, I * 2.0, I * -3.0;
    auto a = su3->element_from_matrix(Ma);
    auto phi = build_sectional(t, a, a * 1.5, Eigen::MatrixXd::Identity(2, 2));
    IntegralFamily fam{su3, {left_poly(su3, 2), left_poly(su3, 3),
                             hamiltonian_function(MetricSpec::left_sectional(phi))}};
    auto rep = conservation_certificate(MetricSpec::left_sectional(phi), act, fam, cfg,
                                        5, 2);
    for (const auto& s : rep.states)
      for (const auto& [name, d] : s.family_drift) CHECK(d <= 1e-7);
  }

  SUBCASE("a non-conserved function is caught") {
    auto act = eschenburg_action(1, -1, 2, 2);
    auto su3 = act.spec();
    MetricSpec sum = su3_sum_metric(su3);
    // a bare coordinate momentum is not an integral of the sum-metric flow
    IntegralFamily fam{su3, {left_coordinate(su3, 0)}};
    auto rep = conservation_certificate(sum, act, fam, cfg, 5, 2);
    CHECK_FALSE(rep.pass);
  }
}
