#include <complex>

#include "doctest.h"
#include "geoflow/actions.hpp"
#include "geoflow/rng.hpp"

using namespace geoflow;
using Cplx = std::complex<double>;

namespace {

const Cplx I{0.0, 1.0};

CotangentState random_state(const AlgebraSpec::Ptr& spec, Rng& rng) {
  auto g = exp_to_group(spec->element(rng.gaussian_vector(spec->dim())));
  auto m = spec->element(rng.gaussian_vector(spec->dim()));
  return {std::move(g), std::move(m)};
}

}  // namespace

TEST_CASE("catalog construction") {
  SUBCASE("eschenburg circle action on SU(3)") {
    auto act = eschenburg_action(1, -1, 2, 2);
    CHECK(act.pairs().size() == 1);
    CHECK(act.abelian());
    CHECK(act.spec()->family() == Family::SU);
    CHECK(act.spec()->n() == 3);
    auto vd = vertical_horizontal(act);
    CHECK(vd.vertical.dimension() == 1);
    CHECK(vd.horizontal.dimension() == 7);
    CHECK_FALSE(vd.degenerate);

    // the vertical generator at the identity is i diag(k-p, l-q, q+p-k-l)
    auto gen = generators_at(act, GroupElement::identity(act.spec()))[0];
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(3, 3);
    expect.diagonal() << I * -1.0, I * -3.0, I * 4.0;
    CHECK((gen.matrix() - expect).norm() < 1e-12);
  }

  SUBCASE("equal eschenburg parameters leave no quotient and are rejected") {
    CHECK_THROWS_AS(eschenburg_action(1, 2, 1, 2), InvalidParameters);
  }

  SUBCASE("gromoll-meyer sp(1) action on Sp(2)") {
    auto act = gromoll_meyer_action();
    CHECK(act.pairs().size() == 3);
    CHECK_FALSE(act.abelian());
    CHECK(act.closure_residual() <= 1e-10);
    CHECK(act.spec()->family() == Family::Sp);
    CHECK(act.spec()->n() == 2);
    auto vd = vertical_horizontal(act);
    CHECK(vd.vertical.dimension() == 3);
    CHECK(vd.horizontal.dimension() == 7);
  }

  SUBCASE("flag action of the maximal torus on SU(3)") {
    auto su3 = AlgebraSpec::create(Family::SU, 3);
    auto act = flag_action(su3);
    CHECK(act.pairs().size() == 2);
    CHECK(act.abelian());
    auto vd = vertical_horizontal(act);
    CHECK(vd.vertical.dimension() == 2);
    // vertical = the torus: every diagonal element must be contained
    Subspace t = default_cartan(su3);
    for (int i = 0; i < 2; ++i) CHECK(vd.vertical.contains(t.basis_element(i), 1e-10));
  }

  SUBCASE("dependent generator pairs are rejected") {
    auto su3 = AlgebraSpec::create(Family::SU, 3);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(3, 3);
    M.diagonal() << I * 1.0, I * 1.0, I * -2.0;
    auto a = su3->element_from_matrix(M);
    std::vector<GeneratorPair> pairs{{a, a * 0.0}, {a * 2.0, a * 0.0}};
    CHECK_THROWS_AS(TwoSidedAction(su3, pairs, "dup"), InvalidParameters);
  }
}

TEST_CASE("moment and horizontal sampling") {
  auto act = eschenburg_action(1, -1, 2, 2);
  auto su3 = act.spec();

  SUBCASE("moment vanishes on horizontal momenta at the identity") {
    auto samples = sample_horizontal(act, 42, 25);
    auto id = GroupElement::identity(su3);
    for (const auto& m : samples) {
      CHECK(m.norm() == doctest::Approx(1.0).epsilon(1e-12));
      Eigen::VectorXd mu = moment(act, CotangentState(id, m));
      CHECK(mu.norm() <= 1e-12);
    }
  }

  SUBCASE("moment = <n, a1> - <m, a2> at a generic state") {
    Rng rng(5);
    auto x = random_state(su3, rng);
    Eigen::VectorXd mu = moment(act, x);
    const auto& pr = act.pairs()[0];
    double expect = inner(x.spatial(), pr.a1) - inner(x.m(), pr.a2);
    CHECK(mu(0) == doctest::Approx(expect).epsilon(1e-12));
    // equivalent left-trivialized form through the generator at g
    auto gen = generators_at(act, x.g())[0];
    CHECK(mu(0) == doctest::Approx(inner(x.m(), gen)).epsilon(1e-10));
  }

  SUBCASE("sampling is seed-deterministic and seed-sensitive") {
    auto s1 = sample_horizontal(act, 7, 10);
    auto s2 = sample_horizontal(act, 7, 10);
    auto s3 = sample_horizontal(act, 8, 10);
    for (int i = 0; i < 10; ++i)
      CHECK((s1[i].coords() - s2[i].coords()).norm() == 0.0);
    CHECK((s1[0].coords() - s3[0].coords()).norm() > 1e-3);
  }
}

TEST_CASE("u_xi_dim") {
  auto act = eschenburg_action(1, -1, 2, 2);

  SUBCASE("xi = 0 centralizes the whole vertical space") {
    CHECK(u_xi_dim(act, act.spec()->zero()) == 1);
  }

  SUBCASE("generic horizontal xi is centralized by nothing") {
    auto samples = sample_horizontal(act, 11, 10);
    for (const auto& xi : samples) CHECK(u_xi_dim(act, xi) == 0);
  }

  SUBCASE("vertical xi of the flag action keeps the full torus") {
    auto su3 = AlgebraSpec::create(Family::SU, 3);
    auto act2 = flag_action(su3);
    Subspace t = default_cartan(su3);
    CHECK(u_xi_dim(act2, t.basis_element(0)) == 2);
  }
}

TEST_CASE("infinitesimal_freeness") {
  SUBCASE("flag action is locally free away from singular points") {
    auto su3 = AlgebraSpec::create(Family::SU, 3);
    double sigma = infinitesimal_freeness(flag_action(su3), 3, 50);
    CHECK(sigma > 1e-6);
  }

  SUBCASE("eschenburg(1,-1,2,2) is locally free over 100 samples") {
    double sigma = infinitesimal_freeness(eschenburg_action(1, -1, 2, 2), 3, 100);
    CHECK(sigma > 1e-6);
  }

  SUBCASE("a diagonal pair degenerates at the identity") {
    // (a, a) acts by conjugation: the generator vanishes wherever g
    // commutes with a, so freeness collapses near such points.
    auto su3 = AlgebraSpec::create(Family::SU, 3);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(3, 3);
    M.diagonal() << I * 1.0, I * 2.0, I * -3.0;
    auto a = su3->element_from_matrix(M);
    TwoSidedAction conj(su3, {{a, a}}, "conjugation");
    auto vd = vertical_horizontal(conj);
    CHECK(vd.degenerate);
    CHECK(vd.vertical.dimension() == 0);
    auto gens = generators_at(conj, GroupElement::identity(su3));
    CHECK(gens[0].norm() <= 1e-14);
  }
}

TEST_CASE("action_flow") {
  Rng rng(23);

  SUBCASE("flow of the eschenburg pair matches the two-sided translation") {
    auto act = eschenburg_action(1, -1, 2, 2);
    auto x = random_state(act.spec(), rng);
    const auto& pr = act.pairs()[0];
    double t = 0.37;
    auto y = action_flow(pr, t, x);
    auto expect_g =
        exp_to_group(pr.a1, t) * x.g() * exp_to_group(pr.a2, -t);
    CHECK((y.g().matrix() - expect_g.matrix()).norm() < 1e-12);
    CHECK((y.m().coords() - Ad(exp_to_group(pr.a2, t), x.m()).coords()).norm() < 1e-12);
  }

  SUBCASE("the flow preserves its own moment and the spatial momentum pairing") {
    auto act = gromoll_meyer_action();
    auto x = random_state(act.spec(), rng);
    for (const auto& pr : act.pairs()) {
      auto y = action_flow(pr, 0.81, x);
      double before = inner(x.spatial(), pr.a1) - inner(x.m(), pr.a2);
      double after = inner(y.spatial(), pr.a1) - inner(y.m(), pr.a2);
      CHECK(after == doctest::Approx(before).epsilon(1e-10));
    }
  }

  SUBCASE("t = 0 is the identity map") {
    auto act = eschenburg_action(2, 1, 0, 3);
    auto x = random_state(act.spec(), rng);
    auto y = action_flow(act.pairs()[0], 0.0, x);
    CHECK((y.g().matrix() - x.g().matrix()).norm() < 1e-14);
    CHECK((y.m().coords() - x.m().coords()).norm() < 1e-14);
  }
}

TEST_CASE("builtin_scenarios") {
  auto list = builtin_scenarios();
  REQUIRE(list.size() == 3);
  bool esch = false, gm = false, flag = false;
  for (const auto& s : list) {
    if (s.name == "eschenburg") esch = true;
    if (s.name == "gromoll_meyer") gm = true;
    if (s.name == "flag") flag = true;
    CHECK_FALSE(s.signature.empty());
    CHECK_FALSE(s.description.empty());
  }
  CHECK(esch);
  CHECK(gm);
  CHECK(flag);
}
