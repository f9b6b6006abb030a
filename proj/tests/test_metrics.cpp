#include <complex>

#include "doctest.h"
#include "geoflow/dynamics.hpp"
#include "geoflow/rng.hpp"

using namespace geoflow;
using Cplx = std::complex<double>;

namespace {

const Cplx I{0.0, 1.0};

Eigen::MatrixXcd su2_e(int which) {
  Eigen::MatrixXcd M(2, 2);
  switch (which) {
    case 1: M << 0, 1, -1, 0; break;
    case 2: M << 0, I, I, 0; break;
    default: M << I, 0, 0, -I; break;
  }
  return M;
}

CotangentState random_state(const AlgebraSpec::Ptr& spec, Rng& rng) {
  auto g = exp_to_group(spec->element(rng.gaussian_vector(spec->dim())));
  auto m = spec->element(rng.gaussian_vector(spec->dim()));
  return {std::move(g), std::move(m)};
}

}  // namespace

TEST_CASE("build_sectional on su(2)") {
  auto su2 = AlgebraSpec::create(Family::SU, 2);
  Subspace t = default_cartan(su2);
  REQUIRE(t.dimension() == 1);
  auto e1 = su2->element_from_matrix(su2_e(1));
  auto e3 = su2->element_from_matrix(su2_e(3));

  SUBCASE("b = 2a, D = [1]: phi doubles t-perp and fixes t") {
    auto phi = build_sectional(t, e3, e3 * 2.0, Eigen::MatrixXd::Identity(1, 1));
    CHECK((phi.apply(e1).coords() - 2.0 * e1.coords()).norm() < 1e-12);
    CHECK((phi.apply(e3).coords() - e3.coords()).norm() < 1e-12);

    auto [pd, min_ev] = is_positive_definite(phi);
    CHECK(pd);
    CHECK(min_ev == doctest::Approx(1.0).epsilon(1e-10));
  }

  SUBCASE("b = a, D = identity gives the identity operator") {
    auto phi = build_sectional(t, e3, e3, Eigen::MatrixXd::Identity(1, 1));
    CHECK((phi.matrix() - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
  }

  SUBCASE("b = -a, D = identity is indefinite with min eigenvalue -1") {
    auto phi = build_sectional(t, e3, e3 * -1.0, Eigen::MatrixXd::Identity(1, 1));
    auto [pd, min_ev] = is_positive_definite(phi);
    CHECK_FALSE(pd);
    CHECK(min_ev == doctest::Approx(-1.0).epsilon(1e-10));
  }
}

TEST_CASE("build_sectional rejects bad input") {
  auto su3 = AlgebraSpec::create(Family::SU, 3);
  Subspace t = default_cartan(su3);
  REQUIRE(t.dimension() == 2);

  SUBCASE("singular a is NotRegular") {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(3, 3);
    M(0, 0) = I;
    M(1, 1) = I;
    M(2, 2) = -2.0 * I;
    auto a = su3->element_from_matrix(M);
    CHECK_THROWS_AS(
        build_sectional(t, a, a, Eigen::MatrixXd::Identity(2, 2)), NotRegular);
  }

  SUBCASE("non-commutative t is NotCartan") {
    Eigen::MatrixXd span = Eigen::MatrixXd::Zero(8, 2);
    span(0, 0) = 1.0;  // off-diagonal directions do not commute
    span(1, 1) = 1.0;
    Subspace bad(su3, span);
    auto a = bad.basis_element(0);
    CHECK_THROWS_AS(build_sectional(bad, a, a, Eigen::MatrixXd::Identity(2, 2)),
                    NotCartan);
  }

  SUBCASE("a outside t is rejected") {
    Eigen::MatrixXcd off = Eigen::MatrixXcd::Zero(3, 3);
    off(0, 1) = 1.0;
    off(1, 0) = -1.0;
    auto a = su3->element_from_matrix(off);
    CHECK_THROWS_AS(build_sectional(t, a, a, Eigen::MatrixXd::Identity(2, 2)),
                    InvalidParameters);
  }
}

TEST_CASE("sectional operator structural properties") {
  auto su3 = AlgebraSpec::create(Family::SU, 3);
  Subspace t = default_cartan(su3);
  Rng rng(101);
  Eigen::MatrixXcd Ma = Eigen::MatrixXcd::Zero(3, 3);
  Ma.diagonal() << I * 1.0, I * 2.3, I * -3.3;
  Eigen::MatrixXcd Mb = Eigen::MatrixXcd::Zero(3, 3);
  Mb.diagonal() << I * 0.7, I * -0.2, I * -0.5;
  auto a = su3->element_from_matrix(Ma);
  auto b = su3->element_from_matrix(Mb);
  Eigen::MatrixXd D(2, 2);
  D << 2.0, 0.3, 0.3, 1.5;
  auto phi = build_sectional(t, a, b, D);

  SUBCASE("matrix is symmetric") {
    CHECK((phi.matrix() - phi.matrix().transpose()).norm() <= 1e-10);
  }

  SUBCASE("phi commutes with ad_a on t-perp") {
    Eigen::MatrixXd A = su3->ad_matrix(a.coords());
    Eigen::MatrixXd C = phi.matrix() * A - A * phi.matrix();
    CHECK(C.norm() <= 1e-8);
  }
}

TEST_CASE("hamiltonian values") {
  auto su2 = AlgebraSpec::create(Family::SU, 2);
  auto e1 = su2->element_from_matrix(su2_e(1));
  auto e3 = su2->element_from_matrix(su2_e(3));
  auto id = GroupElement::identity(su2);

  SUBCASE("bi-invariant with m = e3: H = 1") {
    CotangentState x(id, e3);
    CHECK(hamiltonian(MetricSpec::biinvariant(), x) == doctest::Approx(1.0));
  }

  SUBCASE("zero momentum: H = 0") {
    CotangentState x(id, su2->zero());
    CHECK(hamiltonian(MetricSpec::biinvariant(), x) == 0.0);
  }

  SUBCASE("left-only sectional doubling t-perp: H(m = e1) = 2") {
    Subspace t = default_cartan(su2);
    auto phi = build_sectional(t, e3, e3 * 2.0, Eigen::MatrixXd::Identity(1, 1));
    CotangentState x(id, e1);
    CHECK(hamiltonian(MetricSpec::left_sectional(phi), x) == doctest::Approx(2.0));
  }
}

TEST_CASE("velocity") {
  auto su2 = AlgebraSpec::create(Family::SU, 2);
  Rng rng(55);

  SUBCASE("bi-invariant: Omega = m") {
    auto x = random_state(su2, rng);
    auto w = velocity(MetricSpec::biinvariant(), x);
    CHECK((w.coords() - x.m().coords()).norm() < 1e-12);
  }

  SUBCASE("right-only at identity: Omega = phi m") {
    Subspace t = default_cartan(su2);
    auto e3 = su2->element_from_matrix(su2_e(3));
    auto phi = build_sectional(t, e3, e3 * 2.0, Eigen::MatrixXd::Identity(1, 1));
    auto m = su2->element(rng.gaussian_vector(3));
    CotangentState x(GroupElement::identity(su2), m);
    auto w = velocity(MetricSpec::right_sectional(phi), x);
    CHECK((w.coords() - phi.apply(m).coords()).norm() < 1e-10);
  }

  SUBCASE("central-difference oracle on 100 random states of a sum metric") {
    auto su3 = AlgebraSpec::create(Family::SU, 3);
    Subspace t = default_cartan(su3);
    Eigen::MatrixXcd Ma = Eigen::MatrixXcd::Zero(3, 3);
    Ma.diagonal() << I * 1.0, I * 2.0, I * -3.0;
    Eigen::MatrixXcd Mb = Eigen::MatrixXcd::Zero(3, 3);
    Mb.diagonal() << I * 0.5, I * 0.8, I * -1.3;
    auto a = su3->element_from_matrix(Ma);
    auto b = su3->element_from_matrix(Mb);
    auto phi1 = build_sectional(t, a, b, 2.0 * Eigen::MatrixXd::Identity(2, 2));
    auto phi2 = build_sectional(t, a, b * 0.5, 1.5 * Eigen::MatrixXd::Identity(2, 2));
    MetricSpec sum = MetricSpec::sum(phi1, phi2);

    Rng srng(77);
    const double h = 1e-5;
    for (int i = 0; i < 100; ++i) {
      auto x = random_state(su3, srng);
      auto dm = su3->element(srng.gaussian_vector(8));
      double analytic = inner(velocity(sum, x), dm);
      CotangentState xp(x.g(), x.m() + dm * h);
      CotangentState xm(x.g(), x.m() - dm * h);
      double fd = (hamiltonian(sum, xp) - hamiltonian(sum, xm)) / (2 * h);
      CHECK(std::abs(analytic - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("bi-invariant hamiltonian is invariant under two-sided translations") {
  auto su3 = AlgebraSpec::create(Family::SU, 3);
  Rng rng(99);
  MetricSpec bi = MetricSpec::biinvariant();
  for (int i = 0; i < 20; ++i) {
    auto x = random_state(su3, rng);
    auto h = exp_to_group(su3->element(rng.gaussian_vector(8)));
    auto k = exp_to_group(su3->element(rng.gaussian_vector(8)));
    // left translation h*g leaves m untouched; right translation g*k
    // transports m by Ad_{k^{-1}}.
    CotangentState left(h * x.g(), x.m());
    CotangentState right(x.g() * k, Ad(k.inverse(), x.m()));
    CHECK(hamiltonian(bi, left) == doctest::Approx(hamiltonian(bi, x)).epsilon(1e-10));
    CHECK(hamiltonian(bi, right) == doctest::Approx(hamiltonian(bi, x)).epsilon(1e-10));
  }
}
