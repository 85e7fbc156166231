#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bivop/quad.hpp"

using namespace bivop;

TEST_CASE("Gauss rules from the Jacobi matrix") {
  const auto r1 = golub_welsch(RadialFamily::laguerre(0.0), 0.0, 1);
  CHECK(r1.nodes(0) == doctest::Approx(1.0));
  CHECK(r1.weights(0) == doctest::Approx(1.0));

  const auto r2 = golub_welsch(RadialFamily::laguerre(0.0), 0.0, 2);
  CHECK(r2.nodes(0) == doctest::Approx(2.0 - std::sqrt(2.0)));
  CHECK(r2.nodes(1) == doctest::Approx(2.0 + std::sqrt(2.0)));

  const auto b1 = golub_welsch(RadialFamily::shifted_jacobi(0.0, 0.0), 0.0, 1);
  CHECK(b1.nodes(0) == doctest::Approx(0.5));
  CHECK(b1.weights(0) == doctest::Approx(1.0));
}

TEST_CASE("Gauss rules integrate moments exactly") {
  for (const RadialFamily& f : {RadialFamily::laguerre(0.7), RadialFamily::shifted_jacobi(1.5, -0.5)}) {
    const int n = 6;
    const auto r = golub_welsch(f, 0.5, n);
    for (int i = 0; i <= 2 * n - 1; ++i) {
      const double quad = (r.weights.array() * r.nodes.array().pow(i)).sum();
      CHECK(quad == doctest::Approx(measure_moment(f, 0.5, i)).epsilon(1e-11));
    }
  }
}

TEST_CASE("angular integrals") {
  CHECK(angular_integral(3, 3) == 1.0);
  CHECK(angular_integral(3, 1) == 0.0);
  CHECK(std::abs(angular_integral_trapezoid(3, 0, 8)) < 1e-15);
  CHECK(std::abs(angular_integral_trapezoid(2, 2, 9) - cplx(1.0)) < 1e-15);
}

TEST_CASE("lattice sums") {
  const MeasureSpec wall = family_measure(FamilyId::wall(0.0, 0.5));
  CHECK(std::abs(q_lattice_sum(wall, [](double) { return cplx(0.0); })) == 0.0);
  CHECK(q_lattice_sum(wall, [](double) { return cplx(1.0); }).real() ==
        doctest::Approx(radial_norm(RadialFamily::wall(0.0, 0.5), 0, 0.0)).epsilon(1e-13));
  const auto info = q_lattice_sum_detail(family_measure(FamilyId::zq(0.5, 0.5)), [](double) { return cplx(1.0); });
  CHECK(info.terms_forward >= 8);
  CHECK(info.terms_backward >= 8);
  CHECK(info.tail_bound < 1e-14);
}

TEST_CASE("Gram matrices") {
  const auto z = gram(FamilyId::z(0.0), 1);
  // index order (m,n) lexicographic: (0,0),(0,1),(1,0),(1,1)
  CHECK(z.matrix(0, 0).real() == doctest::Approx(std::numbers::pi));
  CHECK(std::abs(z.matrix(2, 1)) < 1e-14);
  CHECK(z.max_offdiag < 1e-12);

  const auto w = gram(FamilyId::wall(0.0, 0.5), 0);
  CHECK(w.matrix.rows() == 1);
  CHECK(w.matrix(0, 0).real() == doctest::Approx(1.0));

  const auto w3 = gram(FamilyId::wall(0.0, 0.5), 3);
  CHECK(w3.max_diag_rel_err < 1e-7);
  CHECK(w3.max_offdiag < 1e-9);

  GramOptions trap;
  trap.trapezoid_angular = true;
  const auto mt = gram(FamilyId::m(0.5, 1.0), 3, trap);
  CHECK(mt.max_offdiag < 1e-12);
  CHECK(mt.max_diag_rel_err < 1e-12);

  CHECK_THROWS_AS(gram(FamilyId::z(0.0), 9), ParameterError);
}

TEST_CASE("zero circles") {
  const auto one = zero_circle_monotonicity(FamilyId::z(0.5), 2, 3, 3);
  CHECK(one.increasing);
  const auto zc = zero_circle_monotonicity(FamilyId::m(0.5, 1.5), 3, 3, 8);
  CHECK(zc.increasing);
  CHECK(zc.max_bisection_gap < 1e-9);
  REQUIRE(zc.radii.size() == 6);
  for (std::size_t i = 1; i < zc.radii.size(); ++i) CHECK((zc.radii[i].array() > zc.radii[i - 1].array()).all());
}
