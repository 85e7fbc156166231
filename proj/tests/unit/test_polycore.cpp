#include <doctest.h>

#include "bivop/polycore.hpp"

using namespace bivop;

namespace {
const cplx I(0.0, 1.0);
Poly z1() { return Poly::monomial(1, 0); }
Poly z2() { return Poly::monomial(0, 1); }
}  // namespace

TEST_CASE("ring operations") {
  const Poly s = Poly(1.0) + z1() * z2();
  CHECK(s.size() == 2);
  CHECK(s.coeff(0, 0) == cplx(1.0));
  CHECK(s.coeff(1, 1) == cplx(1.0));

  const Poly m = z1() * z2();
  CHECK(m.size() == 1);
  CHECK(m.coeff(1, 1) == cplx(1.0));

  const Poly sc = cplx(-1.0) * Poly::monomial(2, 0);
  CHECK(sc.coeff(2, 0) == cplx(-1.0));

  // cancellation removes the term
  CHECK((z1() - z1()).is_zero());
  CHECK((Poly(2.0) * Poly::monomial(3, 1)).total_degree() == 4);
}

TEST_CASE("derivatives") {
  const Poly p = Poly::monomial(2, 1);
  const Poly d = diff(p, Var::z1, Flavor::partial);
  CHECK(d.size() == 1);
  CHECK(d.coeff(1, 1) == cplx(2.0));

  const Poly t = diff(Poly::monomial(2, 3), Var::z2, Flavor::theta);
  CHECK(t.coeff(2, 3) == cplx(3.0));

  const Poly qd = diff(Poly::monomial(0, 3), Var::z2, Flavor::qtheta, 0.5);
  CHECK(qd.coeff(0, 3).real() == doctest::Approx(1.75).epsilon(1e-15));

  CHECK(diff(Poly(4.0), Var::z1, Flavor::qpartial, 0.5).is_zero());
  CHECK_THROWS_AS(diff(Poly(4.0), Var::z1, Flavor::qpartial, 1.0), ParameterError);

  // D_q z^k = [k]_q z^(k-1)
  const Poly dq = diff(Poly::monomial(4, 0), Var::z1, Flavor::qpartial, 0.3);
  CHECK(dq.coeff(3, 0).real() == doctest::Approx(qint(4, 0.3)).epsilon(1e-15));
}

TEST_CASE("evaluation") {
  CHECK(std::abs(eval(z1() * z2() - Poly(1.0), cplx(1.0), cplx(1.0))) == 0.0);
  CHECK(std::abs(eval(Poly::monomial(2, 0), I, cplx(7.0, 3.0)) - cplx(-1.0)) < 1e-15);
  // Z^(0)_{1,1} = 1 - z1 z2
  const Poly z11 = Poly(1.0) - z1() * z2();
  CHECK(std::abs(eval(z11, cplx(2.0), cplx(3.0)) - cplx(-5.0)) < 1e-15);
}

TEST_CASE("residual") {
  const Poly p = Poly(3.0) + Poly::monomial(2, 1, cplx(0.5, -1.0));
  CHECK(residual(p, p) == 0.0);
  CHECK(residual(Poly(), z1()) == 1.0);
  CHECK(residual(p, p + Poly::monomial(1, 1, 1e-12)) == doctest::Approx(1e-12).epsilon(1e-6));
  CHECK(std::isnan(max_abs(Poly(std::nan("")))));
}

TEST_CASE("dilation, shift and swap") {
  const Poly p = Poly::monomial(2, 1, 3.0);
  CHECK(dilate(p, Var::z1, cplx(2.0)).coeff(2, 1) == cplx(12.0));
  CHECK(shift(p, 1, -1).coeff(3, 0) == cplx(3.0));
  CHECK(swap_vars(p).coeff(1, 2) == cplx(3.0));
}

TEST_CASE("tolerance") {
  const Tolerance t;
  CHECK(t.accepts(5e-11, 1.0));
  CHECK(t.accepts(5e-10, 1.0));  // abs + rel * scale
  CHECK_FALSE(t.accepts(2e-9, 1.0));
  CHECK(t.accepts(5e-8, 1e2));
  CHECK_THROWS_AS((Tolerance{-1.0, 0.0}.validate()), ParameterError);
}
