#include <doctest.h>

#include <cmath>

#include "bivop/qcalc.hpp"

using namespace bivop;

TEST_CASE("pochhammer and factorial") {
  CHECK(pochhammer(3.7, 0) == 1.0);
  CHECK(pochhammer(1.0, 5) == 120.0);
  CHECK(pochhammer(0.5, 3) == doctest::Approx(1.875));
  CHECK(pochhammer(0.0, 3) == 0.0);
  // large n goes through lgamma
  CHECK(pochhammer(1.0, 25) == doctest::Approx(std::tgamma(26.0)).epsilon(1e-12));
  CHECK(binomial(6, 2) == 15.0);
  CHECK(binomial(3, 5) == 0.0);
  CHECK_THROWS_AS(pochhammer(1.0, -1), ParameterError);
}

TEST_CASE("q-pochhammer") {
  CHECK(qpochhammer(0.3, 0.5, 0) == 1.0);
  CHECK(qpochhammer(0.5, 0.5, 2) == doctest::Approx(0.375));

  // oracle: truncated product with 60 factors
  double ref = 1.0;
  for (int k = 1; k <= 60; ++k) ref *= 1.0 - std::pow(0.5, k);
  CHECK(std::abs(qpochhammer_inf(0.5, 0.5) - ref) < 1e-10);
  CHECK(std::abs(qpochhammer_inf(0.5, 0.5) - 0.2887880951) < 1e-10);

  // (a;q)_inf = (a;q)_n (aq^n;q)_inf
  const double a = -0.4, q = 0.8;
  CHECK(qpochhammer_inf(a, q) == doctest::Approx(qpochhammer(a, q, 7) * qpochhammer_inf(a * std::pow(q, 7), q)));

  const cplx z(0.3, 0.4);
  const cplx v = qpochhammer_inf(z, 0.5);
  cplx direct(1.0);
  for (int k = 0; k < 80; ++k) direct *= 1.0 - z * std::pow(0.5, k);
  CHECK(std::abs(v - direct) < 1e-14);

  CHECK_THROWS_AS(qpochhammer(0.1, 1.0, 3), ParameterError);
}

TEST_CASE("q-numbers") {
  CHECK(qnumber(0, 0.5) == 0.0);
  CHECK(qnumber(1, 0.5) == doctest::Approx(1.0));
  CHECK(qnumber(2, 0.5) == doctest::Approx(1.5));
  CHECK(qnumber(5, 0.999999) == doctest::Approx(5.0).epsilon(1e-5));
  CHECK(qbinomial(4, 2, 0.5) == doctest::Approx(qnumber(4, 0.5) * qnumber(3, 0.5) / qnumber(2, 0.5)));
}

TEST_CASE("terminating hypergeometric sums") {
  CHECK(std::abs(hyper_terminating(HyperKind::F21, {cplx(0.0), cplx(1.0)}, {cplx(3.0), cplx(1.5)}, cplx(0.7)) -
                 cplx(1.0)) < 1e-15);
  // 2F1(-1, 1; 2, 2; x) read as the sum with lower parameters k+1 = 2 and beta+1 = 2
  const double x = 0.6;
  CHECK(std::abs(hyper_terminating(HyperKind::F21, {cplx(-1.0), cplx(1.0)}, {cplx(2.0), cplx(2.0)}, cplx(x)) -
                 cplx(1.0 - x / 4.0)) < 1e-15);

  const double q = 0.5;
  CHECK(std::abs(hyper_terminating(HyperKind::Phi43, {cplx(1.0), cplx(0.2), cplx(0.3), cplx(0.4)},
                                   {cplx(0.1), cplx(0.2), cplx(0.3)}, cplx(q), q) -
                 cplx(1.0)) < 1e-15);
  // q-Chu-Vandermonde: 2phi1(q^-n, b; c; q, q) = (c/b;q)_n / (c;q)_n * b^n, checked as 4phi3 with cancelling pairs
  const int n = 3;
  const double b = 0.3, c = 0.7;
  const cplx lhs = hyper_terminating(HyperKind::Phi43, {cplx(std::pow(q, -n)), cplx(b), cplx(0.25), cplx(0.6)},
                                     {cplx(c), cplx(0.25), cplx(0.6)}, cplx(q), q);
  const double rhs = qpochhammer(c / b, q, n) / qpochhammer(c, q, n) * std::pow(b, n);
  CHECK(std::abs(lhs - cplx(rhs)) < 1e-13);
}
