#include <doctest.h>

#include <cmath>

#include "bivop/bivariate.hpp"

using namespace bivop;

namespace {
Poly z1z2() { return Poly::monomial(1, 1); }
}  // namespace

TEST_CASE("construction examples") {
  CHECK(residual(construct(FamilyId::z(0.7), 0, 0), Poly(1.0)) == 0.0);
  CHECK(residual(construct(FamilyId::z(0.7), 1, 1), Poly(1.7) - z1z2()) < 1e-15);
  CHECK(residual(construct(FamilyId::m(0.4, 1.1), 1, 1), Poly(2.1) - cplx(3.5) * z1z2()) < 1e-14);
  CHECK(residual(construct(FamilyId::hermite(), 1, 1), z1z2() - Poly(1.0)) == 0.0);
  // symmetry: f_{n,m}(z1,z2) = f_{m,n}(z2,z1)
  CHECK(residual(construct(FamilyId::z(0.3), 2, 4), swap_vars(construct(FamilyId::z(0.3), 4, 2))) < 1e-15);
  CHECK_THROWS_AS(construct(FamilyId::z(-2.0), 1, 1), ParameterError);
}

TEST_CASE("operational formula") {
  CHECK(residual(operational_Z(0, 0, 0.4), Poly(1.0)) < 1e-15);
  CHECK(residual(operational_Z(1, 1, 0.4), Poly(1.4) - z1z2()) < 1e-15);
  CHECK(residual(operational_Z(2, 1, 0.4), Poly::monomial(1, 0, 2.4) - Poly::monomial(2, 1)) < 1e-15);
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= m; ++n) CHECK(residual(operational_Z(m, n, 1.3), construct(FamilyId::z(1.3), m, n)) < 1e-12);
}

TEST_CASE("single identity checks") {
  const Tolerance tol;
  auto r = check_identity(FamilyId::z(0.7), IdentityId::Z_RR1, 1, 1, tol);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.max_residual < 1e-12);

  r = check_identity(FamilyId::z(1.3), IdentityId::Z_PDE, 3, 2, tol);
  CHECK(r.verdict == Verdict::Pass);

  r = check_identity(FamilyId::zq(0.5, 0.5), IdentityId::ZQ_RR2, 2, 1, tol);
  CHECK(r.verdict == Verdict::KnownDiscrepancy);
  CHECK(r.listed);
  CHECK(r.max_residual > 1e-6);
  CHECK(r.derived_residual < 1e-10);

  CHECK_THROWS_AS(check_identity(FamilyId::z(0.7), IdentityId::ZQ_RR1, 1, 1, tol), ParameterError);
  CHECK_THROWS_AS(check_identity(FamilyId::z(0.7), IdentityId::Z_RR1, 1, 3, tol), RangeError);
}

TEST_CASE("every generic identity passes on every family") {
  const Tolerance tol;
  for (const FamilyId& f : {FamilyId::z(0.5), FamilyId::m(0.7, -0.5), FamilyId::zq(0.2, 0.6),
                            FamilyId::wall(1.0, 0.4), FamilyId::mq(0.3, 0.9, 0.7)})
    for (IdentityId id : {IdentityId::GEN_3TRR, IdentityId::GEN_REC2, IdentityId::GEN_DIAG,
                          IdentityId::GEN_EIGEN_ANGULAR})
      for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= m; ++n) {
          CAPTURE(f.describe());
          CAPTURE(to_string(id));
          CAPTURE(m);
          CAPTURE(n);
          CHECK(check_identity(f, id, m, n, tol).verdict == Verdict::Pass);
        }
}

TEST_CASE("Z PDE operator against the angular operator") {
  // theta_1 - theta_2 acts as m-n on f_{m,n}; the PDE operator raises m-n by one, so [A, L] = L
  const double beta = 0.8;
  auto L = [&](const Poly& f) {
    return Poly::monomial(1, 0) * diff(diff(f, Var::z1, Flavor::partial), Var::z2, Flavor::partial) +
           cplx(beta) * diff(f, Var::z2, Flavor::partial) - diff(f, Var::z2, Flavor::theta) * Poly::monomial(1, 0);
  };
  auto A = [](const Poly& f) { return diff(f, Var::z1, Flavor::theta) - diff(f, Var::z2, Flavor::theta); };
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= m; ++n) {
      const Poly f = construct(FamilyId::z(beta), m, n);
      CHECK(residual(A(f), cplx(m - n) * f) < 1e-12);
      CHECK(residual(L(f), cplx(-n) * Poly::monomial(1, 0) * f) < 1e-10);
      CHECK(residual(A(L(f)) - L(A(f)), L(f)) < 1e-10);
    }
}

TEST_CASE("q -> 1 scaling") {
  const Poly p = Poly::monomial(2, 3, 1.0) + Poly::monomial(1, 0, 2.0);
  const Poly s = scale_q_to_one(p, 0.9);
  CHECK(s.coeff(2, 3).real() == doctest::Approx(0.01));
  CHECK(s.coeff(1, 0).real() == doctest::Approx(2.0));
}

TEST_CASE("connection coefficients") {
  const auto same = connection_Z(3, 2, 0.7, 0.7);
  REQUIRE(!same.corrected.empty());
  CHECK(same.corrected[0] == 1.0);
  for (std::size_t j = 1; j < same.corrected.size(); ++j) CHECK(same.corrected[j] == 0.0);
  CHECK(same.corrected_residual < 1e-12);
  const auto r = connection_Z(4, 2, 2.0, -0.5);
  CHECK(r.corrected_residual < 1e-11);
  CHECK(r.printed_residual > 1e-3);
}

TEST_CASE("generating functions") {
  GenFunPoint origin{cplx(0.0), cplx(0.0), cplx(0.5), cplx(0.3), 30};
  const auto r0 = genfun_check(FamilyId::z(0.4), GenFun::Z_EXP, origin);
  CHECK(std::abs(r0.truncated - cplx(1.0)) < 1e-15);
  CHECK(r0.residual_printed < 1e-15);

  GenFunPoint pt{cplx(0.1), cplx(0.1), cplx(0.5), cplx(0.3), 30};
  CHECK(genfun_check(FamilyId::z(0.4), GenFun::Z_EXP, pt).residual_corrected < 1e-10);
  for (GenFun g : {GenFun::M_EXP, GenFun::M_PLAIN, GenFun::M_DOUBLE})
    CHECK(genfun_check(FamilyId::m(0.5, 1.2), g, pt).residual_printed < 1e-10);
}

TEST_CASE("convolution") {
  const std::vector<ConvolutionPoint> pts = {{cplx(0.3, 0.1), cplx(-0.2), cplx(0.5), cplx(0.1, -0.6)},
                                             {cplx(-0.7), cplx(0.2, 0.2), cplx(0.0, 0.4), cplx(0.9)}};
  const auto r = convolution_Z_check(3, 2, 0.3, 1.2, pts);
  CHECK(r.residual_corrected < 1e-9);
}

TEST_CASE("series solver") {
  const Poly one = pde_series_solution(0.5, 0, {{{0, 1.0}}, {}}, 8);
  CHECK(residual(one, Poly(1.0)) < 1e-15);
  // n = 1, a_{1,0} = 1, beta = 0: z1 (2 - z1 z2) / 2
  const Poly s = pde_series_solution(0.0, 1, {{{1, 1.0}}, {}}, 8);
  CHECK(residual(s, Poly::monomial(1, 0) - Poly::monomial(2, 1, 0.5)) < 1e-15);
  CHECK(max_abs(series_operator(s, 0.0, 1)) < 1e-15);
  CHECK_THROWS_AS(series_closed_column(0.5, 2, 3), RangeError);
}
