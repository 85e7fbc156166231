#pragma once

// The families f_{m,n} = z1^(m-n) phi_n(z1 z2; m-n) (m >= n, swapped for m < n) and
// the identity catalog, every identity checked as a cleared polynomial equation.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bivop/polycore.hpp"
#include "bivop/radial.hpp"

namespace bivop {

enum class FamilyTag { Generic, Z, Hermite2D, M, ZQ, Wall, MQ };

const char* to_string(FamilyTag t);
FamilyTag parse_family_tag(const std::string& s);  // throws ParameterError

struct FamilyId {
  FamilyTag tag = FamilyTag::Z;
  RadialFamily radial;  // unused for Hermite2D

  static FamilyId generic(const RadialFamily& r) { return {FamilyTag::Generic, r}; }
  static FamilyId z(double beta) { return {FamilyTag::Z, RadialFamily::laguerre(beta)}; }
  static FamilyId hermite() { return {FamilyTag::Hermite2D, RadialFamily::laguerre(0.0)}; }
  static FamilyId m(double beta, double gamma) { return {FamilyTag::M, RadialFamily::shifted_jacobi(beta, gamma)}; }
  static FamilyId zq(double beta, double q, double c = 1.0) {
    return {FamilyTag::ZQ, RadialFamily::q_laguerre(beta, q, c)};
  }
  static FamilyId wall(double beta, double q) { return {FamilyTag::Wall, RadialFamily::wall(beta, q)}; }
  static FamilyId mq(double beta, double gamma, double q) {
    return {FamilyTag::MQ, RadialFamily::little_q_jacobi(beta, gamma, q)};
  }

  double beta() const { return radial.beta; }
  double gamma() const { return radial.gamma; }
  double q() const { return radial.q; }
  bool is_q() const { return tag != FamilyTag::Hermite2D && radial.is_q(); }
  bool has_radial() const { return tag != FamilyTag::Hermite2D; }

  FamilyId with_beta(double b) const {
    FamilyId f = *this;
    f.radial.beta = b;
    return f;
  }
  FamilyId with_gamma(double g) const {
    FamilyId f = *this;
    f.radial.gamma = g;
    return f;
  }
  void validate() const;
  std::string describe() const;  // e.g. "Z(beta=0.7)"
};

// Throws ParameterError on invalid parameters, SingularParameterError if a
// coefficient is not finite.
Poly construct(const FamilyId& fam, int m, int n);
// No parameter-region check; negative indices give the zero polynomial.
// Used for the shifted parameters that appear inside identities.
Poly construct_unchecked(const FamilyId& fam, int m, int n);
// construct(fam, n, m) with z1 and z2 exchanged.
Poly symmetry_conjugate(const FamilyId& fam, int m, int n);

// z1^(-1) phi_n(z1 z2; -1) multiplied through by z1: the m = n-1 extension used
// when an identity steps one index below the diagonal.
Poly diagonal_extension(const FamilyId& fam, int n);

enum class IdentityId {
  GEN_3TRR, GEN_REC2, GEN_DIAG, GEN_UV, GEN_EIGEN_ANGULAR,
  Z_RR1, Z_RR2, Z_DIAG, Z_LADDER1, Z_LADDER2, Z_LADDER3, Z_LADDER4, Z_LADDER5, Z_LADDER6,
  Z_OPREP, Z_SHIFT_UP, Z_PDE, Z_ODE, CONN_Z,
  M_RR1, M_RR2, M_RR3, M_PDE1, M_PDE2, M_LADDER,
  ZQ_RR1, ZQ_RR2, ZQ_DIAG, ZQ_LADDER, ZQ_QDE1, ZQ_QDE2,
  WALL_RR1, WALL_RR2, WALL_DIAG, WALL_QDE1, WALL_QDE2, WALL_LADDER,
  MQ_RR1, MQ_RR2, MQ_QDE1, MQ_QDE2, MQ_LADDER,
};

const char* to_string(IdentityId id);
IdentityId parse_identity(const std::string& s);  // throws ParameterError
const std::vector<IdentityId>& all_identities();
std::vector<IdentityId> identities_for(FamilyTag tag);
bool applies_to(IdentityId id, FamilyTag tag);
// Open questions already recorded against the printed text.
bool listed_discrepancy(IdentityId id);

enum class Verdict { Pass, KnownDiscrepancy, Fail };
const char* to_string(Verdict v);

struct FormResult {
  double residual = 0.0;  // max coefficient of LHS - RHS
  double scale = 0.0;     // max coefficient over every summand of either side
  bool pass = false;
};

struct PartReport {
  std::string label;
  FormResult printed;
  std::optional<FormResult> derived;  // independent derivation where the printed form is suspect
};

struct IdentityReport {
  IdentityId id{};
  std::string family;
  int m = 0, n = 0;
  std::vector<PartReport> parts;
  double max_residual = 0.0;      // printed forms, worst part
  double scale = 0.0;
  double derived_residual = 0.0;  // worst part with derived forms substituted where present
  Verdict verdict = Verdict::Fail;
  bool listed = false;
};

struct CheckOptions {
  double conn_gamma = 0.0;  // second parameter of the connection relation
};

// RangeError if (m,n) is outside the identity's stated range, ParameterError if the
// identity does not belong to the family.
IdentityReport check_identity(const FamilyId& fam, IdentityId id, int m, int n, const Tolerance& tol,
                              const CheckOptions& opt = {});

// Z identities with the polynomials supplied by a callback, so they can be
// evaluated on other families (the q -> 1 limit).
using PolyBuilder = std::function<Poly(int, int)>;
IdentityReport check_z_identity_on(const PolyBuilder& build, double beta, IdentityId id, int m, int n,
                                   const Tolerance& tol);

// Coefficient of z1^a z2^b multiplied by (1-q)^min(a,b), i.e. x -> (1-q) x.
Poly scale_q_to_one(const Poly& p, double q);

// exp(-d1 d2) applied to z1^(beta+m) z2^n, times (-1)^n z1^(-beta)/n!.
Poly operational_Z(int m, int n, double beta);

struct ConnectionResult {
  std::vector<double> printed;    // (beta-gamma)_j (-1)^j / j!
  std::vector<double> corrected;  // (beta-gamma)_j / j!
  double printed_residual = 0.0;
  double corrected_residual = 0.0;
  double scale = 0.0;
  // the two Hermite special cases, printed and corrected
  double hermite_to_residual = 0.0, hermite_to_corrected = 0.0;
  double hermite_from_residual = 0.0, hermite_from_corrected = 0.0;
};
ConnectionResult connection_Z(int m, int n, double beta, double gamma);

Poly hermite2d(int m, int n);

enum class GenFun { Z_EXP, Z_PLAIN, M_EXP, M_PLAIN, M_DOUBLE };
const char* to_string(GenFun g);
GenFun parse_genfun(const std::string& s);

struct GenFunPoint {
  cplx u, v, z1, z2;
  int N = 30;
};

struct GenFunResult {
  cplx truncated;
  cplx closed_printed;
  cplx closed_corrected;  // equals closed_printed where no correction applies
  double residual_printed = 0.0;
  double residual_corrected = 0.0;
  double tail = 0.0;  // magnitude of the last included shell
};

// DegeneratePointError if |1 - uv + rho| < 1e-8.
GenFunResult genfun_check(const FamilyId& fam, GenFun which, const GenFunPoint& pt);

struct ConvolutionPoint {
  cplx z1, z2, z3, z4;
};
struct ConvolutionResult {
  double residual_printed = 0.0;    // against Z^(beta+gamma+1)_{m,n}(z1+z3, z2+z4)
  double residual_corrected = 0.0;  // against (z1+z3)^(m-n) L_n^(beta+gamma+1+m-n)(z1z2+z3z4)/(m-n)!
};
ConvolutionResult convolution_Z_check(int m, int n, double beta, double gamma,
                                      const std::vector<ConvolutionPoint>& pts);

// Power-series solutions of z1 d1 d2 f + (beta - z1 z2) d2 f + n z1 f = 0.
struct SeriesBoundary {
  std::vector<std::pair<int, double>> row;     // a_{j,0}
  std::vector<std::pair<int, double>> column;  // a_{0,k}, k >= 1
};
Poly pde_series_solution(double beta, int n, const SeriesBoundary& boundary, int cutoff);
// z1 d1 d2 f + (beta - z1 z2) d2 f + n z1 f.
Poly series_operator(const Poly& f, double beta, int n);
// n! z1^p L_n^(beta+p)(z1 z2) / (beta+p+1)_n
Poly series_closed_row(double beta, int n, int p);
// z2^r F(-n+r, 1; r+1, beta+1; z1 z2)
Poly series_closed_column(double beta, int n, int r);

}  // namespace bivop
