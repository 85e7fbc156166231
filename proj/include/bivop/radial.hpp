#pragma once

// One-variable engines phi_n(r; alpha) = sum_j c_j(n, alpha) r^(n-j).
// Every operation takes the construction parameter alpha; the family offset
// (beta for Laguerre and the q-kinds, gamma for ShiftedJacobi) is added inside.

#include <Eigen/Core>

#include "bivop/errors.hpp"

namespace bivop {

enum class RadialKind { Laguerre, ShiftedJacobi, QLaguerre, Wall, LittleQJacobi };

const char* to_string(RadialKind k);

struct RadialFamily {
  RadialKind kind = RadialKind::Laguerre;
  double beta = 0.0;
  double gamma = 0.0;
  double q = 0.5;
  double c = 1.0;  // lattice scale of the bilateral q-Laguerre measure

  bool is_q() const {
    return kind == RadialKind::QLaguerre || kind == RadialKind::Wall || kind == RadialKind::LittleQJacobi;
  }
  bool has_gamma() const { return kind == RadialKind::ShiftedJacobi || kind == RadialKind::LittleQJacobi; }
  // alpha + offset: the exponent carried by the radial weight.
  double effective(double alpha) const { return alpha + (kind == RadialKind::ShiftedJacobi ? gamma : beta); }
  void validate() const;
  // Throws ParameterError unless the weight x^effective(alpha) is integrable.
  void validate_alpha(double alpha) const;

  static RadialFamily laguerre(double beta) { return {RadialKind::Laguerre, beta}; }
  static RadialFamily shifted_jacobi(double beta, double gamma) { return {RadialKind::ShiftedJacobi, beta, gamma}; }
  static RadialFamily q_laguerre(double beta, double q, double c = 1.0) {
    return {RadialKind::QLaguerre, beta, 0.0, q, c};
  }
  static RadialFamily wall(double beta, double q) { return {RadialKind::Wall, beta, 0.0, q}; }
  static RadialFamily little_q_jacobi(double beta, double gamma, double q) {
    return {RadialKind::LittleQJacobi, beta, gamma, q};
  }
};

struct RadialCoeffs {
  int n = 0;
  double alpha = 0.0;
  Eigen::VectorXd c;  // c(j) multiplies r^(n-j)

  double operator()(int j) const { return j < 0 || j > n ? 0.0 : c(j); }
  double eval(double x) const;
};

RadialCoeffs radial_coeffs(const RadialFamily& fam, int n, double alpha);
// Same coefficients without the parameter-region check; used where an identity
// shifts parameters outside the orthogonality region (the polynomials stay defined).
RadialCoeffs radial_coeffs_unchecked(const RadialFamily& fam, int n, double alpha);

double radial_norm(const RadialFamily& fam, int n, double alpha);

struct RecurrenceCoeffs {
  int n = 0;
  double alpha = 0.0;
  // r phi_n = a phi_{n+1} + c phi_n + b phi_{n-1}
  double a = 0.0, b = 0.0, c = 0.0;
  double a_printed = 0.0, b_printed = 0.0, c_printed = 0.0;
  double expansion_residual = 0.0;
  bool mismatch = false;
  // z1 f_{m,n} = v f_{m+1,n} + u f_{m,n-1} with alpha = m - n
  double u = 0.0, v = 0.0;
};

RecurrenceCoeffs recurrence_coeffs(const RadialFamily& fam, int n, double alpha);

// Shift coefficients phi_n(x;alpha) = a phi_n(x;alpha+1) + b phi_{n-1}(x;alpha+1).
double shift_a(const RadialFamily& fam, int n, double alpha);
double shift_b(const RadialFamily& fam, int n, double alpha);

struct AlphaShiftData {
  int n = 0;
  double alpha = 0.0;
  double a_shift = 0.0, b_shift = 0.0;
  double identity_residual = 0.0;  // phi_n(a) - a phi_n(a+1) - b phi_{n-1}(a+1)
  Eigen::VectorXd lambda;          // phi_n(x;alpha+1) = sum_j lambda_j phi_j(x;alpha)
  double lambda_residual = 0.0;
  double d = 0.0;                  // c_n(n,alpha+1)/c_n(n,alpha)
  Eigen::VectorXd f;               // phi_n(a+1) - d phi_n(a) = x sum_k f_k phi_k(a+1)
  Eigen::VectorXd f_printed;       // same with zeta_j(alpha+1) in the numerator
  double f_residual = 0.0, f_printed_residual = 0.0;
  Eigen::VectorXd g;               // phi_n(a) - c_n(n,a) = -x sum_k g_k phi_k(a+1)
  double g_residual = 0.0;
  double zeta_ratio = 0.0;          // zeta_n(alpha)/zeta_0(alpha+n), direct
  double zeta_ratio_product = 0.0;  // telescoped with a_{n-j-1} in the numerator
  double zeta_ratio_printed = 0.0;  // telescoped with a_{n-j-1} in the denominator
};

AlphaShiftData alpha_shift(const RadialFamily& fam, int n, double alpha);

// Monic Jacobi matrix of degrees 0..size-1 together with the stored conversion data.
struct JacobiMatrix {
  Eigen::VectorXd diag;
  Eigen::VectorXd offdiag;
  Eigen::VectorXd leading;  // c_0(k, alpha), monic phi_k = phi_k / leading(k)
  double mass = 0.0;        // zeta_0(alpha) / c_0(0,alpha)^2
};

JacobiMatrix jacobi_matrix(const RadialFamily& fam, double alpha, int size);

Eigen::VectorXd radial_zeros(const RadialFamily& fam, int n, double alpha);

}  // namespace bivop
