#include "bivop/radial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bivop/qcalc.hpp"
#include "bivop/tridiag.hpp"

namespace bivop {

namespace {

// 1 - q^x without cancellation for small x log q.
double one_minus_qpow(double q, double x) { return -std::expm1(x * std::log(q)); }

double sign_pow(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

Eigen::VectorXd compute_coeffs(const RadialFamily& f, int n, double alpha) {
  const double A = f.effective(alpha);
  const double q = f.q;
  Eigen::VectorXd c(n + 1);
  switch (f.kind) {
    case RadialKind::Laguerre:
      c(0) = sign_pow(n) / factorial(n);
      for (int k = 0; k < n; ++k) c(k + 1) = c(k) * (-(n - k) * (A + n - k) / (k + 1.0));
      break;
    case RadialKind::ShiftedJacobi: {
      const double B = f.beta;
      c(0) = sign_pow(n) * pochhammer(A + B + n + 1.0, n) / factorial(n);
      for (int k = 0; k < n; ++k)
        c(k + 1) = c(k) * (-(n - k) * (A + n - k) / ((k + 1.0) * (A + B + 2.0 * n - k)));
      break;
    }
    case RadialKind::QLaguerre:
      c(0) = sign_pow(n) * qpow(q, (A + n) * n) / qpochhammer(q, q, n);
      for (int k = 0; k < n; ++k)
        c(k + 1) = c(k) * (-qpow(q, 1.0 - A - 2.0 * (n - k)) * one_minus_qpow(q, n - k) *
                           one_minus_qpow(q, A + n - k) / one_minus_qpow(q, k + 1));
      break;
    case RadialKind::Wall:
      c(0) = sign_pow(n) * qpow(q, -0.5 * n * (n - 1)) / qpochhammer(qpow(q, A + 1.0), q, n);
      for (int k = 0; k < n; ++k)
        c(k + 1) = c(k) * (-qpow(q, k) * one_minus_qpow(q, n - k) * one_minus_qpow(q, A + n - k) /
                           one_minus_qpow(q, k + 1));
      break;
    case RadialKind::LittleQJacobi: {
      const double G = f.gamma;
      c(0) = sign_pow(n) * qpow(q, -0.5 * n * (n - 1)) * qpochhammer(qpow(q, A + G + n + 1.0), q, n) /
             qpochhammer(qpow(q, A + 1.0), q, n);
      for (int k = 0; k < n; ++k)
        c(k + 1) = c(k) * (-qpow(q, k) * one_minus_qpow(q, n - k) * one_minus_qpow(q, A + n - k) /
                           (one_minus_qpow(q, k + 1) * one_minus_qpow(q, A + G + 2.0 * n - k)));
      break;
    }
  }
  return c;
}

}  // namespace

const char* to_string(RadialKind k) {
  switch (k) {
    case RadialKind::Laguerre: return "Laguerre";
    case RadialKind::ShiftedJacobi: return "ShiftedJacobi";
    case RadialKind::QLaguerre: return "QLaguerre";
    case RadialKind::Wall: return "Wall";
    case RadialKind::LittleQJacobi: return "LittleQJacobi";
  }
  return "?";
}

void RadialFamily::validate() const {
  if (!(beta > -1.0)) throw ParameterError("beta must exceed -1");
  if (has_gamma() && !(gamma > -1.0)) throw ParameterError("gamma must exceed -1");
  if (is_q()) require_q(q);
  if (kind == RadialKind::QLaguerre && !(c > 0.0)) throw ParameterError("lattice scale c must be positive");
}

void RadialFamily::validate_alpha(double alpha) const {
  validate();
  if (!(effective(alpha) > -1.0)) throw ParameterError("alpha + offset must exceed -1");
}

double RadialCoeffs::eval(double x) const {
  double s = 0.0;
  for (int j = 0; j <= n; ++j) s = s * x + c(j);
  return s;
}

RadialCoeffs radial_coeffs_unchecked(const RadialFamily& fam, int n, double alpha) {
  if (n < 0) throw ParameterError("degree must be nonnegative");
  return {n, alpha, compute_coeffs(fam, n, alpha)};
}

RadialCoeffs radial_coeffs(const RadialFamily& fam, int n, double alpha) {
  fam.validate_alpha(alpha);
  return radial_coeffs_unchecked(fam, n, alpha);
}

double radial_norm(const RadialFamily& fam, int n, double alpha) {
  fam.validate_alpha(alpha);
  if (n < 0) throw ParameterError("degree must be nonnegative");
  const double A = fam.effective(alpha);
  const double q = fam.q;
  switch (fam.kind) {
    case RadialKind::Laguerre:
      return std::exp(std::lgamma(A + n + 1.0) - std::lgamma(n + 1.0));
    case RadialKind::ShiftedJacobi: {
      const double B = fam.beta;
      return std::exp(std::lgamma(A + n + 1.0) + std::lgamma(B + n + 1.0) - std::lgamma(n + 1.0) -
                      std::lgamma(A + B + n + 1.0)) /
             (A + B + 2.0 * n + 1.0);
    }
    case RadialKind::QLaguerre: {
      const double c = fam.c;
      const double head = qpochhammer_inf(q, q) * qpochhammer_inf(-c * qpow(q, A + 1.0), q) *
                          qpochhammer_inf(-qpow(q, -A) / c, q) /
                          (qpochhammer_inf(qpow(q, A + 1.0), q) * qpochhammer_inf(-c, q) *
                           qpochhammer_inf(-q / c, q) * std::pow(c, -A - 1.0));
      return head * qpochhammer(qpow(q, A + 1.0), q, n) / (qpochhammer(q, q, n) * qpow(q, n));
    }
    case RadialKind::Wall:
      return qpochhammer_inf(q, q) * qpow(q, (A + 1.0) * n) * qpochhammer(q, q, n) /
             (qpochhammer_inf(qpow(q, A + 1.0), q) * qpochhammer(qpow(q, A + 1.0), q, n));
    case RadialKind::LittleQJacobi: {
      const double G = fam.gamma;
      return qpochhammer_inf(q, q) * qpochhammer_inf(qpow(q, A + G + n + 1.0), q) * qpochhammer(q, q, n) *
             qpow(q, n * (A + 1.0)) /
             (qpochhammer_inf(qpow(q, A + 1.0), q) * qpochhammer_inf(qpow(q, G + n + 1.0), q) *
              qpochhammer(qpow(q, A + 1.0), q, n) * one_minus_qpow(q, A + G + 2.0 * n + 1.0));
    }
  }
  return 0.0;
}

double shift_a(const RadialFamily& fam, int n, double alpha) {
  return radial_coeffs_unchecked(fam, n, alpha)(0) / radial_coeffs_unchecked(fam, n, alpha + 1.0)(0);
}

double shift_b(const RadialFamily& fam, int n, double alpha) {
  if (n == 0) return 0.0;
  const auto lo = radial_coeffs_unchecked(fam, n, alpha);
  const auto hi = radial_coeffs_unchecked(fam, n, alpha + 1.0);
  const auto hi1 = radial_coeffs_unchecked(fam, n - 1, alpha + 1.0);
  return (hi(0) * lo(1) - lo(0) * hi(1)) / (hi1(0) * hi(0));
}

RecurrenceCoeffs recurrence_coeffs(const RadialFamily& fam, int n, double alpha) {
  fam.validate_alpha(alpha);
  if (n < 0) throw ParameterError("degree must be nonnegative");
  const auto cn = radial_coeffs_unchecked(fam, n, alpha);
  const auto cu = radial_coeffs_unchecked(fam, n + 1, alpha);
  const RadialCoeffs cd = n > 0 ? radial_coeffs_unchecked(fam, n - 1, alpha) : RadialCoeffs{-1, alpha, {}};
  auto d = [&](int j) { return n > 0 ? cd(j) : 0.0; };
  if (cn(0) == 0.0 || cu(0) == 0.0) throw NumericalValidityError("vanishing leading coefficient");

  RecurrenceCoeffs r;
  r.n = n;
  r.alpha = alpha;
  r.a_printed = cn(0) / cu(0);
  r.c_printed = cn(1) / cn(0) - cu(1) / cu(0);
  if (n > 0)
    r.b_printed = (cn(0) * cn(2) - cn(1) * cn(1)) / (d(0) * cn(0)) -
                  (cn(0) * cu(2) - cn(1) * cu(1)) / (d(0) * cu(0));

  r.a = cn(0) / cu(0);
  r.c = (cn(1) - r.a * cu(1)) / cn(0);
  r.b = n > 0 ? (cn(2) - r.a * cu(2) - r.c * cn(1)) / d(0) : 0.0;

  double scale = 0.0;
  for (int i = 0; i <= n + 1; ++i) {
    const double res = cn(i) - r.a * cu(i) - r.c * cn(i - 1) - r.b * d(i - 2);
    r.expansion_residual = std::max(r.expansion_residual, std::abs(res));
    scale = std::max({scale, std::abs(cn(i)), std::abs(r.a * cu(i))});
  }
  if (scale > 0) r.expansion_residual /= scale;

  auto differs = [](double x, double y) { return std::abs(x - y) > 1e-9 * std::max(std::abs(y), 1e-300); };
  r.mismatch = differs(r.a_printed, r.a) || differs(r.c_printed, r.c) || (n > 0 && differs(r.b_printed, r.b));

  r.v = shift_a(fam, n, alpha);
  r.u = shift_b(fam, n, alpha);
  return r;
}

AlphaShiftData alpha_shift(const RadialFamily& fam, int n, double alpha) {
  fam.validate_alpha(alpha);
  if (n < 0) throw ParameterError("degree must be nonnegative");
  auto C = [&](int k, double a) { return radial_coeffs_unchecked(fam, k, a); };
  auto A = [&](int k, double a) { return shift_a(fam, k, a); };
  auto B = [&](int k, double a) { return shift_b(fam, k, a); };
  auto zeta = [&](int k, double a) { return radial_norm(fam, k, a); };
  const double al = alpha;

  AlphaShiftData s;
  s.n = n;
  s.alpha = al;
  s.a_shift = A(n, al);
  s.b_shift = B(n, al);

  // Coefficient vectors indexed by power of x.
  auto powers = [&](int k, double a) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n + 2);
    const auto c = C(k, a);
    for (int j = 0; j <= k; ++j) v(k - j) = c(j);
    return v;
  };
  auto rel = [](const Eigen::VectorXd& r, double scale) { return r.cwiseAbs().maxCoeff() / std::max(scale, 1e-300); };

  {
    Eigen::VectorXd r = powers(n, al) - s.a_shift * powers(n, al + 1.0);
    if (n > 0) r -= s.b_shift * powers(n - 1, al + 1.0);
    s.identity_residual = rel(r, powers(n, al).cwiseAbs().maxCoeff());
  }

  auto lambda = [&](int j, int k) {
    if (j == k) return 1.0 / A(k, al);
    double p = 1.0;
    for (int i = 0; i < k - j; ++i) p *= B(k - i, al) / A(k - i, al);
    return ((k - j) % 2 == 0 ? 1.0 : -1.0) / A(j, al) * p;
  };
  s.lambda.resize(n + 1);
  {
    Eigen::VectorXd r = powers(n, al + 1.0);
    for (int j = 0; j <= n; ++j) {
      s.lambda(j) = lambda(j, n);
      r -= s.lambda(j) * powers(j, al);
    }
    s.lambda_residual = rel(r, powers(n, al + 1.0).cwiseAbs().maxCoeff());
  }

  s.d = C(n, al + 1.0)(n) / C(n, al)(n);
  s.f.resize(n);
  s.f_printed.resize(n);
  for (int k = 0; k < n; ++k) {
    double fk = 0.0, fp = 0.0;
    for (int j = 0; j <= k; ++j) {
      fk += lambda(j, n) * lambda(j, k) * zeta(j, al);
      fp += lambda(j, n) * lambda(j, k) * zeta(j, al + 1.0);
    }
    s.f(k) = fk / zeta(k, al + 1.0);
    s.f_printed(k) = fp / zeta(k, al + 1.0);
  }
  auto f_check = [&](const Eigen::VectorXd& f) {
    Eigen::VectorXd r = powers(n, al + 1.0) - s.d * powers(n, al);
    for (int k = 0; k < n; ++k) {
      const Eigen::VectorXd p = powers(k, al + 1.0);
      r.segment(1, n + 1) -= f(k) * p.head(n + 1);
    }
    return rel(r, powers(n, al + 1.0).cwiseAbs().maxCoeff());
  };
  s.f_residual = f_check(s.f);
  s.f_printed_residual = f_check(s.f_printed);

  s.g.resize(n);
  {
    const double cn_n = C(n, al)(n);
    Eigen::VectorXd r = powers(n, al);
    r(0) -= cn_n;
    for (int k = 0; k < n; ++k) {
      double p = 1.0;
      for (int j = 0; j < k; ++j) p *= B(k - j, al) / A(k - j, al);
      s.g(k) = (k % 2 == 0 ? 1.0 : -1.0) * zeta(0, al) * C(0, al + 1.0)(0) * cn_n / zeta(k, al + 1.0) * p;
      const Eigen::VectorXd pk = powers(k, al + 1.0);
      r.segment(1, n + 1) += s.g(k) * pk.head(n + 1);
    }
    s.g_residual = rel(r, powers(n, al).cwiseAbs().maxCoeff());
  }

  s.zeta_ratio = zeta(n, al) / zeta(0, al + n);
  s.zeta_ratio_product = 1.0;
  s.zeta_ratio_printed = 1.0;
  for (int j = 0; j < n; ++j) {
    const double common = B(n - j, al + j) * C(n - j, al + j)(0) / C(n - j - 1, al + j)(0);
    s.zeta_ratio_product *= common * A(n - j - 1, al + j);
    s.zeta_ratio_printed *= common / A(n - j - 1, al + j);
  }
  return s;
}

JacobiMatrix jacobi_matrix(const RadialFamily& fam, double alpha, int size) {
  if (size < 1) throw ParameterError("Jacobi matrix size must be positive");
  JacobiMatrix J;
  J.diag.resize(size);
  J.offdiag.resize(size - 1);
  J.leading.resize(size);
  double a_prev = 0.0;
  for (int k = 0; k < size; ++k) {
    const auto rc = recurrence_coeffs(fam, k, alpha);
    J.diag(k) = rc.c;
    J.leading(k) = radial_coeffs_unchecked(fam, k, alpha)(0);
    if (k > 0) {
      const double prod = a_prev * rc.b;
      if (!(prod > 0.0))
        throw NumericalValidityError("non-positive recurrence product at degree " + std::to_string(k));
      J.offdiag(k - 1) = std::sqrt(prod);
    }
    a_prev = rc.a;
  }
  J.mass = radial_norm(fam, 0, alpha) / (J.leading(0) * J.leading(0));
  return J;
}

Eigen::VectorXd radial_zeros(const RadialFamily& fam, int n, double alpha) {
  if (n < 1) throw ParameterError("zeros need degree >= 1");
  const auto J = jacobi_matrix(fam, alpha, n);
  return symmetric_tridiagonal_ql(J.diag, J.offdiag).values;
}

}  // namespace bivop
