#pragma once

// Askey-Wilson polynomials, their weight, and the tensor biorthogonal systems
// built from parameter-coupled products.

#include <complex>

#include "bivop/quad.hpp"

namespace bivop {

struct AWParams {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double q = 0.5;
  void validate() const;  // |a|,|b|,|c|,|d| < 1 and q in (0,1)
};

// Bare: the terminating 4phi3 as displayed.
// Standard: a^-n (ab,ac,ad;q)_n times the 4phi3, the normalization the norm
// formula belongs to.
enum class AWNorm { Bare, Standard };
const char* to_string(AWNorm n);

// a^-n (ab,ac,ad;q)_n; ParameterError when a = 0 and n > 0.
double aw_standard_factor(const AWParams& p, int n);

double aw_eval(const AWParams& p, int n, double x, AWNorm norm = AWNorm::Bare);
double aw_eval_theta(const AWParams& p, int n, double theta, AWNorm norm = AWNorm::Bare);

// h(x,a) = prod (1 - 2 a x q^k + a^2 q^2k) = |(a e^{i theta};q)_inf|^2
double aw_h(double x, double a, double q);

// Full weight including 1/sqrt(1-x^2); DomainError for |x| >= 1.
double aw_weight(const AWParams& p, double x);
// h(x,1)h(x,sqrt q)h(x,-1)h(x,-sqrt q) / (h(x,a)h(x,b)h(x,c)h(x,d)) at x = cos theta.
double aw_theta_weight(const AWParams& p, double theta);

// The printed norm 2pi (abcdq^2n)_inf (abcdq^(n-1))_n / ((q^(n+1))_inf (abq^n,...,cdq^n)_inf).
double aw_norm(const AWParams& p, int n);
// Norm of the polynomial in the given normalization (printed / factor^2 for Bare).
double aw_norm_for(const AWParams& p, int n, AWNorm norm);

// Gauss-Legendre rule on (0, pi).
QuadratureRule theta_rule(int nodes);

// Indices (n, 0), n <= degree_cap. reference = printed norm, reference_corrected =
// norm in the chosen normalization.
GramResult aw_gram_1d(const AWParams& p, int degree_cap, int theta_nodes = 256, AWNorm norm = AWNorm::Bare);

struct TensorParams {
  AWParams first;   // a1, b1, c1, d1 and the common q
  AWParams second;  // a2, b2, c2, d2
  double alpha = 1.0, beta = 0.0, gamma = 1.0, delta = 0.0;
  void validate(int index_cap) const;
};

// UV: u_{j,k} against v_{m,n}; PQ: p_{j,k} against q_{m,n}; SELF: p_{j,k} against
// conj p_{m,n} with the 1/(d' e^{i theta};q)_inf factor.
enum class TensorSystem { UV, PQ, SELF };
const char* to_string(TensorSystem s);

// Indices (j,k), j,k <= index_cap. reference = printed closed form, reference_corrected =
// product of the two one-variable norms at the shifted parameters, in the chosen normalization.
GramResult tensor_biortho_check(const TensorParams& tp, TensorSystem system, int index_cap, int theta_nodes = 256,
                                AWNorm norm = AWNorm::Bare);

}  // namespace bivop
