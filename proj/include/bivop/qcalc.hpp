#pragma once

// Pochhammer and q-Pochhammer symbols, q-numbers, terminating hypergeometric sums.

#include <cmath>
#include <complex>
#include <optional>
#include <type_traits>
#include <vector>

#include "bivop/errors.hpp"
#include "bivop/polycore.hpp"

namespace bivop {

struct QParams {
  double q = 0.5;
  double truncation_eps = 1e-17;

  void validate() const {
    require_q(q);
    if (!(truncation_eps > 0.0)) throw ParameterError("truncation_eps must be positive");
  }
};

// q^alpha as exp(alpha log q); q > 0 is required.
inline double qpow(double q, double alpha) {
  if (!(q > 0.0)) throw ParameterError("q^alpha needs q > 0");
  return std::exp(alpha * std::log(q));
}

inline double qnumber(double alpha, double q) {
  require_q(q);
  return -std::expm1(alpha * std::log(q)) / (1.0 - q);
}

// (a)_n. Real a > 0 with n > 20 goes through lgamma.
template <class T>
T pochhammer(T a, int n) {
  if (n < 0) throw ParameterError("pochhammer needs n >= 0");
  if constexpr (std::is_floating_point_v<T>) {
    if (n > 20 && a > 0) return std::exp(std::lgamma(a + n) - std::lgamma(a));
  }
  T r(1);
  for (int i = 0; i < n; ++i) r *= a + T(i);
  return r;
}

inline double factorial(int n) { return pochhammer(1.0, n); }

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <class T>
T qpochhammer(T a, double q, int n) {
  require_q(q);
  if (n < 0) throw ParameterError("qpochhammer needs n >= 0");
  T r(1);
  double qk = 1.0;
  for (int k = 0; k < n; ++k, qk *= q) r *= T(1) - a * qk;
  return r;
}

template <class T>
struct InfiniteProduct {
  T value;
  int factors = 0;
  double tail_bound = 0.0;  // relative error bound of the truncated product
};

// (a;q)_inf. Stops once |a q^K| < eps and exp(|a| q^K/(1-q)) - 1 < 1e-13.
template <class T>
InfiniteProduct<T> qpochhammer_inf_detail(T a, const QParams& qp) {
  qp.validate();
  const double q = qp.q;
  InfiniteProduct<T> out{T(1), 0, 0.0};
  const double amag = std::abs(a);
  if (amag == 0.0) return out;
  double qk = 1.0;
  for (int k = 0;; ++k, qk *= q) {
    const double tmag = amag * qk;
    if (tmag < qp.truncation_eps) {
      const double bound = std::expm1(tmag / (1.0 - q));
      if (bound < 1e-13) {
        out.factors = k;
        out.tail_bound = bound;
        return out;
      }
    }
    out.value *= T(1) - a * qk;
  }
}

template <class T>
T qpochhammer_inf(T a, double q, double eps = 1e-17) {
  return qpochhammer_inf_detail(a, QParams{q, eps}).value;
}

inline double qbinomial(int n, int k, double q) {
  if (k < 0 || k > n) return 0.0;
  return qpochhammer(q, q, n) / (qpochhammer(q, q, k) * qpochhammer(q, q, n - k));
}

// F21: classical sum over k of prod (a_i)_k / prod (b_i)_k z^k/k!, with the parameter
//      lists as printed (the solver's series carries two lower parameters).
// Phi43: basic sum over k of prod (a_i;q)_k / prod (b_i;q)_k z^k/(q;q)_k.
enum class HyperKind { F21, Phi43 };

// Terms of the terminating sum, in summation order. The first numerator parameter
// must be -n (classical) or q^-n (basic).
std::vector<cplx> hyper_terms(HyperKind kind, const std::vector<cplx>& num, const std::vector<cplx>& den,
                              cplx z, std::optional<double> q = std::nullopt);

cplx hyper_terminating(HyperKind kind, const std::vector<cplx>& num, const std::vector<cplx>& den, cplx z,
                       std::optional<double> q = std::nullopt);

}  // namespace bivop
