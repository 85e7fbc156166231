#pragma once

// Sparse bivariate polynomials sum c[j,k] z1^j z2^k and the operators the
// identity checks are written in.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "bivop/errors.hpp"

namespace bivop {

using cplx = std::complex<double>;

struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-9;

  void validate() const {
    if (!(abs >= 0.0) || !(rel >= 0.0)) throw ParameterError("tolerance components must be nonnegative");
  }
  bool accepts(double residual, double scale) const {
    return std::abs(residual) <= abs + rel * std::abs(scale);
  }
};

enum class Var { z1, z2 };
enum class Flavor { partial, theta, qpartial, qtheta };

template <class Scalar = cplx>
class BivariatePoly {
 public:
  using scalar_type = Scalar;
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, Scalar>;

  BivariatePoly() = default;
  explicit BivariatePoly(Scalar c) { add(0, 0, c); }

  static BivariatePoly monomial(int j, int k, Scalar c = Scalar(1)) {
    BivariatePoly p;
    p.add(j, k, c);
    return p;
  }

  // Accumulates c into the (j,k) slot; a slot that becomes exactly 0 is dropped.
  void add(int j, int k, Scalar c) {
    if (j < 0 || k < 0) throw ParameterError("negative monomial degree");
    if (c == Scalar(0)) return;
    auto [it, fresh] = terms_.try_emplace(Key{j, k}, c);
    if (!fresh) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  Scalar coeff(int j, int k) const {
    auto it = terms_.find(Key{j, k});
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  const Terms& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int degree(Var v) const {
    int d = -1;
    for (const auto& [key, c] : terms_) d = std::max(d, v == Var::z1 ? key.first : key.second);
    return d;
  }
  int total_degree() const {
    int d = -1;
    for (const auto& [key, c] : terms_) d = std::max(d, key.first + key.second);
    return d;
  }

  BivariatePoly& operator+=(const BivariatePoly& o) {
    for (const auto& [key, c] : o.terms_) add(key.first, key.second, c);
    return *this;
  }
  BivariatePoly& operator-=(const BivariatePoly& o) {
    for (const auto& [key, c] : o.terms_) add(key.first, key.second, -c);
    return *this;
  }
  BivariatePoly& operator*=(Scalar s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      it = it->second == Scalar(0) ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend bool operator==(const BivariatePoly& a, const BivariatePoly& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

using Poly = BivariatePoly<cplx>;

template <class S>
BivariatePoly<S> operator+(BivariatePoly<S> a, const BivariatePoly<S>& b) { return a += b; }
template <class S>
BivariatePoly<S> operator-(BivariatePoly<S> a, const BivariatePoly<S>& b) { return a -= b; }
template <class S>
BivariatePoly<S> operator-(BivariatePoly<S> a) { return a *= S(-1); }
template <class S>
BivariatePoly<S> operator*(BivariatePoly<S> a, typename BivariatePoly<S>::scalar_type s) { return a *= s; }
template <class S>
BivariatePoly<S> operator*(typename BivariatePoly<S>::scalar_type s, BivariatePoly<S> a) { return a *= s; }

template <class S>
BivariatePoly<S> operator*(const BivariatePoly<S>& a, const BivariatePoly<S>& b) {
  BivariatePoly<S> r;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return r;
}

// [n]_q for integer n >= 0, summed geometrically so it stays accurate as q -> 1.
inline double qint(int n, double q) {
  double s = 0.0, p = 1.0;
  for (int i = 0; i < n; ++i, p *= q) s += p;
  return s;
}

inline void require_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw ParameterError("q must lie in (0,1)");
}

template <class S>
BivariatePoly<S> diff(const BivariatePoly<S>& p, Var v, Flavor f, double q = 0.5) {
  if (f == Flavor::qpartial || f == Flavor::qtheta) require_q(q);
  BivariatePoly<S> r;
  for (const auto& [key, c] : p) {
    auto [j, k] = key;
    const int e = v == Var::z1 ? j : k;
    if (e == 0) continue;
    double factor = 0.0;
    bool lower = false;
    switch (f) {
      case Flavor::partial: factor = e; lower = true; break;
      case Flavor::theta: factor = e; break;
      case Flavor::qpartial: factor = qint(e, q); lower = true; break;
      case Flavor::qtheta: factor = qint(e, q); break;
    }
    if (lower) (v == Var::z1 ? j : k) -= 1;
    r.add(j, k, c * S(factor));
  }
  return r;
}

// Substitution z_v -> lambda z_v.
template <class S>
BivariatePoly<S> dilate(const BivariatePoly<S>& p, Var v, S lambda) {
  BivariatePoly<S> r;
  for (const auto& [key, c] : p) {
    const int e = v == Var::z1 ? key.first : key.second;
    S f(1);
    for (int i = 0; i < e; ++i) f *= lambda;
    r.add(key.first, key.second, c * f);
  }
  return r;
}

// Multiplication by z1^dj z2^dk.
template <class S>
BivariatePoly<S> shift(const BivariatePoly<S>& p, int dj, int dk) {
  BivariatePoly<S> r;
  for (const auto& [key, c] : p) r.add(key.first + dj, key.second + dk, c);
  return r;
}

template <class S>
BivariatePoly<S> swap_vars(const BivariatePoly<S>& p) {
  BivariatePoly<S> r;
  for (const auto& [key, c] : p) r.add(key.second, key.first, c);
  return r;
}

// Summation in ascending (j,k) order, so repeated runs agree bit for bit.
template <class S>
S eval(const BivariatePoly<S>& p, S z1, S z2) {
  const int d1 = std::max(p.degree(Var::z1), 0), d2 = std::max(p.degree(Var::z2), 0);
  std::vector<S> p1(d1 + 1, S(1)), p2(d2 + 1, S(1));
  for (int i = 1; i <= d1; ++i) p1[i] = p1[i - 1] * z1;
  for (int i = 1; i <= d2; ++i) p2[i] = p2[i - 1] * z2;
  S s(0);
  for (const auto& [key, c] : p) s += c * p1[key.first] * p2[key.second];
  return s;
}

template <class S>
double max_abs(const BivariatePoly<S>& p) {
  double m = 0.0;
  for (const auto& [key, c] : p) {
    const double a = static_cast<double>(std::abs(c));
    if (std::isnan(a)) return a;
    m = std::max(m, a);
  }
  return m;
}

template <class S>
double residual(const BivariatePoly<S>& a, const BivariatePoly<S>& b) {
  return max_abs(a - b);
}

}  // namespace bivop
