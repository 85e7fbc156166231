#include "bivop/qcalc.hpp"

#include <cmath>

namespace bivop {

namespace {

int termination_degree(HyperKind kind, cplx a0, std::optional<double> q) {
  if (std::abs(a0.imag()) > 1e-12) throw ParameterError("non-terminating series: complex first parameter");
  const double x = a0.real();
  double n = 0.0;
  if (kind == HyperKind::F21) {
    n = -x;
  } else {
    if (!(x > 0.0)) throw ParameterError("non-terminating series: first parameter is not q^-n");
    n = -std::log(x) / std::log(*q);
  }
  const double r = std::round(n);
  if (r < 0 || std::abs(n - r) > 1e-9 * std::max(1.0, r)) throw ParameterError("non-terminating series");
  return static_cast<int>(r);
}

}  // namespace

std::vector<cplx> hyper_terms(HyperKind kind, const std::vector<cplx>& num, const std::vector<cplx>& den,
                              cplx z, std::optional<double> q) {
  if (num.empty()) throw ParameterError("hypergeometric sum needs a numerator parameter");
  if (kind == HyperKind::Phi43) {
    if (!q) throw ParameterError("basic series needs q");
    require_q(*q);
    if (num.size() != 4 || den.size() != 3) throw ParameterError("4phi3 takes 4 upper and 3 lower parameters");
  }
  const int n = termination_degree(kind, num[0], q);
  std::vector<cplx> terms;
  terms.reserve(n + 1);
  cplx t(1.0);
  terms.push_back(t);
  double qk = 1.0;
  for (int k = 0; k < n; ++k) {
    cplx ratio = z;
    if (kind == HyperKind::F21) {
      for (const auto& a : num) ratio *= a + double(k);
      for (const auto& b : den) {
        const cplx d = b + double(k);
        if (d == 0.0) throw ParameterError("lower parameter hits a nonpositive integer before termination");
        ratio /= d;
      }
      ratio /= double(k + 1);
    } else {
      for (const auto& a : num) ratio *= 1.0 - a * qk;
      for (const auto& b : den) {
        const cplx d = 1.0 - b * qk;
        if (d == 0.0) throw ParameterError("lower parameter hits q^-k before termination");
        ratio /= d;
      }
      ratio /= 1.0 - qk * *q;
      qk *= *q;
    }
    t *= ratio;
    terms.push_back(t);
  }
  return terms;
}

cplx hyper_terminating(HyperKind kind, const std::vector<cplx>& num, const std::vector<cplx>& den, cplx z,
                       std::optional<double> q) {
  cplx s(0.0);
  for (const auto& t : hyper_terms(kind, num, den, z, q)) s += t;
  return s;
}

}  // namespace bivop
