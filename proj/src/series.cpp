#include <cmath>

#include "bivop/bivariate.hpp"
#include "bivop/qcalc.hpp"

namespace bivop {

namespace {

cplx laguerre_value(int n, double a, cplx x) {
  // L_n^(a)(x) = sum_i (a+1)_n / ((a+1)_i i! (n-i)!) (-x)^i
  cplx s(0), p(1);
  for (int i = 0; i <= n; ++i) {
    s += pochhammer(a + 1 + i, n - i) / (factorial(i) * factorial(n - i)) * p;
    p *= -x;
  }
  return s;
}

double max_coeff_diff(const Poly& a, const Poly& b) { return max_abs(a - b); }

}  // namespace

ConnectionResult connection_Z(int m, int n, double beta, double gamma) {
  if (m < n || n < 0) throw RangeError("connection needs m >= n >= 0");
  ConnectionResult r;
  const FamilyId zb = FamilyId::z(beta), zg = FamilyId::z(gamma);
  const Poly target = construct_unchecked(zb, m, n);
  Poly sum_p, sum_c, to_p, to_c, from_p, from_c;
  const double nf = factorial(n), sign_n = n % 2 == 0 ? 1.0 : -1.0;
  r.scale = max_abs(target);
  for (int j = 0; j <= n; ++j) {
    const double sj = j % 2 == 0 ? 1.0 : -1.0, snj = (n - j) % 2 == 0 ? 1.0 : -1.0;
    const double cg = pochhammer(beta - gamma, j) / factorial(j);
    r.printed.push_back(cg * sj);
    r.corrected.push_back(cg);
    const Poly zgj = construct_unchecked(zg, m - j, n - j);
    sum_p += zgj * cplx(cg * sj);
    sum_c += zgj * cplx(cg);
    const Poly hj = hermite2d(m - j, n - j);
    const double ch = binomial(n, j) * pochhammer(beta, j);
    to_p += hj * cplx(ch * sj);
    to_c += hj * cplx(ch * snj);
    const Poly zj = construct_unchecked(zb, m - j, n - j);
    const double cz = nf * pochhammer(-beta, j) / factorial(j);
    from_p += zj * cplx(cz * sj);
    from_c += zj * cplx(cz * sign_n);
  }
  r.printed_residual = max_coeff_diff(sum_p, target);
  r.corrected_residual = max_coeff_diff(sum_c, target);
  const Poly scaled = target * cplx(nf);
  r.hermite_to_residual = max_coeff_diff(to_p, scaled);
  r.hermite_to_corrected = max_coeff_diff(to_c, scaled);
  const Poly h = hermite2d(m, n);
  r.hermite_from_residual = max_coeff_diff(from_p, h);
  r.hermite_from_corrected = max_coeff_diff(from_c, h);
  return r;
}

const char* to_string(GenFun g) {
  switch (g) {
    case GenFun::Z_EXP: return "Z_EXP";
    case GenFun::Z_PLAIN: return "Z_PLAIN";
    case GenFun::M_EXP: return "M_EXP";
    case GenFun::M_PLAIN: return "M_PLAIN";
    case GenFun::M_DOUBLE: return "M_DOUBLE";
  }
  return "?";
}

GenFun parse_genfun(const std::string& s) {
  for (GenFun g : {GenFun::Z_EXP, GenFun::Z_PLAIN, GenFun::M_EXP, GenFun::M_PLAIN, GenFun::M_DOUBLE})
    if (s == to_string(g)) return g;
  throw ParameterError("unknown generating function '" + s + "'");
}

GenFunResult genfun_check(const FamilyId& fam, GenFun which, const GenFunPoint& pt) {
  fam.validate();
  const bool zkind = which == GenFun::Z_EXP || which == GenFun::Z_PLAIN;
  if (zkind && fam.tag != FamilyTag::Z) throw ParameterError("Z generating functions need a Z family");
  if (!zkind && fam.tag != FamilyTag::M) throw ParameterError("M generating functions need an M family");
  if (pt.N < 1) throw ParameterError("truncation must be positive");
  const cplx u = pt.u, v = pt.v, z1 = pt.z1, z2 = pt.z2, uv = u * v, X = z1 * z2;
  if (std::abs(uv) >= 1.0) throw ParameterError("|uv| must be below 1");

  const bool exp_weight = which == GenFun::Z_EXP || which == GenFun::M_EXP;
  const bool full = which == GenFun::M_DOUBLE;
  GenFunResult r;
  cplx sum(0), shell(0);
  for (int m = 0; m <= pt.N; ++m)
    for (int n = 0; n <= (full ? pt.N : m); ++n) {
      cplx t = eval(construct_unchecked(fam, m, n), z1, z2) * std::pow(u, m) * std::pow(v, n);
      if (exp_weight) t /= factorial(m - n);
      sum += t;
      if (std::max(m, n) == pt.N) shell += t;
    }
  const double last_shell = std::abs(shell);
  r.truncated = sum;
  r.tail = last_shell;

  const double b = fam.beta();
  switch (which) {
    case GenFun::Z_EXP:
      r.closed_printed = std::pow(1.0 + uv, -b - 1) * std::exp((uv * X + z1 * u) / (1.0 + uv));
      r.closed_corrected = std::exp((u * z1 - X * uv) / (1.0 - uv)) / std::pow(1.0 - uv, b + 1);
      break;
    case GenFun::Z_PLAIN:
      r.closed_printed = std::exp(-X * uv / (1.0 - uv)) / (std::pow(1.0 - uv, b) * (1.0 - z1 * u - uv));
      r.closed_corrected = r.closed_printed;
      break;
    default: {
      const double g = fam.gamma();
      const cplx rho = std::sqrt(1.0 - 2.0 * uv * (1.0 - 2.0 * X) + uv * uv);
      const cplx minus = 1.0 - uv + rho, plus = 1.0 + uv + rho;
      if (std::abs(minus) < 1e-8) throw DegeneratePointError("1 - uv + rho vanishes");
      const double two = std::pow(2.0, b + g);
      const cplx pre = two / rho * std::pow(plus, -b) * std::pow(minus, -g);
      if (which == GenFun::M_EXP) {
        r.closed_printed = pre * std::exp(2.0 * z1 * u / minus);
      } else if (which == GenFun::M_DOUBLE) {
        r.closed_printed = pre * (1.0 / (1.0 - 2.0 * z1 * u / minus) + 1.0 / (1.0 - 2.0 * v * z2 / minus) - 1.0);
      } else {
        r.closed_printed = two * std::pow(plus, -b) * std::pow(minus, 1 - g) / (rho * (minus - 2.0 * u * z1));
      }
      r.closed_corrected = r.closed_printed;
    }
  }
  r.residual_printed = std::abs(r.truncated - r.closed_printed);
  r.residual_corrected = std::abs(r.truncated - r.closed_corrected);
  return r;
}

ConvolutionResult convolution_Z_check(int m, int n, double beta, double gamma,
                                      const std::vector<ConvolutionPoint>& pts) {
  if (m < n || n < 0) throw RangeError("convolution needs m >= n >= 0");
  const FamilyId zb = FamilyId::z(beta), zg = FamilyId::z(gamma), zs = FamilyId::z(beta + gamma + 1);
  const Poly lhs_poly = construct_unchecked(zs, m, n);
  const int s = m - n;
  ConvolutionResult r;
  for (const auto& p : pts) {
    cplx rhs(0);
    for (int j = 0; j <= m; ++j)
      for (int k = 0; k <= std::min(j, n); ++k) {
        if (m - n - j + k < 0) continue;
        rhs += eval(construct_unchecked(zb, j, k), p.z1, p.z2) * eval(construct_unchecked(zg, m - j, n - k), p.z3, p.z4) /
               (factorial(j - k) * factorial(m - n - j + k));
      }
    const cplx printed = eval(lhs_poly, p.z1 + p.z3, p.z2 + p.z4);
    const cplx corrected =
        std::pow(p.z1 + p.z3, s) * laguerre_value(n, beta + gamma + 1 + s, p.z1 * p.z2 + p.z3 * p.z4) / factorial(s);
    r.residual_printed = std::max(r.residual_printed, std::abs(printed - rhs));
    r.residual_corrected = std::max(r.residual_corrected, std::abs(corrected - rhs));
  }
  return r;
}

Poly pde_series_solution(double beta, int n, const SeriesBoundary& boundary, int cutoff) {
  if (n < 0 || cutoff < 0) throw ParameterError("n and cutoff must be nonnegative");
  // coefficients on the diagonal line through each boundary entry
  Poly p;
  auto run = [&](int j0, int k0, double a0) {
    double a = a0;
    for (int j = j0, k = k0; j + k <= cutoff && a != 0.0;) {
      p.add(j, k, a);
      ++j;
      ++k;
      if (beta + j == 0.0) throw SingularParameterError("beta + j vanishes in the series recursion");
      a *= (k - 1.0 - n) / (k * (beta + j));
    }
  };
  for (const auto& [j, a] : boundary.row) {
    if (j < 0) throw ParameterError("row index must be nonnegative");
    run(j, 0, a);
  }
  for (const auto& [k, a] : boundary.column) {
    if (k < 1) throw ParameterError("column index must be positive");
    run(0, k, a);
  }
  return p;
}

Poly series_operator(const Poly& f, double beta, int n) {
  const Poly d2 = diff(f, Var::z2, Flavor::partial);
  const Poly z1 = Poly::monomial(1, 0), X = Poly::monomial(1, 1);
  return z1 * diff(d2, Var::z1, Flavor::partial) + d2 * cplx(beta) - X * d2 + z1 * f * cplx(n);
}

Poly series_closed_row(double beta, int n, int p) {
  Poly r;
  const double scale = factorial(n) / pochhammer(beta + p + 1, n);
  for (int i = 0; i <= n; ++i) {
    const double c = pochhammer(beta + p + 1 + i, n - i) / (factorial(i) * factorial(n - i));
    r.add(p + i, i, (i % 2 == 0 ? 1.0 : -1.0) * c * scale);
  }
  return r;
}

Poly series_closed_column(double beta, int n, int r) {
  if (r < 1 || r > n) throw RangeError("closed column form needs 1 <= r <= n");
  Poly p;
  for (int i = 0;; ++i) {
    const double c = pochhammer(r - n, i) * pochhammer(1, i) / (pochhammer(r + 1, i) * pochhammer(beta + 1, i) * factorial(i));
    if (c == 0.0) break;
    p.add(i, r + i, c);
  }
  return p;
}

}  // namespace bivop
