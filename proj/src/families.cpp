#include <charconv>
#include <cmath>
#include <sstream>

#include "bivop/bivariate.hpp"
#include "bivop/qcalc.hpp"

namespace bivop {

const char* to_string(FamilyTag t) {
  switch (t) {
    case FamilyTag::Generic: return "GENERIC";
    case FamilyTag::Z: return "Z";
    case FamilyTag::Hermite2D: return "H";
    case FamilyTag::M: return "M";
    case FamilyTag::ZQ: return "ZQ";
    case FamilyTag::Wall: return "WALL";
    case FamilyTag::MQ: return "MQ";
  }
  return "?";
}

FamilyTag parse_family_tag(const std::string& s) {
  if (s == "GENERIC") return FamilyTag::Generic;
  if (s == "Z") return FamilyTag::Z;
  if (s == "H" || s == "HERMITE2D") return FamilyTag::Hermite2D;
  if (s == "M") return FamilyTag::M;
  if (s == "ZQ") return FamilyTag::ZQ;
  if (s == "WALL") return FamilyTag::Wall;
  if (s == "MQ") return FamilyTag::MQ;
  throw ParameterError("unknown family '" + s + "'");
}

void FamilyId::validate() const {
  if (has_radial()) radial.validate();
}

namespace {
// shortest text that reads back to the same double
std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}
}  // namespace

std::string FamilyId::describe() const {
  std::ostringstream os;
  os << to_string(tag);
  if (tag == FamilyTag::Hermite2D) return os.str();
  if (tag == FamilyTag::Generic) os << '[' << to_string(radial.kind) << ']';
  os << "(beta=" << shortest(radial.beta);
  if (radial.has_gamma()) os << ",gamma=" << shortest(radial.gamma);
  if (radial.is_q()) os << ",q=" << shortest(radial.q);
  if (radial.kind == RadialKind::QLaguerre && radial.c != 1.0) os << ",c=" << shortest(radial.c);
  os << ')';
  return os.str();
}

Poly hermite2d(int m, int n) {
  Poly p;
  if (m < 0 || n < 0) return p;
  for (int k = 0; k <= std::min(m, n); ++k)
    p.add(m - k, n - k, (k % 2 == 0 ? 1.0 : -1.0) * factorial(k) * binomial(m, k) * binomial(n, k));
  return p;
}

namespace {

Poly radial_poly(const FamilyId& fam, int m, int n) {
  if (m < n) return swap_vars(radial_poly(fam, n, m));
  const auto c = radial_coeffs_unchecked(fam.radial, n, m - n);
  Poly p;
  for (int j = 0; j <= n; ++j) {
    if (!std::isfinite(c(j))) throw SingularParameterError("non-finite coefficient in " + fam.describe());
    p.add(m - j, n - j, c(j));
  }
  return p;
}

}  // namespace

Poly construct_unchecked(const FamilyId& fam, int m, int n) {
  if (m < 0 || n < 0) return {};
  if (fam.tag == FamilyTag::Hermite2D) return hermite2d(m, n);
  return radial_poly(fam, m, n);
}

Poly construct(const FamilyId& fam, int m, int n) {
  if (m < 0 || n < 0) throw ParameterError("indices must be nonnegative");
  fam.validate();
  return construct_unchecked(fam, m, n);
}

Poly symmetry_conjugate(const FamilyId& fam, int m, int n) { return swap_vars(construct(fam, n, m)); }

Poly diagonal_extension(const FamilyId& fam, int n) {
  const auto c = radial_coeffs_unchecked(fam.radial, n, -1.0);
  Poly p;
  for (int j = 0; j <= n; ++j) {
    if (!std::isfinite(c(j))) throw SingularParameterError("non-finite coefficient in diagonal extension");
    p.add(n - j, n - j, c(j));
  }
  return p;
}

Poly scale_q_to_one(const Poly& p, double q) {
  require_q(q);
  Poly r;
  for (const auto& [key, c] : p) r.add(key.first, key.second, c * std::pow(1.0 - q, std::min(key.first, key.second)));
  return r;
}

Poly operational_Z(int m, int n, double beta) {
  if (m < n) throw RangeError("operational form needs m >= n");
  // d1^k d2^k z1^(beta+m) z2^n = falling(beta+m,k) falling(n,k) z1^(beta+m-k) z2^(n-k)
  Poly p;
  double fall_z1 = 1.0, fall_z2 = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      fall_z1 *= beta + m - (k - 1);
      fall_z2 *= n - (k - 1);
    }
    const double c = (k % 2 == 0 ? 1.0 : -1.0) / factorial(k) * fall_z1 * fall_z2;
    p.add(m - k, n - k, c);
  }
  return p * cplx((n % 2 == 0 ? 1.0 : -1.0) / factorial(n));
}

}  // namespace bivop
