#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string_view>

#include "bivop/bivariate.hpp"
#include "bivop/qcalc.hpp"

namespace bivop {

namespace {

struct IdInfo {
  IdentityId id;
  const char* name;
  std::array<FamilyTag, 6> tags;
  int ntags;
};

constexpr FamilyTag G = FamilyTag::Generic, Zt = FamilyTag::Z, Mt = FamilyTag::M, ZQt = FamilyTag::ZQ,
                    Wt = FamilyTag::Wall, MQt = FamilyTag::MQ, Ht = FamilyTag::Hermite2D;

#define RADIAL_TAGS {G, Zt, Mt, ZQt, Wt, MQt}, 6
const IdInfo kInfo[] = {
    {IdentityId::GEN_3TRR, "GEN_3TRR", RADIAL_TAGS},
    {IdentityId::GEN_REC2, "GEN_REC2", RADIAL_TAGS},
    {IdentityId::GEN_DIAG, "GEN_DIAG", RADIAL_TAGS},
    {IdentityId::GEN_UV, "GEN_UV", RADIAL_TAGS},
    {IdentityId::GEN_EIGEN_ANGULAR, "GEN_EIGEN_ANGULAR", {G, Zt, Mt, ZQt, Wt, MQt}, 6},
    {IdentityId::Z_RR1, "Z_RR1", {Zt}, 1},
    {IdentityId::Z_RR2, "Z_RR2", {Zt}, 1},
    {IdentityId::Z_DIAG, "Z_DIAG", {Zt}, 1},
    {IdentityId::Z_LADDER1, "Z_LADDER1", {Zt}, 1},
    {IdentityId::Z_LADDER2, "Z_LADDER2", {Zt}, 1},
    {IdentityId::Z_LADDER3, "Z_LADDER3", {Zt}, 1},
    {IdentityId::Z_LADDER4, "Z_LADDER4", {Zt}, 1},
    {IdentityId::Z_LADDER5, "Z_LADDER5", {Zt}, 1},
    {IdentityId::Z_LADDER6, "Z_LADDER6", {Zt}, 1},
    {IdentityId::Z_OPREP, "Z_OPREP", {Zt}, 1},
    {IdentityId::Z_SHIFT_UP, "Z_SHIFT_UP", {Zt}, 1},
    {IdentityId::Z_PDE, "Z_PDE", {Zt}, 1},
    {IdentityId::Z_ODE, "Z_ODE", {Zt}, 1},
    {IdentityId::CONN_Z, "CONN_Z", {Zt}, 1},
    {IdentityId::M_RR1, "M_RR1", {Mt}, 1},
    {IdentityId::M_RR2, "M_RR2", {Mt}, 1},
    {IdentityId::M_RR3, "M_RR3", {Mt}, 1},
    {IdentityId::M_PDE1, "M_PDE1", {Mt}, 1},
    {IdentityId::M_PDE2, "M_PDE2", {Mt}, 1},
    {IdentityId::M_LADDER, "M_LADDER", {Mt}, 1},
    {IdentityId::ZQ_RR1, "ZQ_RR1", {ZQt}, 1},
    {IdentityId::ZQ_RR2, "ZQ_RR2", {ZQt}, 1},
    {IdentityId::ZQ_DIAG, "ZQ_DIAG", {ZQt}, 1},
    {IdentityId::ZQ_LADDER, "ZQ_LADDER", {ZQt}, 1},
    {IdentityId::ZQ_QDE1, "ZQ_QDE1", {ZQt}, 1},
    {IdentityId::ZQ_QDE2, "ZQ_QDE2", {ZQt}, 1},
    {IdentityId::WALL_RR1, "WALL_RR1", {Wt}, 1},
    {IdentityId::WALL_RR2, "WALL_RR2", {Wt}, 1},
    {IdentityId::WALL_DIAG, "WALL_DIAG", {Wt}, 1},
    {IdentityId::WALL_QDE1, "WALL_QDE1", {Wt}, 1},
    {IdentityId::WALL_QDE2, "WALL_QDE2", {Wt}, 1},
    {IdentityId::WALL_LADDER, "WALL_LADDER", {Wt}, 1},
    {IdentityId::MQ_RR1, "MQ_RR1", {MQt}, 1},
    {IdentityId::MQ_RR2, "MQ_RR2", {MQt}, 1},
    {IdentityId::MQ_QDE1, "MQ_QDE1", {MQt}, 1},
    {IdentityId::MQ_QDE2, "MQ_QDE2", {MQt}, 1},
    {IdentityId::MQ_LADDER, "MQ_LADDER", {MQt}, 1},
};
#undef RADIAL_TAGS

const IdInfo& info(IdentityId id) {
  for (const auto& i : kInfo)
    if (i.id == id) return i;
  throw ParameterError("unknown identity");
}

// ---- equation plumbing ----

class Eq {
 public:
  Eq& l(const Poly& p) {
    diff_ += p;
    scale_ = std::max(scale_, max_abs(p));
    return *this;
  }
  Eq& r(const Poly& p) {
    diff_ -= p;
    scale_ = std::max(scale_, max_abs(p));
    return *this;
  }
  FormResult evaluate(const Tolerance& tol) const {
    FormResult f;
    f.residual = max_abs(diff_);
    f.scale = scale_;
    if (!std::isfinite(f.residual) || !std::isfinite(f.scale)) {
      // a coefficient of this form is undefined here
      f.residual = f.scale = std::numeric_limits<double>::infinity();
      f.pass = false;
      return f;
    }
    f.pass = tol.accepts(f.residual, f.scale);
    return f;
  }

 private:
  Poly diff_;
  double scale_ = 0.0;
};

struct Part {
  std::string label;
  Eq printed;
  std::optional<Eq> derived;
};
using Parts = std::vector<Part>;

Part single(Eq e, std::string label = "") { return Part{std::move(label), std::move(e), std::nullopt}; }

const Poly ONE(cplx(1.0));
const Poly X = Poly::monomial(1, 1);
const Poly Z1 = Poly::monomial(1, 0);
const Poly Z2 = Poly::monomial(0, 1);

Poly d(const Poly& p, Var v) { return diff(p, v, Flavor::partial); }
Poly th(const Poly& p, Var v) { return diff(p, v, Flavor::theta); }
Poly k(double c, const Poly& p) { return p * cplx(c); }

double qp(double q, double x) { return qpow(q, x); }
double om(double q, double x) { return -std::expm1(x * std::log(q)); }  // 1 - q^x

// A th^2 f + B th f + C f, th the classical or q Euler operator in one variable.
struct Op2 {
  Poly A, B, C;
};

Eq apply(const Op2& op, const Poly& f, Var v, Flavor fl, double q) {
  const Poly t1 = diff(f, v, fl, q);
  const Poly t2 = diff(t1, v, fl, q);
  Eq e;
  e.l(op.A * t2).l(op.B * t1).l(op.C * f);
  return e;
}

// z2-equation of f = z1^s g(z1 z2) rewritten in z1.
Op2 transfer_classical(const Op2& op, int s) {
  return {op.A, op.B - k(2.0 * s, op.A), k(double(s) * s, op.A) - k(s, op.B) + op.C};
}
Op2 transfer_q(const Op2& op, int s, double q) {
  const double qs = qp(q, s), ks = qint(s, q);
  return {op.A, k(qs, op.B) - k(2.0 * ks, op.A), k(ks * ks, op.A) - k(ks * qs, op.B) + k(qs * qs, op.C)};
}
// P y(q^2 x) + Q y(q x) + R y(x) = 0 in Euler form.
Op2 from_three_term(const Poly& P, const Poly& Q, const Poly& R, double q) {
  return {k((1 - q) * (1 - q), P), k(-(1 - q), k(2.0, P) + Q), P + Q + R};
}

// den * z D_q(z^a w f)/(z^a w) with w(qz)/w(z) = num/den.
Poly qw_theta(const Poly& f, Var v, double q, double a, const Poly& num, const Poly& den) {
  return (den * f - num * dilate(f, v, cplx(q)) * cplx(qp(q, a))) * cplx(1.0 / (1.0 - q));
}
// den * z D_{1/q}(z^a w f)/(z^a w) with w(z/q)/w(z) = num/den.
Poly qinv_theta(const Poly& f, Var v, double q, double a, const Poly& num, const Poly& den) {
  return (den * f - num * dilate(f, v, cplx(1.0 / q)) * cplx(qp(q, -a))) * cplx(1.0 / (1.0 - 1.0 / q));
}

// ---- generic construction ----

Parts generic_parts(const FamilyId& fam, IdentityId id, int m, int n) {
  auto F = [&](int a, int b) { return construct_unchecked(fam, a, b); };
  auto c = [&](int deg, double al, int j) { return radial_coeffs_unchecked(fam.radial, deg, al)(j); };
  const double al = m - n;
  const Poly f = F(m, n);
  Parts parts;
  switch (id) {
    case IdentityId::GEN_3TRR: {
      const double ca = c(n, al + 1, 0) / c(n + 1, al, 0);
      const double cb = c(n, al + 1, 0) * c(n + 1, al, n + 1) / (c(n + 1, al, 0) * c(n, al, n));
      Eq e;
      e.l(Z2 * F(m + 1, n)).r(k(ca, F(m + 1, n + 1))).r(k(-cb, f));
      parts.push_back(single(e));
      break;
    }
    case IdentityId::GEN_REC2: {
      const double v = c(n, al, 0) / c(n, al + 1, 0);
      const double u = shift_b(fam.radial, n, al);
      Eq e;
      e.l(Z1 * f).l(k(-v, F(m + 1, n))).r(k(u, F(m, n - 1)));
      parts.push_back(single(e));
      break;
    }
    case IdentityId::GEN_DIAG: {
      const auto rc = recurrence_coeffs(fam.radial, n, al);
      Eq p, dv;
      p.l(X * f).l(k(-rc.c_printed, f)).r(k(rc.a_printed, F(m + 1, n + 1))).r(k(rc.b_printed, F(m - 1, n - 1)));
      dv.l(X * f).l(k(-rc.c, f)).r(k(rc.a, F(m + 1, n + 1))).r(k(rc.b, F(m - 1, n - 1)));
      parts.push_back(Part{"", p, dv});
      break;
    }
    case IdentityId::GEN_UV: {
      const double v = shift_a(fam.radial, n, al), u = shift_b(fam.radial, n, al);
      Eq p;
      p.l(Z1 * f).l(k(-v, F(m + 1, n))).r(k(u, F(m, n - 1)));
      if (m == n - 1) {
        Eq dv;
        dv.l(diagonal_extension(fam, n)).l(k(-v, F(m + 1, n))).r(k(u, F(m, n - 1)));
        parts.push_back(Part{"below-diagonal", p, dv});
      } else {
        parts.push_back(single(p));
      }
      break;
    }
    default: throw ParameterError("not a generic identity");
  }
  return parts;
}

Parts angular_parts(const FamilyId& fam, int m, int n) {
  const Poly f = construct_unchecked(fam, m, n);
  const double q = fam.is_q() ? fam.q() : 0.5;
  Eq e, eq;
  e.l(th(f, Var::z1)).l(-th(f, Var::z2)).r(k(m - n, f));
  eq.l(diff(f, Var::z1, Flavor::qtheta, q))
      .l(k(-qp(q, m - n), diff(f, Var::z2, Flavor::qtheta, q)))
      .r(k(qnumber(m - n, q), f));
  return {single(e, "classical"), single(eq, "q")};
}

// ---- Z ----

Parts z_parts(const PolyBuilder& F, double b, IdentityId id, int m, int n, const CheckOptions& opt) {
  const Poly f = F(m, n);
  Parts parts;
  auto add = [&](Eq e, std::string label = "") { parts.push_back(single(std::move(e), std::move(label))); };
  switch (id) {
    case IdentityId::Z_RR1: add(Eq().l(Z1 * f).r(F(m + 1, n)).r(-F(m, n - 1))); break;
    case IdentityId::Z_RR2:
      add(Eq().l(Z2 * F(m + 1, n)).r(k(-(n + 1.0), F(m + 1, n + 1))).r(k(b + m + 1, f)));
      break;
    case IdentityId::Z_DIAG:
      add(Eq().l(k(b + m + n + 1, f)).l(-(X * f)).r(k(n + 1.0, F(m + 1, n + 1))).r(k(m + b, F(m - 1, n - 1))));
      break;
    case IdentityId::Z_LADDER1: add(Eq().l(th(f, Var::z2)).r(-(Z2 * F(m, n - 1)))); break;
    case IdentityId::Z_LADDER2: add(Eq().l(th(f, Var::z2)).r(k(n, f)).r(k(-(b + m), F(m - 1, n - 1)))); break;
    case IdentityId::Z_LADDER3: add(Eq().l(th(f, Var::z1)).r(k(m - n, f)).r(-(Z2 * F(m, n - 1)))); break;
    case IdentityId::Z_LADDER4: add(Eq().l(th(f, Var::z1)).r(k(m, f)).r(k(-(m + b), F(m - 1, n - 1)))); break;
    case IdentityId::Z_LADDER5: add(Eq().l(th(f, Var::z1)).l(-th(f, Var::z2)).r(k(m - n, f))); break;
    case IdentityId::Z_LADDER6:
      add(Eq().l(k(n, th(f, Var::z1))).l(k(-m, th(f, Var::z2))).r(k((m - n) * (m + b), F(m - 1, n - 1))));
      break;
    case IdentityId::Z_OPREP: add(Eq().l(f).r(operational_Z(m, n, b))); break;
    case IdentityId::Z_SHIFT_UP: {
      // w'/w = beta/x - 1 cleared by the weight: beta f - x f + delta f
      const Poly base = k(b, f) - X * f;
      Eq up;
      up.l(base).l(th(f, Var::z1)).r(k(n + 1.0, Z1 * F(m, n + 1)));
      if (m == n) {
        Eq dv;
        const Poly ext = diagonal_extension(FamilyId::z(b), n + 1);
        dv.l(base).l(th(f, Var::z1)).r(k(n + 1.0, ext));
        parts.push_back(Part{"raise-n", up, dv});
      } else {
        parts.push_back(single(up, "raise-n"));
      }
      add(Eq().l(base).l(th(f, Var::z2)).r(k(b, f)).r(-(Z2 * F(m + 1, n))), "delta2");
      add(Eq().l(base).l(th(f, Var::z1)).r(k(b + m - n, f)).r(-(Z2 * F(m + 1, n))), "delta1");
      add(Eq().l(-(Z1 * f)).l(d(f, Var::z2)).r(-F(m + 1, n)), "d2-exp");
      break;
    }
    case IdentityId::Z_PDE: {
      const Poly d2 = d(f, Var::z2);
      add(Eq().l(Z1 * d(d2, Var::z1)).l(k(b, d2)).l(-(X * d2)).l(k(n, Z1 * f)));
      break;
    }
    case IdentityId::Z_ODE: {
      const Poly d2 = d(f, Var::z2);
      add(Eq().l(Z2 * d(d2, Var::z2)).l(k(1 + b + m - n, d2)).l(-(X * d2)).l(k(n, Z1 * f)));
      break;
    }
    case IdentityId::CONN_Z: {
      const double g = opt.conn_gamma;
      const FamilyId zg = FamilyId::z(g);
      Eq p1, d1, p2, d2, p3, d3;
      p1.l(f);
      d1.l(f);
      p2.l(k(factorial(n), f));
      d2.l(k(factorial(n), f));
      const Poly h = hermite2d(m, n);
      p3.l(h);
      d3.l(h);
      for (int j = 0; j <= n; ++j) {
        const double sj = j % 2 == 0 ? 1.0 : -1.0, snj = (n - j) % 2 == 0 ? 1.0 : -1.0;
        const Poly zgj = construct_unchecked(zg, m - j, n - j);
        const double cg = pochhammer(b - g, j) / factorial(j);
        p1.r(k(cg * sj, zgj));
        d1.r(k(cg, zgj));
        const Poly hj = hermite2d(m - j, n - j);
        const double ch = binomial(n, j) * pochhammer(b, j);
        p2.r(k(ch * sj, hj));
        d2.r(k(ch * snj, hj));
        const Poly fj = F(m - j, n - j);
        const double cz = factorial(n) * pochhammer(-b, j) / factorial(j);
        p3.r(k(cz * sj, fj));
        d3.r(k(cz * (n % 2 == 0 ? 1.0 : -1.0), fj));
      }
      parts.push_back(Part{"beta-gamma", p1, d1});
      parts.push_back(Part{"to-hermite", p2, d2});
      parts.push_back(Part{"from-hermite", p3, d3});
      break;
    }
    default: throw ParameterError("not a Z identity");
  }
  return parts;
}

// ---- M ----

Parts m_parts(const FamilyId& fam, IdentityId id, int m, int n) {
  const double b = fam.beta(), g = fam.gamma();
  auto F = [&](int a, int c) { return construct_unchecked(fam, a, c); };
  const FamilyId up = fam.with_beta(b + 1);
  auto Fp = [&](int a, int c) { return construct_unchecked(up, a, c); };
  const Poly f = F(m, n);
  const double s = m - n;
  Parts parts;
  auto add = [&](Eq e, std::string label = "") { parts.push_back(single(std::move(e), std::move(label))); };
  switch (id) {
    case IdentityId::M_RR1:
      add(Eq().l(k(b + g + m + n + 2, Z2 * F(m + 1, n))).r(k(g + m + 1, f)).r(k(-(n + 1.0), F(m + 1, n + 1))));
      break;
    case IdentityId::M_RR2:
      add(Eq().l(k(b + g + m + n + 1, Z1 * f)).r(k(b + g + m + 1, F(m + 1, n))).r(k(-(b + n), F(m, n - 1))));
      break;
    case IdentityId::M_RR3: {
      const double an = (n + 1) * (b + g + m + 1) / ((b + g + m + n + 1) * (b + g + m + n + 2));
      double cn = (n + 1) * (g + m + 1) / (b + g + m + n + 2);
      Eq e;
      if (n > 0) {
        cn -= n * (g + m) / (b + g + m + n);
        const double bn = (g + m) * (b + n) / ((b + g + m + n) * (b + g + m + n + 1));
        e.r(k(bn, F(m - 1, n - 1)));
      }
      e.l(k(cn, f)).l(-(X * f)).r(k(an, F(m + 1, n + 1)));
      add(e);
      break;
    }
    case IdentityId::M_PDE1: {
      const Op2 op{ONE - X, k(s + g, ONE) - k(b + g + s + 1, X), k(n * (b + g + m + 1), X)};
      add(apply(op, f, Var::z2, Flavor::theta, 0.5), "theta");
      const Poly d2 = d(f, Var::z2);
      add(Eq()
              .l((Z2 - X * Z2) * d(d2, Var::z2))
              .l((k(1 + s + g, ONE) - k(2 + g + b + s, X)) * d2)
              .l(k(n * (m + b + g + 1), Z1 * f)),
          "partial");
      break;
    }
    case IdentityId::M_PDE2: {
      // printed second equation read with the roles of z1 and z2 exchanged
      const Poly d1 = d(f, Var::z1);
      Eq p;
      p.l((Z1 - X * Z1) * d(d1, Var::z1))
          .l((k(1 - s + g, ONE) - k(2 + g + b - s, X)) * d1)
          .l(k(m * (n + b + g + 1), Z2 * f));
      const Op2 op{ONE - X, k(s + g, ONE) - k(b + g + s + 1, X), k(n * (b + g + m + 1), X)};
      parts.push_back(Part{"", p, apply(transfer_classical(op, m - n), f, Var::z1, Flavor::theta, 0.5)});
      break;
    }
    case IdentityId::M_LADDER: {
      const double bgm = b + g + m + 1, bgn = b + g + n + 1;
      Eq p1, d1;
      p1.l(d(f, Var::z2)).r(k(-bgm, Fp(m, n)));
      d1.l(d(f, Var::z2)).r(k(-bgm, Fp(m, n - 1)));
      parts.push_back(Part{"d2", p1, d1});
      const Poly t1 = th(f, Var::z1), t2 = th(f, Var::z2);
      add(Eq().l(t2).r(k(n, f)).r(k(-(g + m), Fp(m - 1, n - 1))), "delta2-lower");
      add(Eq().l(t2).r(k(bgm, Fp(m, n))).r(k(-bgm, f)), "delta2-shift");
      add(Eq().l(t1).r(k(m, f)).r(k(-(g + m), Fp(m - 1, n - 1))), "delta1-lower");
      add(Eq().l(t1).r(k(bgm, Fp(m, n))).r(k(-bgn, f)), "delta1-shift");
      add(Eq().l(k(bgm, t1)).l(k(-bgn, t2)).r(k(s * bgm, Fp(m, n))), "combination");
      add(Eq().l(t1).l(-t2).r(k(s, f)), "angular");
      break;
    }
    default: throw ParameterError("not an M identity");
  }
  return parts;
}

// ---- q-Laguerre ----

Op2 zq_z2_op(double b, double q, int m, int n) {
  return {ONE + k(q, X), k(1 / (1 - q), k(qp(q, n - m - b) - 1, ONE) - k((2 - qp(q, n)) * q, X)),
          k(q * (1 - qp(q, n)) / ((1 - q) * (1 - q)), X)};
}

Parts zq_parts(const FamilyId& fam, IdentityId id, int m, int n) {
  const double b = fam.beta(), q = fam.q();
  auto F = [&](int a, int c) { return construct_unchecked(fam, a, c); };
  auto Q = [&](double x) { return qp(q, x); };
  const Poly f = F(m, n);
  Parts parts;
  auto add = [&](Eq e, std::string label = "") { parts.push_back(single(std::move(e), std::move(label))); };
  switch (id) {
    case IdentityId::ZQ_RR1:
      add(Eq().l(k(Q(m + 1 + b), Z2 * F(m + 1, n))).r(k(-om(q, n + 1), F(m + 1, n + 1))).r(k(om(q, m + b + 1), f)));
      break;
    case IdentityId::ZQ_RR2: {
      Eq p, dv;
      p.l(k(Q(n), Z1 * F(m, n + 1))).r(F(m + 1, n)).r(-F(m, n - 1));
      dv.l(Z1 * f).r(k(shift_a(fam.radial, n, m - n), F(m + 1, n))).r(k(shift_b(fam.radial, n, m - n), F(m, n - 1)));
      parts.push_back(Part{"", p, dv});
      break;
    }
    case IdentityId::ZQ_DIAG:
      add(Eq()
              .l(k(1 + q * (1 - Q(n) - Q(m + b)), f))
              .l(k(-Q(b + m + n + 1), X * f))
              .r(k(om(q, n + 1), F(m + 1, n + 1)))
              .r(k(q * om(q, b + m), F(m - 1, n - 1))));
      break;
    case IdentityId::ZQ_LADDER: {
      const Poly num = k(Q(b), ONE + X);  // w(qx)/w(x) for w = x^beta/(-x;q)_inf
      const Poly low = dilate(F(m, n - 1), Var::z1, cplx(q));
      add(Eq().l(qw_theta(f, Var::z1, q, n - m, ONE, ONE)).r(k(Q(b) / (q - 1), Z2 * low)), "z1-lowering");
      add(Eq().l(diff(f, Var::z2, Flavor::qpartial, q)).r(k(Q(b) / (q - 1), low)), "z2-lowering");
      add(Eq()
              .l(qw_theta(f, Var::z2, q, 0, num, ONE))
              .r(k(om(q, b) / (1 - q), f))
              .r(k(-Q(b) / (1 - q), Z2 * F(m + 1, n))),
          "z2-weighted");
      if (m > n) {
        const double cr = om(q, n + 1) / (1 - q);
        add(Eq().l(qw_theta(f, Var::z1, q, 0, num, ONE)).r(k(cr, Z1 * F(m, n + 1))), "z1-raising");
        add(Eq().l(qw_theta(f, Var::z2, q, m - n, num, ONE)).r(k(cr, Z1 * F(m, n + 1))), "z2-raising");
      }
      break;
    }
    case IdentityId::ZQ_QDE1: add(apply(zq_z2_op(b, q, m, n), f, Var::z2, Flavor::qtheta, q)); break;
    case IdentityId::ZQ_QDE2: {
      const Op2 printed{ONE + k(q, X), k(-1 / (1 - q), k(om(q, b + m - n), ONE) + k((2 - Q(b + m + 1)) * q, X)),
                        k(q * om(q, b + m) / ((1 - q) * (1 - q)), X)};
      parts.push_back(Part{"", apply(printed, f, Var::z1, Flavor::qtheta, q),
                           apply(transfer_q(zq_z2_op(b, q, m, n), m - n, q), f, Var::z1, Flavor::qtheta, q)});
      break;
    }
    default: throw ParameterError("not a q-Laguerre identity");
  }
  return parts;
}

// ---- Wall ----

Op2 wall_z2_op(double b, double q, int m, int n) {
  return {k(qp(q, b + m - 1), ONE), k(1 / (1 - q), k(qp(q, n - 1) - qp(q, b + m - 1), ONE) - X),
          k(om(q, n) / ((1 - q) * (1 - q)), X)};
}

Parts wall_parts(const FamilyId& fam, IdentityId id, int m, int n) {
  const double b = fam.beta(), q = fam.q();
  auto F = [&](int a, int c) { return construct_unchecked(fam, a, c); };
  auto Q = [&](double x) { return qp(q, x); };
  const Poly f = F(m, n);
  Parts parts;
  auto add = [&](Eq e, std::string label = "") { parts.push_back(single(std::move(e), std::move(label))); };
  switch (id) {
    case IdentityId::WALL_RR1:
      add(Eq().l(k(1 / (Q(n) * om(q, m - n + b + 1)), Z2 * F(m + 1, n))).r(f).r(-F(m + 1, n + 1)));
      break;
    case IdentityId::WALL_RR2:
      add(Eq()
              .l(k(om(q, m - n + b + 1), Z1 * f))
              .r(k(om(q, m + b + 1), F(m + 1, n)))
              .r(k(-Q(m - n + b + 1) * om(q, n), F(m, n - 1))));
      break;
    case IdentityId::WALL_DIAG:
      add(Eq()
              .l(k(Q(n) + Q(m + b) * (1 - Q(n) - Q(n + 1)), f))
              .l(-(X * f))
              .r(k(Q(n) * om(q, m + b + 1), F(m + 1, n + 1)))
              .r(k(Q(m + b) * om(q, n), F(m - 1, n - 1))));
      break;
    case IdentityId::WALL_QDE1: add(apply(wall_z2_op(b, q, m, n), f, Var::z2, Flavor::qtheta, q)); break;
    case IdentityId::WALL_QDE2: {
      const Op2 printed{k(Q(n), ONE), k(-1 / (1 - q), k(Q(n) - Q(b + m), ONE) + k(q, X)),
                        k(q * om(q, b + m) / ((1 - q) * (1 - q)), X)};
      parts.push_back(Part{"", apply(printed, f, Var::z1, Flavor::qtheta, q),
                           apply(transfer_q(wall_z2_op(b, q, m, n), m - n, q), f, Var::z1, Flavor::qtheta, q)});
      break;
    }
    case IdentityId::WALL_LADDER: {
      const double k1 = -Q(1 - n) * om(q, n) / ((1 - q) * om(q, b + m - n + 1));
      add(Eq().l(qw_theta(f, Var::z1, q, n - m, ONE, ONE)).r(k(k1, Z2 * F(m, n - 1))), "z1-lowering");
      add(Eq().l(diff(f, Var::z2, Flavor::qpartial, q)).r(k(k1, F(m, n - 1))), "z2-lowering");
      const Poly num = k(Q(-b), ONE - X);  // w(x/q)/w(x) for w = (qx;q)_inf x^beta
      if (m > n) {
        const double k2 = om(q, b + m - n) / (Q(b + m - n - 1) * (1 - q));
        add(Eq().l(qinv_theta(f, Var::z1, q, 0, num, ONE)).r(k(k2, Z1 * F(m, n + 1))), "z1-raising");
        add(Eq().l(qinv_theta(f, Var::z2, q, m - n, num, ONE)).r(k(k2, Z1 * F(m, n + 1))), "z2-raising");
      }
      const Poly lhs = qinv_theta(f, Var::z2, q, 0, num, ONE);
      const double tail = om(q, b + m + 1) / ((1 - q) * om(q, b + m - n + 1));
      Eq p, dv;
      p.l(lhs).r(k(om(q, b) / (1 - q), f)).r(k(-Q(b + 1 - n) * tail, Z2 * F(m + 1, n)));
      dv.l(lhs).r(k(Q(1 - b) * om(q, b) / (1 - q), f)).r(k(-Q(1 - n - b) * tail, Z2 * F(m + 1, n)));
      parts.push_back(Part{"z2-weighted", p, dv});
      break;
    }
    default: throw ParameterError("not a Wall identity");
  }
  return parts;
}

// ---- little q-Jacobi ----

Op2 mq_three_term_op(double b, double g, double q, int m, int n) {
  const double a = m - n + b;
  const Poly P = k(qp(q, a), ONE - k(qp(q, g + 2), X));
  const Poly Qc = -(k(1 + qp(q, a), ONE) - k(qp(q, 1 - n) + qp(q, n + a + g + 2), X));
  const Poly R = ONE - k(q, X);
  return from_three_term(P, Qc, R, q);
}

Parts mq_parts(const FamilyId& fam, IdentityId id, int m, int n) {
  const double b = fam.beta(), g = fam.gamma(), q = fam.q();
  auto F = [&](int a, int c) { return construct_unchecked(fam, a, c); };
  auto Q = [&](double x) { return qp(q, x); };
  const Poly f = F(m, n);
  Parts parts;
  auto add = [&](Eq e, std::string label = "") { parts.push_back(single(std::move(e), std::move(label))); };
  switch (id) {
    case IdentityId::MQ_RR1:
      add(Eq()
              .l(k(om(q, b + g + m + n + 2) / (Q(n) * om(q, b + m - n + 1)), Z2 * F(m + 1, n)))
              .r(-F(m + 1, n + 1))
              .r(f));
      break;
    case IdentityId::MQ_RR2: {
      const double den = om(q, b + m - n + 1) * om(q, b + g + m + n + 1);
      Eq p, dv;
      p.l(Z1 * f)
          .r(k(om(q, b + m + 1) * om(q, b + g + m + 1) / den, F(m + 1, n)))
          .r(k(Q(m - n + b + 1) * om(q, n) * om(q, g + n) / den, F(m, n - 1)));
      dv.l(Z1 * f).r(k(shift_a(fam.radial, n, m - n), F(m + 1, n))).r(k(shift_b(fam.radial, n, m - n), F(m, n - 1)));
      parts.push_back(Part{"", p, dv});
      break;
    }
    case IdentityId::MQ_QDE1: {
      const double s1 = (1 - q) * (1 - q);
      const Op2 printed{k(s1, ONE - k(Q(g + 2), X)),
                        k(1 - q, k(Q(n - m - b) - 1, ONE) - k(Q(1 - m - b) + Q(g + 2) * (2 - Q(n)), X)),
                        -(ONE + k(Q(n + 1 - m - b) - Q(1 - m - b) - Q(g + n + 2), X))};
      parts.push_back(Part{"", apply(printed, f, Var::z2, Flavor::qtheta, q),
                           apply(mq_three_term_op(b, g, q, m, n), f, Var::z2, Flavor::qtheta, q)});
      break;
    }
    case IdentityId::MQ_QDE2: {
      const double s1 = (1 - q) * (1 - q);
      const double a2 = Q(2.0 * (m - n + b));
      const Op2 printed{k(s1, ONE - k(Q(g + 2), X)),
                        k(1 - q, k(Q(m - n + b) - 1, ONE) + k(2 * Q(g + 2) - Q(1 - n) - Q(m + b + g + 2), X)),
                        k(Q(1 - n) - Q(1 + m - n + b) + Q(g + 2) * (Q(m + b) + a2 - 1), X) - k(a2, ONE)};
      const Op2 derived = transfer_q(mq_three_term_op(b, g, q, m, n), m - n, q);
      parts.push_back(Part{"", apply(printed, f, Var::z1, Flavor::qtheta, q),
                           apply(derived, f, Var::z1, Flavor::qtheta, q)});
      break;
    }
    case IdentityId::MQ_LADDER: {
      const Poly lower = Z2 * construct_unchecked(fam.with_gamma(g + 1), m, n - 1);
      const Poly diffq = f - dilate(f, Var::z2, cplx(q));
      Eq p1, d1;
      p1.l(diffq).r(k(-Q(1 - n) * om(q, n) * om(q, m + b + g - 1) / om(q, m - n + b), lower));
      d1.l(diffq).r(k(-Q(1 - n) * om(q, n) * om(q, b + g + m + 1) / om(q, b + m - n + 1), lower));
      parts.push_back(Part{"z2-difference", p1, d1});
      if (m > n) {
        const Poly num = k(Q(-b), ONE - X), den = ONE - k(Q(g), X);
        const Poly raised = Z1 * construct_unchecked(fam.with_gamma(g - 1), m, n + 1);
        const Poly l1 = qinv_theta(f, Var::z1, q, 0, num, den);
        Eq p2, d2;
        p2.l(l1).r(k(om(q, m - n + b) / (Q(m - n + b) * (1 - q)), raised));
        d2.l(l1).r(k(om(q, m - n + b) / (Q(m - n + b - 1) * (1 - q)), raised));
        parts.push_back(Part{"z1-raising", p2, d2});
        add(Eq()
                .l(qinv_theta(f, Var::z2, q, m - n, num, den))
                .r(k(om(q, m - n + b) / (Q(m - n + b - 1) * (1 - q)), raised)),
            "z2-raising");
      }
      break;
    }
    default: throw ParameterError("not a little q-Jacobi identity");
  }
  return parts;
}

void check_range(IdentityId id, int m, int n) {
  if (m < 0 || n < 0) throw ParameterError("indices must be nonnegative");
  if (id == IdentityId::GEN_EIGEN_ANGULAR) return;
  if (id == IdentityId::GEN_UV) {
    if (m < n - 1) throw RangeError("identity holds for m >= n-1");
    return;
  }
  if (m < n) throw RangeError("identity holds for m >= n");
}

double badness(const FormResult& f, const Tolerance& tol) {
  if (!std::isfinite(f.residual)) return std::numeric_limits<double>::infinity();
  return f.residual / (tol.abs + tol.rel * f.scale);
}

IdentityReport summarize(IdentityId id, std::string family, int m, int n, const Parts& parts, const Tolerance& tol) {
  IdentityReport rep;
  rep.id = id;
  rep.family = std::move(family);
  rep.m = m;
  rep.n = n;
  rep.listed = listed_discrepancy(id);
  bool all_printed = true, all_some = true;
  double worst = -1.0, worst_derived = -1.0;
  for (const auto& part : parts) {
    PartReport pr;
    pr.label = part.label;
    pr.printed = part.printed.evaluate(tol);
    if (part.derived) pr.derived = part.derived->evaluate(tol);
    if (!std::isfinite(pr.printed.residual) && !(pr.derived && std::isfinite(pr.derived->residual)))
      throw SingularParameterError("identity has non-finite coefficients at these parameters");
    all_printed = all_printed && pr.printed.pass;
    all_some = all_some && (pr.printed.pass || (pr.derived && pr.derived->pass));
    const double ratio = badness(pr.printed, tol);
    if (ratio > worst) {
      worst = ratio;
      rep.max_residual = pr.printed.residual;
      rep.scale = pr.printed.scale;
    }
    const FormResult& eff = pr.derived ? *pr.derived : pr.printed;
    const double ratio_d = badness(eff, tol);
    if (ratio_d > worst_derived) {
      worst_derived = ratio_d;
      rep.derived_residual = eff.residual;
    }
    rep.parts.push_back(std::move(pr));
  }
  rep.verdict = all_printed ? Verdict::Pass : all_some ? Verdict::KnownDiscrepancy : Verdict::Fail;
  return rep;
}

bool is_z_identity(IdentityId id) {
  return id >= IdentityId::Z_RR1 && id <= IdentityId::CONN_Z;
}

}  // namespace

const char* to_string(IdentityId id) { return info(id).name; }

IdentityId parse_identity(const std::string& s) {
  for (const auto& i : kInfo)
    if (s == i.name) return i.id;
  throw ParameterError("unknown identity '" + s + "'");
}

const std::vector<IdentityId>& all_identities() {
  static const std::vector<IdentityId> ids = [] {
    std::vector<IdentityId> v;
    for (const auto& i : kInfo) v.push_back(i.id);
    return v;
  }();
  return ids;
}

bool applies_to(IdentityId id, FamilyTag tag) {
  if (id == IdentityId::GEN_EIGEN_ANGULAR && tag == FamilyTag::Hermite2D) return true;
  const auto& i = info(id);
  return std::find(i.tags.begin(), i.tags.begin() + i.ntags, tag) != i.tags.begin() + i.ntags;
}

std::vector<IdentityId> identities_for(FamilyTag tag) {
  std::vector<IdentityId> v;
  for (const auto& i : kInfo)
    if (applies_to(i.id, tag)) v.push_back(i.id);
  return v;
}

bool listed_discrepancy(IdentityId id) { return id == IdentityId::ZQ_RR2 || id == IdentityId::M_PDE2; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::KnownDiscrepancy: return "KNOWN_DISCREPANCY";
    case Verdict::Fail: return "FAIL";
  }
  return "?";
}

IdentityReport check_identity(const FamilyId& fam, IdentityId id, int m, int n, const Tolerance& tol,
                              const CheckOptions& opt) {
  tol.validate();
  fam.validate();
  if (!applies_to(id, fam.tag))
    throw ParameterError(std::string(to_string(id)) + " does not apply to " + to_string(fam.tag));
  check_range(id, m, n);
  Parts parts;
  if (id == IdentityId::GEN_EIGEN_ANGULAR) {
    parts = angular_parts(fam, m, n);
  } else if (id <= IdentityId::GEN_UV) {
    parts = generic_parts(fam, id, m, n);
  } else if (is_z_identity(id)) {
    parts = z_parts([&](int a, int b) { return construct_unchecked(fam, a, b); }, fam.beta(), id, m, n, opt);
  } else {
    switch (fam.tag) {
      case FamilyTag::M: parts = m_parts(fam, id, m, n); break;
      case FamilyTag::ZQ: parts = zq_parts(fam, id, m, n); break;
      case FamilyTag::Wall: parts = wall_parts(fam, id, m, n); break;
      case FamilyTag::MQ: parts = mq_parts(fam, id, m, n); break;
      default: throw ParameterError("identity/family mismatch");
    }
  }
  return summarize(id, fam.describe(), m, n, parts, tol);
}

IdentityReport check_z_identity_on(const PolyBuilder& build, double beta, IdentityId id, int m, int n,
                                   const Tolerance& tol) {
  tol.validate();
  if (!is_z_identity(id) || id == IdentityId::CONN_Z)
    throw ParameterError("only the Z recurrences, ladders and equations can be transplanted");
  check_range(id, m, n);
  auto safe = [&](int a, int b) { return a < 0 || b < 0 ? Poly{} : build(a, b); };
  return summarize(id, "custom", m, n, z_parts(safe, beta, id, m, n, {}), tol);
}

}  // namespace bivop
