#include "bivop/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "bivop/qcalc.hpp"
#include "bivop/tridiag.hpp"

namespace bivop {

QuadratureRule golub_welsch(const RadialFamily& fam, double alpha, int n_points) {
  if (n_points < 1) throw ParameterError("a Gauss rule needs at least one point");
  fam.validate_alpha(alpha);
  const JacobiMatrix J = jacobi_matrix(fam, alpha, n_points);
  const TridiagEigen e = symmetric_tridiagonal_ql(J.diag, J.offdiag);
  QuadratureRule r;
  r.nodes = e.values;
  r.weights = J.mass * e.first_components.array().square();
  r.exactness = 2 * n_points - 1;
  return r;
}

double measure_moment(const RadialFamily& fam, double alpha, int i) {
  if (i < 0) throw ParameterError("moment index must be nonnegative");
  fam.validate_alpha(alpha);
  const double A = fam.effective(alpha);
  switch (fam.kind) {
    case RadialKind::Laguerre: {
      double mu = std::tgamma(A + 1.0);
      for (int k = 0; k < i; ++k) mu *= A + k + 1.0;
      return mu;
    }
    case RadialKind::ShiftedJacobi: {
      const double B = fam.beta;
      double mu = std::exp(std::lgamma(A + 1.0) + std::lgamma(B + 1.0) - std::lgamma(A + B + 2.0));
      for (int k = 0; k < i; ++k) mu *= (A + k + 1.0) / (A + B + k + 2.0);
      return mu;
    }
    default: throw ParameterError("moments are provided for the continuous kinds only");
  }
}

double angular_integral(int j, int k) { return j == k ? 1.0 : 0.0; }

cplx angular_integral_trapezoid(int j, int k, int nodes) {
  if (nodes < 1) throw ParameterError("trapezoid rule needs nodes >= 1");
  cplx s(0);
  for (int l = 0; l < nodes; ++l) s += std::polar(1.0, 2.0 * std::numbers::pi * (j - k) * l / nodes);
  return s / double(nodes);
}

const char* to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::GammaLike: return "GammaLike";
    case MeasureKind::BetaLike: return "BetaLike";
    case MeasureKind::QLatticeWall: return "QLatticeWall";
    case MeasureKind::QLatticeBilateral: return "QLatticeBilateral";
    case MeasureKind::QLatticeJacobi: return "QLatticeJacobi";
  }
  return "?";
}

void MeasureSpec::validate() const {
  if (is_lattice()) {
    require_q(q);
    if (kind != MeasureKind::QLatticeBilateral && !(alpha + 1.0 > 0.0))
      throw ParameterError("unilateral lattice needs alpha > -1");
    if (kind == MeasureKind::QLatticeBilateral && !(c > 0.0)) throw ParameterError("lattice scale must be positive");
  } else if (!(alpha > -1.0) || (kind == MeasureKind::BetaLike && !(beta > -1.0))) {
    throw ParameterError("weight exponents must exceed -1");
  }
}

namespace {

// log (a x; q)_inf for a x >= 0 ... or negative arguments with |a x| < 1 per factor.
double log_qpoch_inf(double ax, double q) {
  double s = 0.0, t = ax;
  while (std::abs(t) > 1e-18) {
    s += std::log1p(-t);
    t *= q;
  }
  return s;
}

}  // namespace

std::pair<double, double> MeasureSpec::lattice_point(int k) const {
  if (!is_lattice()) throw ParameterError("not a lattice measure");
  if (k < 0 && kind != MeasureKind::QLatticeBilateral) throw ParameterError("negative index on a unilateral lattice");
  const double x = (kind == MeasureKind::QLatticeBilateral ? c : 1.0) * qpow(q, k);
  double logm = (alpha + 1.0) * std::log(x);
  switch (kind) {
    case MeasureKind::QLatticeWall: logm += log_qpoch_inf(q * x, q); break;
    case MeasureKind::QLatticeJacobi: logm += log_qpoch_inf(q * x, q) - log_qpoch_inf(qpow(q, gamma + 1.0) * x, q); break;
    case MeasureKind::QLatticeBilateral: logm -= log_qpoch_inf(-x, q); break;
    default: break;
  }
  return {x, std::exp(logm)};
}

MeasureSpec family_measure(const FamilyId& fam) {
  if (!fam.has_radial()) throw ParameterError("the Hermite family has no radial measure here");
  const RadialFamily& r = fam.radial;
  MeasureSpec s;
  s.q = r.q;
  switch (r.kind) {
    case RadialKind::Laguerre: s.kind = MeasureKind::GammaLike; s.alpha = r.beta; break;
    case RadialKind::ShiftedJacobi:
      s.kind = MeasureKind::BetaLike;
      s.alpha = r.gamma;
      s.beta = r.beta;
      break;
    case RadialKind::QLaguerre:
      s.kind = MeasureKind::QLatticeBilateral;
      s.alpha = r.beta;
      s.c = r.c;
      break;
    case RadialKind::Wall: s.kind = MeasureKind::QLatticeWall; s.alpha = r.beta; break;
    case RadialKind::LittleQJacobi:
      s.kind = MeasureKind::QLatticeJacobi;
      s.alpha = r.beta;
      s.gamma = r.gamma;
      break;
  }
  return s;
}

namespace {

double magnitude(const cplx& v) { return std::abs(v); }
double magnitude(const Eigen::MatrixXcd& v) { return v.cwiseAbs().maxCoeff(); }

template <class V>
struct Accumulated {
  V value;
  int forward = 0, backward = 0;
  double tail = 0.0;
};

template <class V, class F>
Accumulated<V> lattice_accumulate(const MeasureSpec& spec, F&& integrand, V zero, double tail_tol) {
  spec.validate();
  if (!(tail_tol > 0.0)) throw ParameterError("tail tolerance must be positive");
  constexpr int kMinTerms = 8, kPatience = 50, kMaxTerms = 200000;
  Accumulated<V> out{zero};
  V& acc = out.value;

  // x -> 0: mass ratio tends to q^(alpha+1)
  const double r0 = qpow(spec.q, spec.alpha + 1.0);
  if (!(r0 < 1.0)) throw DivergenceError("lattice sum does not decay towards x = 0");
  double best = std::numeric_limits<double>::infinity();
  int stale = 0;
  for (int k = 0;; ++k) {
    if (k > kMaxTerms) throw DivergenceError("lattice sum exceeded the term budget");
    const auto [x, mass] = spec.lattice_point(k);
    const V term = integrand(x) * mass;
    acc += term;
    const double bound = magnitude(term) * r0 / (1.0 - r0);
    if (bound < best) {
      best = bound;
      stale = 0;
    } else if (++stale > kPatience) {
      throw DivergenceError("tail bound stopped decreasing towards x = 0");
    }
    if (k + 1 >= kMinTerms && bound <= tail_tol * magnitude(acc)) {
      out.forward = k + 1;
      out.tail = bound;
      break;
    }
  }
  if (spec.kind != MeasureKind::QLatticeBilateral) return out;

  // x -> infinity: the (-x;q)_inf denominator wins superexponentially
  double prev_mag = magnitude(integrand(spec.lattice_point(0).first) * spec.lattice_point(0).second);
  double prev_ratio = std::numeric_limits<double>::infinity();
  best = std::numeric_limits<double>::infinity();
  stale = 0;
  for (int k = -1;; --k) {
    if (-k > kMaxTerms) throw DivergenceError("lattice sum exceeded the term budget");
    const auto [x, mass] = spec.lattice_point(k);
    const V term = integrand(x) * mass;
    if (!std::isfinite(magnitude(term))) throw DivergenceError("non-finite lattice term");
    acc += term;
    const double mag = magnitude(term);
    const double ratio = prev_mag > 0.0 ? mag / prev_mag : 0.0;
    double bound = std::numeric_limits<double>::infinity();
    if (ratio < 1.0 && ratio <= prev_ratio) bound = mag * ratio / (1.0 - ratio);
    if (bound < best) {
      best = bound;
      stale = 0;
    } else if (++stale > kPatience) {
      throw DivergenceError("tail bound stopped decreasing towards x = infinity");
    }
    prev_mag = mag;
    prev_ratio = ratio;
    if (-k >= kMinTerms && bound <= tail_tol * magnitude(acc)) {
      out.backward = -k;
      out.tail += bound;
      break;
    }
  }
  return out;
}

}  // namespace

LatticeSumInfo q_lattice_sum_detail(const MeasureSpec& spec, const std::function<cplx(double)>& integrand,
                                    double tail_tol) {
  const auto a = lattice_accumulate(spec, integrand, cplx(0), tail_tol);
  return {a.value, a.forward, a.backward, a.tail};
}

cplx q_lattice_sum(const MeasureSpec& spec, const std::function<cplx(double)>& integrand, double tail_tol) {
  return q_lattice_sum_detail(spec, integrand, tail_tol).value;
}

void finalize_gram(GramResult& g) {
  const auto& G = g.matrix;
  const Eigen::Index P = G.rows();
  g.max_offdiag = g.max_diag_rel_err = g.max_diag_rel_err_corrected = g.hermitian_defect = 0.0;
  for (Eigen::Index i = 0; i < P; ++i) {
    const double d = std::abs(G(i, i));
    g.max_diag_rel_err = std::max(g.max_diag_rel_err, std::abs(G(i, i) - g.reference(i)) / std::abs(g.reference(i)));
    g.max_diag_rel_err_corrected = std::max(
        g.max_diag_rel_err_corrected, std::abs(G(i, i) - g.reference_corrected(i)) / std::abs(g.reference_corrected(i)));
    for (Eigen::Index j = 0; j < P; ++j) {
      g.hermitian_defect = std::max(g.hermitian_defect, std::abs(G(i, j) - std::conj(G(j, i))));
      if (i != j) g.max_offdiag = std::max(g.max_offdiag, std::abs(G(i, j)) / std::sqrt(d * std::abs(G(j, j))));
    }
  }
}

namespace {

// f(r e^{i theta}, r e^{-i theta}) = sum_l e^{i l theta} sum_p c r^p
using Components = std::map<int, std::vector<std::pair<int, cplx>>>;

Components angular_components(const Poly& p) {
  Components c;
  for (const auto& [key, v] : p) c[key.first - key.second].push_back({key.first + key.second, v});
  return c;
}

std::map<int, cplx> component_values(const Components& comps, double r) {
  std::map<int, cplx> out;
  for (const auto& [l, terms] : comps) {
    cplx s(0);
    for (const auto& [p, v] : terms) s += v * std::pow(r, p);
    out[l] = s;
  }
  return out;
}

}  // namespace

GramResult gram(const FamilyId& fam, int degree_cap, const GramOptions& opt) {
  if (degree_cap < 0 || degree_cap > 8) throw ParameterError("degree cap must lie in [0, 8]");
  fam.validate();
  const MeasureSpec spec = family_measure(fam);
  const double norm_const = fam.tag == FamilyTag::Z ? std::numbers::pi : 1.0;

  GramResult g;
  std::vector<Poly> polys;
  std::vector<Components> comps;
  for (int m = 0; m <= degree_cap; ++m)
    for (int n = 0; n <= degree_cap; ++n) {
      g.index.push_back({m, n});
      polys.push_back(construct(fam, m, n));
      comps.push_back(angular_components(polys.back()));
    }
  const int P = static_cast<int>(polys.size());
  g.reference.resize(P);
  for (int i = 0; i < P; ++i) {
    const auto [m, n] = g.index[i];
    g.reference(i) = norm_const * radial_norm(fam.radial, std::min(m, n), std::abs(m - n));
  }
  g.reference_corrected = g.reference;

  const int n_theta = 4 * degree_cap + 1;
  // Gram contribution of the circle of radius sqrt(x), averaged over theta.
  auto at_node = [&](double x) -> Eigen::MatrixXcd {
    const double r = std::sqrt(x);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(P, P);
    if (opt.trapezoid_angular) {
      std::vector<Eigen::VectorXcd> vals(n_theta, Eigen::VectorXcd(P));
      for (int l = 0; l < n_theta; ++l) {
        const cplx z = std::polar(r, 2.0 * std::numbers::pi * l / n_theta);
        for (int i = 0; i < P; ++i) vals[l](i) = eval(polys[i], z, std::conj(z));
      }
      for (const auto& v : vals) M += v * v.adjoint();
      return M / double(n_theta);
    }
    std::vector<std::map<int, cplx>> vals(P);
    for (int i = 0; i < P; ++i) vals[i] = component_values(comps[i], r);
    for (int i = 0; i < P; ++i)
      for (int j = 0; j < P; ++j)
        for (const auto& [l, a] : vals[i]) {
          auto it = vals[j].find(l);
          if (it != vals[j].end()) M(i, j) += a * std::conj(it->second) * angular_integral(l, l);
        }
    return M;
  };

  if (spec.is_lattice()) {
    g.matrix = lattice_accumulate(spec, at_node, Eigen::MatrixXcd::Zero(P, P).eval(), opt.tail_tol).value;
  } else {
    const QuadratureRule rule = golub_welsch(fam.radial, 0.0, degree_cap + 2);
    g.matrix = Eigen::MatrixXcd::Zero(P, P);
    for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) g.matrix += rule.weights(k) * at_node(rule.nodes(k));
  }
  g.matrix *= norm_const;
  finalize_gram(g);
  return g;
}

Eigen::VectorXd refine_zeros_bisection(const RadialFamily& fam, int n, double alpha, const Eigen::VectorXd& approx) {
  if (approx.size() != n || n < 1) throw ParameterError("need n approximate zeros");
  const RadialCoeffs rc = radial_coeffs(fam, n, alpha);
  auto f = [&](double x) { return rc.eval(x); };
  const bool bounded = fam.kind == RadialKind::ShiftedJacobi || fam.kind == RadialKind::Wall ||
                       fam.kind == RadialKind::LittleQJacobi;
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    double lo = i == 0 ? 0.0 : 0.5 * (approx(i - 1) + approx(i));
    double hi;
    if (i + 1 < n) {
      hi = 0.5 * (approx(i) + approx(i + 1));
    } else if (bounded) {
      hi = 1.0;
    } else {
      double step = std::max(1.0, approx(i) - lo);
      hi = approx(i) + step;
      for (int t = 0; t < 60 && f(lo) * f(hi) > 0.0; ++t) hi += (step *= 2.0);
    }
    double flo = f(lo);
    if (flo * f(hi) > 0.0) throw NumericalValidityError("no sign change around zero " + std::to_string(i));
    for (int it = 0; it < 400 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi), fm = f(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    out(i) = 0.5 * (lo + hi);
  }
  return out;
}

ZeroCircles zero_circle_monotonicity(const FamilyId& fam, int n, int m_lo, int m_hi) {
  if (n < 1) throw ParameterError("zero circles need n >= 1");
  if (m_lo < n || m_hi < m_lo) throw RangeError("m range must satisfy n <= m_lo <= m_hi");
  fam.validate();
  ZeroCircles zc;
  for (int m = m_lo; m <= m_hi; ++m) {
    const Eigen::VectorXd x = radial_zeros(fam.radial, n, m - n);
    const Eigen::VectorXd xb = refine_zeros_bisection(fam.radial, n, m - n, x);
    zc.max_bisection_gap = std::max(zc.max_bisection_gap, (x - xb).cwiseAbs().maxCoeff());
    zc.m_values.push_back(m);
    zc.radii.push_back(x.cwiseSqrt());
    zc.radii_bisected.push_back(xb.cwiseSqrt());
    if (zc.radii.size() > 1) {
      const auto& prev = zc.radii[zc.radii.size() - 2];
      if (!((zc.radii.back().array() > prev.array()).all())) zc.increasing = false;
    }
  }
  return zc;
}

}  // namespace bivop
