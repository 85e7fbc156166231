#include "bivop/awbiortho.hpp"

#include <cmath>
#include <numbers>

#include "bivop/qcalc.hpp"
#include "bivop/tridiag.hpp"

namespace bivop {

namespace {

constexpr double kPi = std::numbers::pi;

double qinf(double x, double q) { return qpochhammer_inf(x, q); }
double qfin(double x, double q, int n) { return qpochhammer(x, q, n); }

// h(1)h(sqrt q)h(-1)h(-sqrt q) at x = cos theta
double h_numerator(double x, double q) {
  const double sq = std::sqrt(q);
  return aw_h(x, 1.0, q) * aw_h(x, sq, q) * aw_h(x, -1.0, q) * aw_h(x, -sq, q);
}

}  // namespace

void AWParams::validate() const {
  require_q(q);
  for (double v : {a, b, c, d})
    if (!(std::abs(v) < 1.0)) throw ParameterError("Askey-Wilson parameters must lie in (-1,1)");
}

const char* to_string(AWNorm n) { return n == AWNorm::Bare ? "bare" : "standard"; }

double aw_standard_factor(const AWParams& p, int n) {
  if (n < 0) throw ParameterError("degree must be nonnegative");
  if (n == 0) return 1.0;
  if (p.a == 0.0) throw ParameterError("standard normalization needs a != 0");
  return std::pow(p.a, -n) * qfin(p.a * p.b, p.q, n) * qfin(p.a * p.c, p.q, n) * qfin(p.a * p.d, p.q, n);
}

double aw_eval_theta(const AWParams& p, int n, double theta, AWNorm norm) {
  p.validate();
  if (n < 0) throw ParameterError("degree must be nonnegative");
  const double q = p.q;
  const cplx e = std::polar(1.0, theta);
  const cplx v = hyper_terminating(HyperKind::Phi43,
                                   {cplx(qpow(q, -n)), cplx(p.a * p.b * p.c * p.d * qpow(q, n - 1)), p.a * e,
                                    p.a * std::conj(e)},
                                   {cplx(p.a * p.b), cplx(p.a * p.c), cplx(p.a * p.d)}, cplx(q), q);
  const double bare = v.real();
  return norm == AWNorm::Bare ? bare : bare * aw_standard_factor(p, n);
}

double aw_eval(const AWParams& p, int n, double x, AWNorm norm) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("Askey-Wilson argument must lie in [-1,1]");
  return aw_eval_theta(p, n, std::acos(x), norm);
}

double aw_h(double x, double a, double q) {
  require_q(q);
  double prod = 1.0, ak = a;
  while (std::abs(ak) > 1e-17) {
    prod *= 1.0 - 2.0 * ak * x + ak * ak;
    ak *= q;
  }
  return prod;
}

double aw_theta_weight(const AWParams& p, double theta) {
  p.validate();
  const double x = std::cos(theta);
  return h_numerator(x, p.q) / (aw_h(x, p.a, p.q) * aw_h(x, p.b, p.q) * aw_h(x, p.c, p.q) * aw_h(x, p.d, p.q));
}

double aw_weight(const AWParams& p, double x) {
  if (!(std::abs(x) < 1.0)) throw DomainError("Askey-Wilson weight needs |x| < 1");
  const double w = aw_theta_weight(p, std::acos(x)) / std::sqrt(1.0 - x * x);
  if (!(w >= 0.0)) throw NumericalValidityError("negative Askey-Wilson weight");
  return w;
}

double aw_norm(const AWParams& p, int n) {
  p.validate();
  if (n < 0) throw ParameterError("degree must be nonnegative");
  const double q = p.q, qn = qpow(q, n), abcd = p.a * p.b * p.c * p.d;
  double den = qinf(q * qn, q);
  for (double pair : {p.a * p.b, p.a * p.c, p.a * p.d, p.b * p.c, p.b * p.d, p.c * p.d}) den *= qinf(pair * qn, q);
  return 2.0 * kPi * qinf(abcd * qn * qn, q) * qfin(abcd * qpow(q, n - 1), q, n) / den;
}

double aw_norm_for(const AWParams& p, int n, AWNorm norm) {
  const double s = norm == AWNorm::Bare ? aw_standard_factor(p, n) : 1.0;
  return aw_norm(p, n) / (s * s);
}

QuadratureRule theta_rule(int nodes) {
  // Gauss-Legendre from the closed-form Jacobi matrix on (-1,1), mapped to (0,pi).
  // The coefficient-derived recurrence of the radial module is not accurate this far out.
  if (nodes < 1) throw ParameterError("a Gauss rule needs at least one point");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(nodes), off(nodes - 1);
  for (int k = 1; k < nodes; ++k) off(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  const TridiagEigen e = symmetric_tridiagonal_ql(diag, off);
  QuadratureRule r;
  r.nodes = 0.5 * kPi * (e.values.array() + 1.0);
  r.weights = 0.5 * kPi * 2.0 * e.first_components.array().square();
  r.exactness = 2 * nodes - 1;
  return r;
}

GramResult aw_gram_1d(const AWParams& p, int degree_cap, int theta_nodes, AWNorm norm) {
  p.validate();
  if (degree_cap < 0 || degree_cap > 3) throw ParameterError("degree cap must lie in [0, 3]");
  if (theta_nodes < 200) throw ParameterError("at least 200 theta nodes are required");
  const QuadratureRule rule = theta_rule(theta_nodes);
  const int P = degree_cap + 1;
  GramResult g;
  g.matrix = Eigen::MatrixXcd::Zero(P, P);
  g.reference.resize(P);
  g.reference_corrected.resize(P);
  for (int n = 0; n < P; ++n) {
    g.index.push_back({n, 0});
    g.reference(n) = aw_norm(p, n);
    g.reference_corrected(n) = aw_norm_for(p, n, norm);
  }
  Eigen::VectorXd vals(P);
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
    const double th = rule.nodes(k);
    for (int n = 0; n < P; ++n) vals(n) = aw_eval_theta(p, n, th, norm);
    g.matrix += (rule.weights(k) * aw_theta_weight(p, th) * (vals * vals.transpose())).cast<cplx>();
  }
  finalize_gram(g);
  return g;
}

void TensorParams::validate(int index_cap) const {
  first.validate();
  second.validate();
  if (first.q != second.q) throw ParameterError("both blocks must share q");
  if (!(alpha >= 0 && beta >= 0 && gamma >= 0 && delta >= 0))
    throw ParameterError("coupling exponents must be nonnegative");
  if (index_cap < 0 || index_cap > 2) throw ParameterError("index cap must lie in [0, 2]");
}

const char* to_string(TensorSystem s) {
  switch (s) {
    case TensorSystem::UV: return "UV";
    case TensorSystem::PQ: return "PQ";
    case TensorSystem::SELF: return "SELF";
  }
  return "?";
}

GramResult tensor_biortho_check(const TensorParams& tp, TensorSystem system, int index_cap, int theta_nodes,
                                AWNorm norm) {
  tp.validate(index_cap);
  if (theta_nodes < 200) throw ParameterError("at least 200 theta nodes are required");
  const double q = tp.first.q;
  const double a1 = tp.first.a, b1 = tp.first.b, c1 = tp.first.c, d1 = tp.first.d;
  const AWParams& second = tp.second;

  // first-block parameters attached to the k index
  auto shifted = [&](int k) {
    AWParams s = tp.first;
    s.d = d1 * qpow(q, tp.gamma * k + tp.delta);
    if (system == TensorSystem::PQ) s.c = c1 * qpow(q, tp.alpha * k + tp.beta);
    return s;
  };

  const QuadratureRule rule = theta_rule(theta_nodes);
  const int K = index_cap + 1;

  // Y(k,n): second block, one-variable orthogonality
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(K, K);
  for (Eigen::Index l = 0; l < rule.nodes.size(); ++l) {
    const double th = rule.nodes(l);
    Eigen::VectorXd v(K);
    for (int k = 0; k < K; ++k) v(k) = aw_eval_theta(second, k, th, norm);
    Y += rule.weights(l) * aw_theta_weight(second, th) * (v * v.transpose());
  }

  GramResult g;
  for (int j = 0; j < K; ++j)
    for (int k = 0; k < K; ++k) g.index.push_back({j, k});
  const int P = K * K;
  g.matrix = Eigen::MatrixXcd::Zero(P, P);
  g.reference.resize(P);
  g.reference_corrected.resize(P);

  for (int r = 0; r < P; ++r)
    for (int s = 0; s < P; ++s) {
      const auto [j, k] = g.index[r];
      const auto [m, n] = g.index[s];
      const AWParams pk = shifted(k), pn = shifted(n);
      cplx X(0);
      for (Eigen::Index l = 0; l < rule.nodes.size(); ++l) {
        const double th = rule.nodes(l), x = std::cos(th);
        const double poly = aw_eval_theta(pk, j, th, norm) * aw_eval_theta(pn, m, th, norm);
        const double base = h_numerator(x, q) / (aw_h(x, a1, q) * aw_h(x, b1, q));
        cplx w;
        switch (system) {
          case TensorSystem::UV: w = base / (aw_h(x, c1, q) * aw_h(x, pn.d, q)); break;
          case TensorSystem::PQ: w = base / (aw_h(x, pk.c, q) * aw_h(x, pn.d, q)); break;
          case TensorSystem::SELF: {
            const cplx e = std::polar(1.0, th);
            w = base / (aw_h(x, c1, q) * qpochhammer_inf(pk.d * e, q) * qpochhammer_inf(pn.d * std::conj(e), q));
            break;
          }
        }
        X += rule.weights(l) * poly * w;
      }
      g.matrix(r, s) = X * Y(k, n);
    }

  for (int r = 0; r < P; ++r) {
    const auto [j, k] = g.index[r];
    const AWParams pk = shifted(k);
    g.reference_corrected(r) = aw_norm_for(pk, j, norm) * aw_norm_for(second, k, norm);
    const double y_printed = aw_norm(second, k);
    const double A1 = a1 * b1 * c1 * d1;
    const double e = tp.gamma * k + tp.delta;
    double x_printed = 0.0;
    switch (system) {
      case TensorSystem::UV:
        x_printed = qinf(A1 * qpow(q, 2 * j + e), q) * qfin(A1 * qpow(q, j + e - 1), q, j) /
                    (qinf(qpow(q, j + 1), q) * qinf(a1 * b1 * qpow(q, j), q) * qinf(a1 * c1 * qpow(q, j + k), q) *
                     qinf(a1 * d1 * qpow(q, j + e), q) * qinf(b1 * c1 * qpow(q, j + k), q) *
                     qinf(b1 * d1 * qpow(q, j + e), q) * qinf(c1 * d1 * qpow(q, j + e), q));
        break;
      case TensorSystem::PQ: x_printed = aw_norm(pk, j) / (2.0 * kPi); break;
      case TensorSystem::SELF:
        x_printed = qinf(A1 * qpow(q, 2 * j + e), q) * qfin(A1 * qpow(q, j + e - 1), q, j) /
                    (qinf(qpow(q, j + 1), q) * qinf(a1 * b1 * qpow(q, j), q) * qinf(a1 * c1 * qpow(q, j), q) *
                     qinf(b1 * c1 * qpow(q, j), q) * qinf(b1 * c1 * qpow(q, j), q) * qinf(a1 * d1 * qpow(q, j + e), q) *
                     qinf(b1 * d1 * qpow(q, j + e), q) * qinf(c1 * d1 * qpow(q, j + e), q));
        break;
    }
    g.reference(r) = 2.0 * kPi * y_printed * x_printed;
  }
  finalize_gram(g);
  return g;
}

}  // namespace bivop
