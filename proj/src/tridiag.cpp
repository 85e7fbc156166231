#include "bivop/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "bivop/errors.hpp"

namespace bivop {

TridiagEigen symmetric_tridiagonal_ql(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag) {
  const Eigen::Index n = diag.size();
  if (n == 0) return {};
  if (offdiag.size() != n - 1) throw ParameterError("off-diagonal must have size n-1");

  Eigen::VectorXd d = diag;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e.head(n - 1) = offdiag;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  z(0) = 1.0;
  const double eps = std::numeric_limits<double>::epsilon();

  for (Eigen::Index l = 0; l < n; ++l) {
    int iter = 0;
    Eigen::Index m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d(m)) + std::abs(d(m + 1));
        if (std::abs(e(m)) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw NumericalValidityError("tridiagonal QL did not converge");

      // Wilkinson shift from the leading 2x2 block.
      double g = (d(l + 1) - d(l)) / (2.0 * e(l));
      double r = std::hypot(g, 1.0);
      g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      Eigen::Index i = m - 1;
      bool deflated = false;
      for (; i >= l; --i) {
        const double f = s * e(i);
        const double b = c * e(i);
        r = std::hypot(f, g);
        e(i + 1) = r;
        if (r == 0.0) {
          d(i + 1) -= p;
          e(m) = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d(i + 1) - p;
        r = (d(i) - g) * s + 2.0 * c * b;
        p = s * r;
        d(i + 1) = g + p;
        g = c * r - b;
        const double zf = z(i + 1);
        z(i + 1) = s * z(i) + c * zf;
        z(i) = c * z(i) - s * zf;
      }
      if (deflated) continue;
      d(l) -= p;
      e(l) = g;
      e(m) = 0.0;
    } while (m != l);
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return d(a) < d(b); });
  TridiagEigen out{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = d(order[k]);
    out.first_components(k) = z(order[k]);
  }
  return out;
}

}  // namespace bivop
