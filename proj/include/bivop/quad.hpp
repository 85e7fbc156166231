#pragma once

// Gauss rules, angular reduction, q-lattice sums and Gram matrices of the
// bivariate families.

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "bivop/bivariate.hpp"
#include "bivop/radial.hpp"

namespace bivop {

struct QuadratureRule {
  Eigen::VectorXd nodes;    // ascending
  Eigen::VectorXd weights;  // positive
  int exactness = 0;        // 2 * points - 1
};

// Gauss rule of the orthogonality measure of fam at parameter alpha
// (Laguerre: x^A e^-x on (0,inf); ShiftedJacobi: x^A (1-x)^beta on (0,1)).
QuadratureRule golub_welsch(const RadialFamily& fam, double alpha, int n_points);

// i-th moment of the same measure by the Gamma / Beta recurrences.
double measure_moment(const RadialFamily& fam, double alpha, int i);

// int e^{i(j-k) theta} d theta / 2pi, symbolically.
double angular_integral(int j, int k);
// The same on an equispaced grid of `nodes` points.
cplx angular_integral_trapezoid(int j, int k, int nodes);

enum class MeasureKind { GammaLike, BetaLike, QLatticeWall, QLatticeBilateral, QLatticeJacobi };
const char* to_string(MeasureKind k);

struct MeasureSpec {
  MeasureKind kind = MeasureKind::GammaLike;
  double alpha = 0.0;  // exponent of x carried by the weight
  double beta = 0.0;   // (1-x)^beta for BetaLike
  double gamma = 0.0;  // q^gamma for QLatticeJacobi
  double q = 0.5;
  double c = 1.0;      // bilateral lattice scale

  bool is_lattice() const { return kind != MeasureKind::GammaLike && kind != MeasureKind::BetaLike; }
  // Node x and mass at lattice index k (k < 0 only for the bilateral lattice).
  std::pair<double, double> lattice_point(int k) const;
  void validate() const;
};

// Radial measure of a family: weight x^(beta + offset) with the family's lattice.
MeasureSpec family_measure(const FamilyId& fam);

struct LatticeSumInfo {
  cplx value;
  int terms_forward = 0;   // k >= 0
  int terms_backward = 0;  // k < 0
  double tail_bound = 0.0;
};

// Sum of mass_k * integrand(x_k) with geometric tail bounds; DivergenceError if a
// direction fails to settle.
LatticeSumInfo q_lattice_sum_detail(const MeasureSpec& spec, const std::function<cplx(double)>& integrand,
                                    double tail_tol = 1e-15);
cplx q_lattice_sum(const MeasureSpec& spec, const std::function<cplx(double)>& integrand, double tail_tol = 1e-15);

struct GramResult {
  std::vector<std::pair<int, int>> index;
  Eigen::MatrixXcd matrix;
  Eigen::VectorXd reference;            // printed diagonal values
  Eigen::VectorXd reference_corrected;  // same as reference unless a correction applies
  double max_offdiag = 0.0;             // normalized by sqrt(|G_ii G_jj|)
  double max_diag_rel_err = 0.0;        // against reference
  double max_diag_rel_err_corrected = 0.0;
  double hermitian_defect = 0.0;
};

struct GramOptions {
  bool trapezoid_angular = false;  // sample theta instead of the symbolic reduction
  double tail_tol = 1e-15;
};

// Pairs (m,n) with m,n <= degree_cap. Z uses r dr d theta (the pi in the norm);
// the other families use d theta / 2pi.
GramResult gram(const FamilyId& fam, int degree_cap, const GramOptions& opt = {});

// Fills max_offdiag, max_diag_rel_err(_corrected) and hermitian_defect.
void finalize_gram(GramResult& g);

struct ZeroCircles {
  std::vector<int> m_values;
  std::vector<Eigen::VectorXd> radii;          // eigensolver, ascending
  std::vector<Eigen::VectorXd> radii_bisected;
  bool increasing = true;
  double max_bisection_gap = 0.0;              // in x = r^2
};

// Radii sqrt(zeros of phi_n(.; m-n)) for m in [m_lo, m_hi].
ZeroCircles zero_circle_monotonicity(const FamilyId& fam, int n, int m_lo, int m_hi);

// Bisection on sign changes of phi_n, bracketed between consecutive approximations.
Eigen::VectorXd refine_zeros_bisection(const RadialFamily& fam, int n, double alpha, const Eigen::VectorXd& approx);

}  // namespace bivop
