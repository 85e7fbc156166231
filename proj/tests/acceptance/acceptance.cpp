// One verdict line per criterion. Exit status 0 iff every requested criterion passes.
// Criteria whose literal statement does not hold report FAIL with the corrected
// measurement alongside.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bivop/awbiortho.hpp"
#include "bivop/bivariate.hpp"
#include "bivop/quad.hpp"

using namespace bivop;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> notes;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<double> kGrid = {-0.5, 0.0, 0.7, 2.0};
const std::vector<double> kQs = {0.3, 0.5, 0.8};

// ---- 1, 2: Gram matrices ----

struct GramTally {
  double off = 0.0, diag = 0.0;
  std::string worst_off, worst_diag;
  int count = 0;
  void add(const FamilyId& f, const GramResult& g) {
    ++count;
    if (g.max_offdiag > off) {
      off = g.max_offdiag;
      worst_off = f.describe();
    }
    if (g.max_diag_rel_err > diag) {
      diag = g.max_diag_rel_err;
      worst_diag = f.describe();
    }
  }
};

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  GramTally t;
  for (double b : {0.0, 0.5, 2.0}) t.add(FamilyId::z(b), gram(FamilyId::z(b), 4));
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = t.off < 1e-9 && t.diag < 1e-8 && secs < 5.0;
  o.summary = fmt("Z Gram, beta in {0,0.5,2}, m,n<=4: max offdiag %.2e (<1e-9), max diag rel err %.2e (<1e-8), %.2fs",
                  t.off, t.diag, secs);
  return o;
}

Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  GramTally m, lattice;
  for (double b : kGrid)
    for (double g : kGrid) m.add(FamilyId::m(b, g), gram(FamilyId::m(b, g), 4));
  for (double q : kQs)
    for (double b : kGrid) {
      lattice.add(FamilyId::wall(b, q), gram(FamilyId::wall(b, q), 4));
      for (double g : kGrid) lattice.add(FamilyId::mq(b, g, q), gram(FamilyId::mq(b, g, q), 4));
    }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = m.off < 1e-9 && m.diag < 1e-8 && lattice.off < 1e-9 && lattice.diag < 1e-7 && secs < 20.0;
  o.summary = fmt("M Gram (%d sets): offdiag %.2e, diag %.2e; Wall+MQ lattice Gram (%d sets): offdiag %.2e, diag %.2e "
                  "(<1e-7); %.2fs",
                  m.count, m.off, m.diag, lattice.count, lattice.off, lattice.diag, secs);
  o.notes.push_back("worst lattice diagonal: " + lattice.worst_diag + ", worst lattice offdiag: " + lattice.worst_off);
  return o;
}

// ---- 3: identity sweep ----

std::vector<FamilyId> sweep_families() {
  std::vector<FamilyId> fams;
  for (double b : kGrid) {
    fams.push_back(FamilyId::z(b));
    for (double q : kQs) {
      fams.push_back(FamilyId::zq(b, q));
      fams.push_back(FamilyId::wall(b, q));
    }
    for (double g : kGrid) {
      fams.push_back(FamilyId::m(b, g));
      for (double q : kQs) fams.push_back(FamilyId::mq(b, g, q));
    }
  }
  return fams;
}

Outcome criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  const Tolerance tol;
  struct Count {
    int pass = 0, kd = 0, fail = 0, derived_fail = 0;
    double derived_worst = 0.0;
  };
  std::map<std::string, Count> by_id;
  int checks = 0, range_skips = 0, singular_skips = 0;
  for (const auto& f : sweep_families())
    for (IdentityId id : identities_for(f.tag))
      for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n) {
          try {
            const IdentityReport r = check_identity(f, id, m, n, tol);
            ++checks;
            Count& c = by_id[to_string(id)];
            if (r.verdict == Verdict::Pass) ++c.pass;
            if (r.verdict == Verdict::KnownDiscrepancy) {
              ++c.kd;
              c.derived_worst = std::max(c.derived_worst, r.derived_residual / std::max(1.0, r.scale));
            }
            if (r.verdict == Verdict::Fail) ++c.fail;
          } catch (const RangeError&) {
            ++range_skips;
          } catch (const SingularParameterError&) {
            ++singular_skips;
          }
        }
  for (const auto& f : {FamilyId::hermite()})
    for (int m = 0; m <= 6; ++m)
      for (int n = 0; n <= 6; ++n) {
        const auto r = check_identity(f, IdentityId::GEN_EIGEN_ANGULAR, m, n, tol);
        ++checks;
        by_id["GEN_EIGEN_ANGULAR"].pass += r.verdict == Verdict::Pass;
        by_id["GEN_EIGEN_ANGULAR"].fail += r.verdict != Verdict::Pass;
      }
  const double secs = seconds_since(t0);

  Outcome o;
  int fails = 0, listed_kd = 0, unlisted_kd = 0;
  std::string unlisted;
  for (const auto& [name, c] : by_id) {
    fails += c.fail;
    if (c.kd == 0) continue;
    if (listed_discrepancy(parse_identity(name))) {
      listed_kd += c.kd;
    } else {
      unlisted_kd += c.kd;
      unlisted += (unlisted.empty() ? "" : ",") + name;
    }
    o.notes.push_back(fmt("%-18s printed fails at %4d of %4d points; derived form passes at all of them", name.c_str(),
                          c.kd, c.kd + c.pass));
  }
  o.pass = fails == 0 && unlisted_kd == 0 && secs < 60.0;
  o.summary = fmt("identity sweep: %d checks, %d FAIL, %d listed discrepancies (ZQ_RR2, M_PDE2), %d unlisted "
                  "discrepancies [%s], skips: %d out-of-range, %d singular; %.2fs",
                  checks, fails, listed_kd, unlisted_kd, unlisted.c_str(), range_skips, singular_skips, secs);
  return o;
}

// ---- 4: connection ----

Outcome criterion4() {
  double printed = 0.0, corrected = 0.0;
  double to_p = 0.0, to_c = 0.0, from_p = 0.0, from_c = 0.0;
  for (auto [b, g] : std::vector<std::pair<double, double>>{{1, 0}, {0.5, 2}, {2, -0.5}})
    for (int m = 0; m <= 6; ++m)
      for (int n = 0; n <= m; ++n) {
        const auto r = connection_Z(m, n, b, g);
        printed = std::max(printed, r.printed_residual);
        corrected = std::max(corrected, r.corrected_residual);
        to_p = std::max(to_p, r.hermite_to_residual);
        to_c = std::max(to_c, r.hermite_to_corrected);
        from_p = std::max(from_p, r.hermite_from_residual);
        from_c = std::max(from_c, r.hermite_from_corrected);
      }
  Outcome o;
  const double printed_all = std::max({printed, to_p, from_p});
  o.pass = printed_all < 1e-11;
  o.summary = fmt("connection relations as printed, m,n<=6: max residual %.2e (<1e-11)", printed_all);
  o.notes.push_back(fmt("printed: beta->gamma %.2e, Z->H %.2e, H->Z %.2e", printed, to_p, from_p));
  o.notes.push_back(fmt("with the sign factors corrected: beta->gamma %.2e, Z->H %.2e, H->Z %.2e", corrected, to_c,
                        from_c));
  return o;
}

// ---- 5: generating functions and convolution ----

Outcome criterion5(unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto disc = [&](double radius) { return std::polar(radius * std::sqrt(unit(rng)), 2.0 * M_PI * unit(rng)); };

  std::map<std::string, double> printed, corrected;
  const FamilyId z = FamilyId::z(0.4), m = FamilyId::m(0.5, 1.2);
  for (int i = 0; i < 10; ++i) {
    GenFunPoint pt{disc(0.15), disc(0.15), disc(1.0), disc(1.0), 30};
    for (GenFun g : {GenFun::Z_EXP, GenFun::M_EXP, GenFun::M_PLAIN, GenFun::M_DOUBLE}) {
      const auto r = genfun_check(g == GenFun::Z_EXP ? z : m, g, pt);
      printed[to_string(g)] = std::max(printed[to_string(g)], r.residual_printed);
      corrected[to_string(g)] = std::max(corrected[to_string(g)], r.residual_corrected);
    }
  }
  std::vector<ConvolutionPoint> pts;
  for (int i = 0; i < 5; ++i) pts.push_back({disc(1.0), disc(1.0), disc(1.0), disc(1.0)});
  double conv_p = 0.0, conv_c = 0.0;
  for (int mm = 0; mm <= 4; ++mm)
    for (int n = 0; n <= std::min(mm, 3); ++n) {
      const auto r = convolution_Z_check(mm, n, 0.3, 1.2, pts);
      conv_p = std::max(conv_p, r.residual_printed);
      conv_c = std::max(conv_c, r.residual_corrected);
    }
  double gen_p = 0.0;
  for (const auto& [k, v] : printed) gen_p = std::max(gen_p, v);
  Outcome o;
  o.pass = gen_p < 1e-8 && conv_p < 1e-9;
  o.summary = fmt("generating functions at 10 points, N=30: max residual %.2e (<1e-8); convolution, (m,n)<=(4,3): "
                  "%.2e (<1e-9)",
                  gen_p, conv_p);
  for (const auto& [k, v] : printed)
    o.notes.push_back(fmt("%-8s printed %.2e, corrected %.2e", k.c_str(), v, corrected[k]));
  o.notes.push_back(fmt("convolution printed %.2e, corrected %.2e", conv_p, conv_c));
  return o;
}

// ---- 6: power-series solver ----

Outcome criterion6() {
  const int cutoff = 14;
  double row_match = 0.0, row_op = 0.0, col_match = 0.0, col_op = 0.0;
  for (double b : {0.5, 1.5})
    for (int n = 0; n <= 3; ++n) {
      for (int p = 0; p <= 3; ++p) {
        const Poly s = pde_series_solution(b, n, {{{p, 1.0}}, {}}, cutoff);
        row_match = std::max(row_match, max_abs(s - series_closed_row(b, n, p)));
        row_op = std::max(row_op, max_abs(series_operator(s, b, n)));
      }
      for (int r = 1; r <= n; ++r) {
        const Poly s = pde_series_solution(b, n, {{}, {{r, 1.0}}}, cutoff);
        col_match = std::max(col_match, max_abs(s - series_closed_column(b, n, r)));
        col_op = std::max(col_op, max_abs(series_operator(s, b, n)));
      }
    }
  Outcome o;
  o.pass = std::max({row_match, row_op, col_match, col_op}) < 1e-11;
  o.summary = fmt("series solver, n<=3, beta in {0.5,1.5}: closed-form match row %.2e / column %.2e, operator "
                  "residual row %.2e / column %.2e (<1e-11)",
                  row_match, col_match, row_op, col_op);
  if (col_op >= 1e-11)
    o.notes.push_back("column boundary data leave beta*r at z2^(r-1): such series solve the equation only for beta = 0");
  return o;
}

// ---- 7: zero circles ----

Outcome criterion7() {
  bool increasing = true;
  double gap = 0.0;
  int cases = 0;
  std::vector<FamilyId> fams;
  for (double b : {0.0, 0.5, 2.0}) fams.push_back(FamilyId::z(b));
  for (auto [b, g] : std::vector<std::pair<double, double>>{{0, 0}, {0.5, 1.5}, {2, -0.5}}) fams.push_back(FamilyId::m(b, g));
  for (const auto& f : fams)
    for (int n = 1; n <= 3; ++n) {
      const auto zc = zero_circle_monotonicity(f, n, n, n + 5);
      increasing = increasing && zc.increasing;
      gap = std::max(gap, zc.max_bisection_gap);
      ++cases;
    }
  Outcome o;
  o.pass = increasing && gap < 1e-9;
  o.summary = fmt("zero circles, %d (family,n) cases, m in n..n+5: radii %s in m, eigen vs bisection %.2e (<1e-9)",
                  cases, increasing ? "strictly increasing" : "NOT increasing", gap);
  return o;
}

// ---- 8: Askey-Wilson ----

Outcome criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  const AWParams p{0.2, -0.3, 0.1, 0.4, 0.5};
  const GramResult bare = aw_gram_1d(p, 3, 256, AWNorm::Bare);
  const GramResult standard = aw_gram_1d(p, 3, 256, AWNorm::Standard);
  TensorParams tp;
  tp.first = p;
  tp.second = AWParams{0.1, 0.2, -0.3, 0.4, 0.5};
  const GramResult self_bare = tensor_biortho_check(tp, TensorSystem::SELF, 2, 256, AWNorm::Bare);
  const GramResult self_std = tensor_biortho_check(tp, TensorSystem::SELF, 2, 256, AWNorm::Standard);
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = bare.max_diag_rel_err < 1e-6 && bare.max_offdiag < 1e-7 && self_bare.max_offdiag < 1e-6 &&
           self_bare.max_diag_rel_err < 1e-5 && secs < 30.0;
  o.summary = fmt("Askey-Wilson as displayed: 1D diag rel err %.2e (<1e-6), offdiag %.2e; tensor offdiag %.2e (<1e-6), "
                  "diag rel err %.2e (<1e-5); %.2fs",
                  bare.max_diag_rel_err, bare.max_offdiag, self_bare.max_offdiag, self_bare.max_diag_rel_err, secs);
  o.notes.push_back(fmt("1D, displayed polynomial vs norm rescaled to it: %.2e; standard normalization vs norm: %.2e",
                        bare.max_diag_rel_err_corrected, standard.max_diag_rel_err));
  o.notes.push_back(fmt("tensor, standard normalization: vs printed closed form %.2e, vs product of 1D norms %.2e, "
                        "offdiag %.2e",
                        self_std.max_diag_rel_err, self_std.max_diag_rel_err_corrected, self_std.max_offdiag));
  return o;
}

// ---- 9: q -> 1 ----

Outcome criterion9() {
  const double beta = 0.7;
  const std::vector<IdentityId> ids = {
      IdentityId::Z_RR1,     IdentityId::Z_RR2,     IdentityId::Z_DIAG,    IdentityId::Z_LADDER1,
      IdentityId::Z_LADDER2, IdentityId::Z_LADDER3, IdentityId::Z_LADDER4, IdentityId::Z_LADDER5,
      IdentityId::Z_LADDER6, IdentityId::Z_PDE,     IdentityId::Z_ODE};
  const std::vector<double> qs = {0.9, 0.99, 0.999};
  std::map<std::string, std::vector<double>> series;
  for (double q : qs) {
    const FamilyId zq = FamilyId::zq(beta, q), z = FamilyId::z(beta);
    auto build = [&](int a, int b) { return scale_q_to_one(construct(zq, a, b), q); };
    double poly_gap = 0.0;
    for (IdentityId id : ids) {
      double worst = 0.0;
      for (int m = 0; m <= 5; ++m)
        for (int n = 0; n <= m; ++n) {
          const auto r = check_z_identity_on(build, beta, id, m, n, Tolerance{});
          worst = std::max(worst, r.max_residual);
        }
      series[to_string(id)].push_back(worst);
    }
    for (int m = 0; m <= 5; ++m)
      for (int n = 0; n <= 5; ++n) poly_gap = std::max(poly_gap, max_abs(build(m, n) - construct(z, m, n)));
    series["S_q(ZQ)-Z"].push_back(poly_gap);
  }
  // Rate per decade of 1-q. The last pair is the asymptotic one; q = 0.9 is still
  // pre-asymptotic and only reported.
  Outcome o;
  o.pass = true;
  double lo = 1e300, hi = -1e300, early = 1e300;
  for (const auto& [name, v] : series) {
    std::string line = fmt("%-10s", name.c_str());
    for (double x : v) line += fmt(" %.3e", x);
    if (v.back() > 1e-12) {
      const double late = std::log10(v[1] / v[2]);
      const double first = std::log10(v[0] / v[1]);
      lo = std::min(lo, late);
      hi = std::max(hi, late);
      early = std::min(early, first);
      if (!(v[0] > v[1] && v[1] > v[2]) || late < 0.9 || late > 1.1) o.pass = false;
      line += fmt("  slope %.3f then %.3f", first, late);
    } else {
      line += "  exact at every q";
    }
    o.notes.push_back(line);
  }
  o.summary = fmt("q->1: scaled ZQ against the Z identities, m,n<=5, q in {0.9,0.99,0.999}: residuals decrease, "
                  "observed order between q=0.99 and 0.999 in [%.3f, %.3f] (want 1 +- 0.1); from q=0.9 min %.3f",
                  lo, hi, early);
  return o;
}

Outcome run(int c, unsigned seed) {
  switch (c) {
    case 1: return criterion1();
    case 2: return criterion2();
    case 3: return criterion3();
    case 4: return criterion4();
    case 5: return criterion5(seed);
    case 6: return criterion6();
    case 7: return criterion7();
    case 8: return criterion8();
    case 9: return criterion9();
  }
  return {false, "unknown criterion", {}};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  unsigned seed = 20240521u;
  bool verbose = true;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) {
      which.push_back(std::atoi(argv[++i]));
    } else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) {
      seed = static_cast<unsigned>(std::strtoul(argv[++i], nullptr, 10));
    } else if (!std::strcmp(argv[i], "--quiet")) {
      verbose = false;
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]... [--seed S] [--quiet]\n");
      return 2;
    }
  }
  if (which.empty())
    for (int c = 1; c <= 9; ++c) which.push_back(c);
  bool all = true;
  for (int c : which) {
    Outcome o;
    try {
      o = run(c, seed);
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("error: ") + e.what();
    }
    all = all && o.pass;
    std::printf("criterion %d %s  %s\n", c, o.pass ? "PASS" : "FAIL", o.summary.c_str());
    if (verbose)
      for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  }
  return all ? 0 : 1;
}
