// bivop: evaluate families, Gram matrices, identity sweeps, zero circles and
// generating-function checks. Exit 0 = pass, 1 = check failure, 2 = usage error.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bivop/bivariate.hpp"
#include "bivop/quad.hpp"

using namespace bivop;
using ojson = nlohmann::ordered_json;

namespace {

struct Globals {
  std::string format = "csv";
  std::string out;
  double tol_abs = 1e-10, tol_rel = 1e-9;
  unsigned seed = 12345u;
};

struct FamilyArgs {
  std::string family = "Z";
  double beta = 0.0, gamma = 0.0, q = 0.5, c = 1.0;

  void add_to(CLI::App* app) {
    app->add_option("--family", family, "Z, H, M, ZQ, WALL, MQ")->required();
    app->add_option("--beta", beta, "radial parameter beta");
    app->add_option("--gamma", gamma, "second Jacobi parameter");
    app->add_option("--q", q, "base q in (0,1)");
    app->add_option("--c", c, "bilateral lattice scale for ZQ");
  }
  FamilyId build() const {
    std::string s = family;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::toupper(ch); });
    FamilyId f;
    switch (parse_family_tag(s)) {
      case FamilyTag::Z: f = FamilyId::z(beta); break;
      case FamilyTag::Hermite2D: f = FamilyId::hermite(); break;
      case FamilyTag::M: f = FamilyId::m(beta, gamma); break;
      case FamilyTag::ZQ: f = FamilyId::zq(beta, q, c); break;
      case FamilyTag::Wall: f = FamilyId::wall(beta, q); break;
      case FamilyTag::MQ: f = FamilyId::mq(beta, gamma, q); break;
      case FamilyTag::Generic: throw ParameterError("the generic family needs a radial kind; use a named family");
    }
    f.validate();
    return f;
  }
};

// Column-ordered records, written once at the end.
struct Report {
  std::string command;
  std::vector<ojson> records;
  ojson summary = ojson::object();
};

std::string csv_cell(const ojson& v) {
  char buf[64];
  if (v.is_number_float()) {
    std::snprintf(buf, sizeof buf, "%.16e", v.get<double>());
    return buf;
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return quoted + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

// Non-finite floats are not valid JSON numbers; write them as strings.
ojson sanitize(const ojson& v) {
  if (v.is_number_float() && !std::isfinite(v.get<double>())) {
    const double d = v.get<double>();
    return std::isnan(d) ? "nan" : (d > 0 ? "inf" : "-inf");
  }
  if (v.is_object()) {
    ojson o = ojson::object();
    for (auto it = v.begin(); it != v.end(); ++it) o[it.key()] = sanitize(it.value());
    return o;
  }
  if (v.is_array()) {
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(sanitize(x));
    return a;
  }
  return v;
}

std::string render(const Report& r, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    ojson doc;
    doc["schema"] = 1;
    doc["command"] = r.command;
    doc["records"] = ojson::array();
    for (const auto& rec : r.records) doc["records"].push_back(sanitize(rec));
    doc["summary"] = sanitize(r.summary);
    os << doc.dump(2) << "\n";
    return os.str();
  }
  if (!r.records.empty()) {
    bool first = true;
    for (auto it = r.records.front().begin(); it != r.records.front().end(); ++it) {
      os << (first ? "" : ",") << it.key();
      first = false;
    }
    os << "\n";
    for (const auto& rec : r.records) {
      first = true;
      for (auto it = rec.begin(); it != rec.end(); ++it) {
        os << (first ? "" : ",") << csv_cell(it.value());
        first = false;
      }
      os << "\n";
    }
  }
  os << "# summary";
  for (auto it = r.summary.begin(); it != r.summary.end(); ++it) os << " " << it.key() << "=" << csv_cell(it.value());
  os << "\n";
  return os.str();
}

cplx parse_complex(const std::string& s) {
  // "re" or "re,im"
  const auto comma = s.find(',');
  std::size_t used = 0;
  const double re = std::stod(s.substr(0, comma), &used);
  if (comma == std::string::npos) {
    if (used != s.size()) throw ParameterError("bad complex value '" + s + "'");
    return {re, 0.0};
  }
  const std::string tail = s.substr(comma + 1);
  const double im = std::stod(tail, &used);
  if (used != tail.size()) throw ParameterError("bad complex value '" + s + "'");
  return {re, im};
}

// ---- subcommands ----

struct EvalArgs {
  FamilyArgs fam;
  int m = 0, n = 0;
  std::vector<std::string> z1 = {"1"}, z2 = {"1"};
  bool coeffs = false;
};

int cmd_eval(const EvalArgs& a, Report& r) {
  const FamilyId f = a.fam.build();
  if (a.z1.size() != a.z2.size()) throw ParameterError("--z1 and --z2 must be given the same number of times");
  const Poly p = construct(f, a.m, a.n);
  r.summary["family"] = f.describe();
  r.summary["m"] = a.m;
  r.summary["n"] = a.n;
  if (a.coeffs) {
    for (const auto& [key, c] : p) {
      ojson rec;
      rec["j"] = key.first;
      rec["k"] = key.second;
      rec["coeff_re"] = c.real();
      rec["coeff_im"] = c.imag();
      r.records.push_back(rec);
    }
    return 0;
  }
  for (std::size_t i = 0; i < a.z1.size(); ++i) {
    const cplx z1 = parse_complex(a.z1[i]), z2 = parse_complex(a.z2[i]);
    const cplx v = eval(p, z1, z2);
    ojson rec;
    rec["z1_re"] = z1.real();
    rec["z1_im"] = z1.imag();
    rec["z2_re"] = z2.real();
    rec["z2_im"] = z2.imag();
    rec["value_re"] = v.real();
    rec["value_im"] = v.imag();
    r.records.push_back(rec);
  }
  return 0;
}

struct GramArgs {
  FamilyArgs fam;
  int cap = 3;
  bool trapezoid = false;
  bool full = false;
};

int cmd_gram(const GramArgs& a, const Globals&, Report& r) {
  const FamilyId f = a.fam.build();
  GramOptions opt;
  opt.trapezoid_angular = a.trapezoid;
  const GramResult g = gram(f, a.cap, opt);
  const double diag_tol = f.is_q() ? 1e-7 : 1e-8;
  const int P = static_cast<int>(g.index.size());
  for (int i = 0; i < P; ++i)
    for (int j = 0; j < P; ++j) {
      if (!a.full && i != j) continue;
      ojson rec;
      rec["m"] = g.index[i].first;
      rec["n"] = g.index[i].second;
      rec["s"] = g.index[j].first;
      rec["t"] = g.index[j].second;
      rec["value_re"] = g.matrix(i, j).real();
      rec["value_im"] = g.matrix(i, j).imag();
      rec["reference"] = i == j ? g.reference(i) : 0.0;
      r.records.push_back(rec);
    }
  const bool pass = g.max_offdiag < 1e-9 && g.max_diag_rel_err < diag_tol;
  r.summary["family"] = f.describe();
  r.summary["cap"] = a.cap;
  r.summary["max_offdiag"] = g.max_offdiag;
  r.summary["max_diag_rel_err"] = g.max_diag_rel_err;
  r.summary["hermitian_defect"] = g.hermitian_defect;
  r.summary["verdict"] = pass ? "PASS" : "FAIL";
  return pass ? 0 : 1;
}

struct CheckArgs {
  FamilyArgs fam;
  std::string ids = "all";
  int max_degree = 6;
  bool printed_form = false;
  double conn_gamma = 0.0;
};

std::vector<IdentityId> select_ids(const std::string& spec, FamilyTag tag) {
  if (spec == "all") return identities_for(tag);
  std::vector<IdentityId> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) {
      const IdentityId id = parse_identity(tok);
      if (!applies_to(id, tag)) throw ParameterError(std::string(to_string(id)) + " does not apply to this family");
      out.push_back(id);
    }
  return out;
}

int cmd_check(const CheckArgs& a, const Globals& gl, Report& r) {
  const FamilyId f = a.fam.build();
  const std::vector<IdentityId> ids = select_ids(a.ids, f.tag);
  Tolerance tol{gl.tol_abs, gl.tol_rel};
  tol.validate();
  CheckOptions opt;
  opt.conn_gamma = a.conn_gamma;
  int pass = 0, kd = 0, fail = 0, skipped = 0;
  for (IdentityId id : ids)
    for (int m = 0; m <= a.max_degree; ++m)
      for (int n = 0; n <= a.max_degree; ++n) {
        IdentityReport rep;
        try {
          rep = check_identity(f, id, m, n, tol, opt);
        } catch (const RangeError&) {
          continue;
        } catch (const SingularParameterError&) {
          ++skipped;
          continue;
        }
        ojson rec;
        rec["id"] = to_string(id);
        rec["m"] = m;
        rec["n"] = n;
        rec["residual"] = a.printed_form ? rep.max_residual : rep.derived_residual;
        rec["printed_residual"] = rep.max_residual;
        rec["derived_residual"] = rep.derived_residual;
        rec["scale"] = rep.scale;
        rec["verdict"] = to_string(rep.verdict);
        rec["listed"] = rep.listed;
        r.records.push_back(rec);
        pass += rep.verdict == Verdict::Pass;
        kd += rep.verdict == Verdict::KnownDiscrepancy;
        fail += rep.verdict == Verdict::Fail;
      }
  r.summary["family"] = f.describe();
  r.summary["records"] = static_cast<int>(r.records.size());
  r.summary["pass"] = pass;
  r.summary["known_discrepancy"] = kd;
  r.summary["fail"] = fail;
  r.summary["singular_skipped"] = skipped;
  return fail == 0 ? 0 : 1;
}

struct ZerosArgs {
  FamilyArgs fam;
  int n = 1, m_lo = -1, m_hi = -1;
};

int cmd_zeros(const ZerosArgs& a, Report& r) {
  const FamilyId f = a.fam.build();
  const int lo = a.m_lo < 0 ? a.n : a.m_lo;
  const int hi = a.m_hi < 0 ? lo + 5 : a.m_hi;
  const ZeroCircles zc = zero_circle_monotonicity(f, a.n, lo, hi);
  for (std::size_t i = 0; i < zc.m_values.size(); ++i) {
    ojson rec;
    rec["m"] = zc.m_values[i];
    for (Eigen::Index k = 0; k < zc.radii[i].size(); ++k) rec["radius_" + std::to_string(k + 1)] = zc.radii[i](k);
    rec["monotone"] = zc.increasing;
    r.records.push_back(rec);
  }
  r.summary["family"] = f.describe();
  r.summary["increasing"] = zc.increasing;
  r.summary["max_bisection_gap"] = zc.max_bisection_gap;
  return zc.increasing && zc.max_bisection_gap < 1e-9 ? 0 : 1;
}

struct GenFunArgs {
  FamilyArgs fam;
  std::string which = "Z_EXP";
  int points = 10, N = 30;
  double uv_radius = 0.15, z_radius = 1.0, tol = 1e-8;
};

int cmd_genfun(const GenFunArgs& a, const Globals& gl, Report& r) {
  const FamilyId f = a.fam.build();
  const GenFun g = parse_genfun(a.which);
  if (a.points < 0 || a.N < 0) throw ParameterError("--points and --N must be nonnegative");
  std::mt19937_64 rng(gl.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto disc = [&](double radius) { return std::polar(radius * std::sqrt(unit(rng)), 2.0 * M_PI * unit(rng)); };
  double worst = 0.0, worst_corrected = 0.0;
  for (int i = 0; i < a.points; ++i) {
    GenFunPoint pt;
    pt.u = disc(a.uv_radius);
    pt.v = disc(a.uv_radius);
    pt.z1 = disc(a.z_radius);
    pt.z2 = disc(a.z_radius);
    pt.N = a.N;
    const GenFunResult res = genfun_check(f, g, pt);
    ojson rec;
    rec["u_re"] = pt.u.real();
    rec["u_im"] = pt.u.imag();
    rec["v_re"] = pt.v.real();
    rec["v_im"] = pt.v.imag();
    rec["z1_re"] = pt.z1.real();
    rec["z1_im"] = pt.z1.imag();
    rec["z2_re"] = pt.z2.real();
    rec["z2_im"] = pt.z2.imag();
    rec["truncated_re"] = res.truncated.real();
    rec["truncated_im"] = res.truncated.imag();
    rec["residual_printed"] = res.residual_printed;
    rec["residual_corrected"] = res.residual_corrected;
    rec["tail"] = res.tail;
    r.records.push_back(rec);
    worst = std::max(worst, res.residual_printed);
    worst_corrected = std::max(worst_corrected, res.residual_corrected);
  }
  r.summary["family"] = f.describe();
  r.summary["which"] = to_string(g);
  r.summary["max_residual_printed"] = worst;
  r.summary["max_residual_corrected"] = worst_corrected;
  r.summary["verdict"] = worst < a.tol ? "PASS" : "FAIL";
  return worst < a.tol ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bivariate orthogonal polynomial families: evaluation and numerical verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_option("--format", gl.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", gl.out, "output file (default stdout)");
  app.add_option("--tol-abs", gl.tol_abs, "absolute tolerance for identity checks");
  app.add_option("--tol-rel", gl.tol_rel, "relative tolerance for identity checks");
  app.add_option("--seed", gl.seed, "seed for sampled points");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate f_{m,n} at points, or list its coefficients");
  ev.fam.add_to(eval_cmd);
  eval_cmd->add_option("--m", ev.m)->required();
  eval_cmd->add_option("--n", ev.n)->required();
  eval_cmd->add_option("--z1", ev.z1, "points as re or re,im (repeatable)");
  eval_cmd->add_option("--z2", ev.z2, "points as re or re,im (repeatable)");
  eval_cmd->add_flag("--coeffs", ev.coeffs, "emit the coefficient table instead");

  GramArgs gr;
  auto* gram_cmd = app.add_subcommand("gram", "quadrature Gram matrix against the closed-form norms");
  gr.fam.add_to(gram_cmd);
  gram_cmd->add_option("--cap", gr.cap, "degree cap, at most 8");
  gram_cmd->add_flag("--trapezoid", gr.trapezoid, "angular integrals by the trapezoid rule");
  gram_cmd->add_flag("--full", gr.full, "emit every entry, not only the diagonal");

  CheckArgs ck;
  auto* check_cmd = app.add_subcommand("check", "identity sweep over 0 <= m,n <= max-degree");
  ck.fam.add_to(check_cmd);
  check_cmd->add_option("--ids", ck.ids, "'all' or a comma-separated list");
  check_cmd->add_option("--max-degree", ck.max_degree);
  check_cmd->add_flag("--printed-form", ck.printed_form, "report the residual of the printed form");
  check_cmd->add_option("--conn-gamma", ck.conn_gamma, "target parameter of CONN_Z");

  ZerosArgs zr;
  auto* zeros_cmd = app.add_subcommand("zeros", "radii of the zero circles for m in [m-lo, m-hi]");
  zr.fam.add_to(zeros_cmd);
  zeros_cmd->add_option("--n", zr.n)->required();
  zeros_cmd->add_option("--m-lo", zr.m_lo, "default n");
  zeros_cmd->add_option("--m-hi", zr.m_hi, "default m-lo + 5");

  GenFunArgs gf;
  auto* genfun_cmd = app.add_subcommand("genfun", "truncated generating function against its closed form");
  gf.fam.add_to(genfun_cmd);
  genfun_cmd->add_option("--which", gf.which, "Z_EXP, Z_PLAIN, M_EXP, M_PLAIN, M_DOUBLE");
  genfun_cmd->add_option("--points", gf.points);
  genfun_cmd->add_option("--N", gf.N, "truncation order");
  genfun_cmd->add_option("--uv-radius", gf.uv_radius);
  genfun_cmd->add_option("--z-radius", gf.z_radius);
  genfun_cmd->add_option("--threshold", gf.tol, "pass threshold on the printed residual");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Report report;
  int rc = 0;
  try {
    if (*eval_cmd) {
      report.command = "eval";
      rc = cmd_eval(ev, report);
    } else if (*gram_cmd) {
      report.command = "gram";
      rc = cmd_gram(gr, gl, report);
    } else if (*check_cmd) {
      report.command = "check";
      rc = cmd_check(ck, gl, report);
    } else if (*zeros_cmd) {
      report.command = "zeros";
      rc = cmd_zeros(zr, report);
    } else if (*genfun_cmd) {
      report.command = "genfun";
      rc = cmd_genfun(gf, gl, report);
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const std::string text = render(report, gl.format);
  if (gl.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(gl.out);
    if (!f) {
      std::cerr << "error: cannot open " << gl.out << "\n";
      return 2;
    }
    f << text;
  }
  return rc;
}
