// Batch driver: germ spec in, CSV/JSON artifacts out.
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <numbers>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptheta/fatou.hpp"
#include "ptheta/fractal.hpp"
#include "ptheta/invariants.hpp"
#include "ptheta/io.hpp"
#include "ptheta/suite.hpp"
#include "ptheta/theta.hpp"

using namespace ptheta;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

int thread_count() {
  const char* e = std::getenv("PTHETA_THREADS");
  if (!e) return 1;
  int n = std::atoi(e);
  return n > 0 ? n : 1;
}

struct Context {
  RunConfig cfg;
  ParabolicGerm germ;
  fs::path out;
};

std::ofstream open_out(const Context& c, const std::string& name) {
  std::ofstream os(c.out / name);
  if (!os) throw InputError("out", "cannot write '" + (c.out / name).string() + "'");
  return os;
}

void write_json(const Context& c, const std::string& name, const json& j) {
  open_out(c, name) << j.dump(2) << '\n';
  std::cout << j.dump(2) << '\n';
}

json series_json(const TruncSeries& s, int upto) {
  json a = json::array();
  for (int e = 1; e < std::min(upto, s.order()); ++e) a.push_back(complex_json(s[e]));
  return a;
}

int cmd_analyze(const Context& c) {
  const ParabolicGerm& f = c.germ;
  FatouEvaluator E(f, c.cfg.x0);
  const FormalFatou& F = E.formal();
  json j;
  j["k"] = f.k();
  j["a"] = complex_json(f.a());
  j["rho"] = complex_json(F.rho);
  j["residual_invariant"] = complex_json(residual_invariant(f));
  j["prenormalized_coeffs"] = series_json(prenormalize(f).germ.series(), 2 * f.k() + 3);
  json pr = json::array();
  for (cd z : F.principal) pr.push_back(complex_json(z));
  j["formal"] = {{"principal", pr}, {"tail", series_json(F.tail, 7)}};
  j["evaluator"] = {{"J", E.J()}, {"TB", E.TB()}, {"HB", E.HB()}, {"c0", complex_json(E.c0())},
                    {"prenormal_constant", complex_json(E.prenormal_constant())}};
  double r = f.eval_radius();
  j["eval_radius"] = {{"value", std::isfinite(r) ? json(r) : json("unbounded")},
                      {"heuristic", f.is_model() ? "exact model map" : "half the smallest |f_e|^{-1/(e-1)}"}};
  j["config_hash"] = hex(config_hash(c.cfg.source));
  write_json(c, "analyze.json", j);
  return 0;
}

int cmd_orbit(const Context& c) {
  Orbit o = iterate_orbit(c.germ, c.cfg.x0, c.cfg.M);
  auto os = open_out(c, "orbit.csv");
  CsvWriter w(os, c.cfg, {"n", "x_re", "x_im", "t_re", "t_im"});
  for (std::size_t n = 0; n < o.points.size(); ++n)
    w.row({static_cast<double>(n), o.points[n].real(), o.points[n].imag(), o.t_values[n].real(), o.t_values[n].imag()});
  std::cout << "wrote " << (c.out / "orbit.csv").string() << " (" << o.points.size() << " points)\n";
  return 0;
}

int cmd_fatou(const Context& c) {
  FatouEvaluator E(c.germ, c.cfg.x0);
  auto os = open_out(c, "fatou.csv");
  CsvWriter w(os, c.cfg, {"x_re", "x_im", "psi_re", "psi_im", "abel_defect"});
  for (cd x : petal_points(c.germ, c.cfg.x0, 20)) {
    cd p = E(x);
    w.row({x.real(), x.imag(), p.real(), p.imag(), std::abs(E(c.germ(x)) - p - 1.0)});
  }
  std::cout << "wrote " << (c.out / "fatou.csv").string() << '\n';
  return 0;
}

ThetaEvaluator make_theta(const Context& c) {
  ThetaParams tp;
  tp.quad_tol = c.cfg.tol.quad_tol;
  return ThetaEvaluator(c.germ, c.cfg.x0, tp);
}

int cmd_theta(const Context& c) {
  ThetaEvaluator T = make_theta(c);
  auto os = open_out(c, "theta.csv");
  CsvWriter w(os, c.cfg, {"s_re", "s_im", "theta_re", "theta_im", "err"});
  for (cd s : c.cfg.s_grid) {
    Value v = T.main(s);
    w.row({s.real(), s.imag(), v.value.real(), v.value.imag(), v.error});
  }
  if (c.cfg.source.contains("sheets")) {
    auto os2 = open_out(c, "theta_sheets.csv");
    os2 << "# sheet points as 's_re,s_im;crossings=m+,m-,...'\n";
    os2 << "sheet,theta_re,theta_im,err\n";
    for (const auto& item : c.cfg.source.at("sheets")) {
      if (!item.is_string()) throw InputError("sheets", "entries must be strings");
      SheetPoint p = parse_sheet_point(item.get<std::string>());
      Value v = T.continued(p);
      os2 << '"' << to_string(p) << "\"," << format_double(v.value.real()) << ',' << format_double(v.value.imag())
          << ',' << format_double(v.error) << '\n';
    }
  }
  std::cout << "wrote " << (c.out / "theta.csv").string() << '\n';
  return 0;
}

int cmd_jumps(const Context& c) {
  ThetaEvaluator T = make_theta(c);
  auto os = open_out(c, "jumps.csv");
  CsvWriter w(os, c.cfg, {"m", "s_re", "s_im", "jump_re", "jump_im", "err"});
  for (int m : {-1, 0, 1})
    for (double r : {0.5, 1.0})
      for (double th : {kPi / 2 + 0.3, kPi, 3 * kPi / 2 - 0.3}) {
        cd s = cd(0.0, 2.0 * kPi * m) + std::polar(r, th);
        Value v = T.jump(m, s);
        w.row({static_cast<double>(m), s.real(), s.imag(), v.value.real(), v.value.imag(), v.error});
      }
  std::cout << "wrote " << (c.out / "jumps.csv").string() << '\n';
  return 0;
}

int cmd_invariants(const Context& c) {
  ParabolicGerm f = prenormalize(c.germ).germ;
  FatouEvaluator E(f, c.cfg.x0);
  ThetaEvaluator T(f, c.cfg.x0);
  int p = f.petal_of(c.cfg.x0);
  EVModulus horn, theta;
  horn.method = "horn";
  theta.method = "theta";
  FourierParams fp;
  fp.modes = c.cfg.modes;
  fp.H = c.cfg.H;
  fp.fourier_tol = c.cfg.tol.fourier_tol;
  cd Cp = E.prenormal_constant();
  for (int j : {2 * p + 1, 2 * p + 2}) {
    EVModulus M = fourier_coefficients(E, j, fp);
    for (auto e : M.entries) horn.entries.push_back(e);
    for (int m = 1; m <= c.cfg.modes; ++m) {
      int mm = transition_side(j) * m;
      EVEntry e{j, mm, 0.0, 0.0, false};
      if (f.k() == 1) {
        ThetaInvariant ti = invariant_from_theta(T, mm);
        e.A = ti.A;
        e.error = ti.error;
      }
      theta.entries.push_back(e);
    }
  }
  // The theta route is normalized by C'; bring the horn entries to the same base point.
  theta.normalization = Cp;
  EVModulus horn_n = rescale(horn, Cp);
  EquivalenceResult eq = cocycles_equivalent(horn_n, theta, 1e-3);
  json j;
  j["horn"] = to_json(horn);
  j["theta"] = to_json(theta);
  j["prenormal_constant"] = complex_json(Cp);
  j["equivalence"] = {{"verdict", to_string(eq.verdict)}, {"defect", eq.defect}};
  if (eq.C) j["equivalence"]["C"] = complex_json(*eq.C);
  if (f.k() != 1) j["note"] = "theta route is evaluated for k = 1 only";
  write_json(c, "invariants.json", j);
  return 0;
}

int cmd_fractal(const Context& c) {
  Orbit o = iterate_orbit(c.germ, c.cfg.x0, c.cfg.M);
  FractalString S = epsilons(c.germ, o);
  json j;
  j["real"] = S.real;
  if (S.real) {
    std::vector<double> ladder = c.cfg.eps_ladder;
    if (ladder.empty())
      for (int i = 1; i <= 20; ++i) ladder.push_back(S.epsilon(1).real() * std::ldexp(1.0, -i));
    auto os = open_out(c, "tube.csv");
    CsvWriter w(os, c.cfg, {"eps", "n", "V"});
    for (double e : ladder) {
      Count n = counting_function(S, e);
      if (n.truncated) continue;
      w.row({e, static_cast<double>(n.n), tube_function(S, e)});
    }
    if (S.size() >= 10000) {
      MinkowskiFit fit = minkowski_fit(S);
      j["minkowski"] = {{"D", fit.D},           {"M", fit.M},           {"residual", fit.residual},
                        {"eps_hi", fit.eps_hi}, {"eps_lo", fit.eps_lo}, {"points", fit.points}};
    }
  }
  auto os = open_out(c, "fractal_theta.csv");
  CsvWriter w(os, c.cfg, {"s_re", "s_im", "re", "im", "err"});
  for (cd s : c.cfg.s_grid) {
    if (s.real() < 0.05) continue;
    Sum v = fractal_theta(S, s);
    w.row({s.real(), s.imag(), v.value.real(), v.value.imag(), v.error});
  }
  auto oz = open_out(c, "zeta.csv");
  CsvWriter wz(oz, c.cfg, {"s_re", "s_im", "re", "im", "err"});
  double D = c.germ.k() / (c.germ.k() + 1.0);
  for (cd s : c.cfg.s_grid) {
    if (s.real() <= D + 0.05) continue;
    Sum v = geometric_zeta(S, s);
    wz.row({s.real(), s.imag(), v.value.real(), v.value.imag(), v.error});
  }
  write_json(c, "fractal.json", j);
  return 0;
}

json check_json(const CheckResult& r) {
  return {{"id", std::string(1, r.prefix) + std::to_string(r.id)},         {"name", r.name},           {"passed", r.passed}, {"measured", r.measured},
          {"tolerance", r.tolerance}, {"detail", r.detail}, {"seconds", r.seconds}};
}

int cmd_verify(const Context& c, bool suite) {
  std::vector<CheckResult> res;
  if (suite) {
    auto crit = acceptance_criteria();
    int threads = thread_count();
    std::vector<std::future<CheckResult>> fut;
    for (std::size_t i = 0; i < crit.size(); ++i) {
      if (threads > 1)
        fut.push_back(std::async(std::launch::async, crit[i]));
      else
        res.push_back(crit[i]());
      if (threads > 1 && fut.size() >= static_cast<std::size_t>(threads)) {
        for (auto& f : fut) res.push_back(f.get());
        fut.clear();
      }
    }
    for (auto& f : fut) res.push_back(f.get());
  } else {
    res = germ_checks(c.germ, c.cfg.x0, c.cfg.tol.quad_tol);
  }
  json arr = json::array();
  bool ok = true;
  for (const auto& r : res) {
    std::cout << format(r) << '\n';
    arr.push_back(check_json(r));
    ok = ok && r.passed;
  }
  open_out(c, "verify.json") << json{{"passed", ok}, {"checks", arr}}.dump(2) << '\n';
  return ok ? 0 : 1;
}

void error_json(const std::string& type, const std::string& msg, const std::string& field = "") {
  json e = {{"type", type}, {"message", msg}};
  if (!field.empty()) e["field"] = field;
  std::cerr << json{{"error", e}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ptheta: Fatou coordinates, dynamic theta functions and invariants of parabolic germs"};
  app.require_subcommand(1);
  std::string germ_path, out_dir = ".";
  bool suite = false;
  const char* names[] = {"analyze", "orbit", "fatou", "theta", "jumps", "invariants", "fractal", "verify"};
  const char* help[] = {"k, a, rho and prenormalized coefficients",
                        "orbit points",
                        "Fatou coordinate on petal points",
                        "theta on the configured s-grid",
                        "theta jumps near 0 and +-2 pi i",
                        "invariants by both routes and their equivalence",
                        "tube function, Minkowski fit, fractal theta, zeta",
                        "germ checks, or the full acceptance suite with --suite"};
  std::map<std::string, CLI::App*> subs;
  for (int i = 0; i < 8; ++i) {
    CLI::App* s = app.add_subcommand(names[i], help[i]);
    s->add_option("--germ", germ_path, "JSON germ/run specification");
    s->add_option("--out", out_dir, "output directory");
    s->allow_extras();
    subs[names[i]] = s;
  }
  subs["verify"]->add_flag("--suite", suite, "run the twelve acceptance criteria");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  std::string cmd;
  CLI::App* active = nullptr;
  for (auto& [n, s] : subs)
    if (s->parsed()) cmd = n, active = s;

  try {
    std::map<std::string, std::string> overrides;
    std::vector<std::string> extra = active->remaining();
    for (std::size_t i = 0; i < extra.size(); ++i) {
      const std::string& a = extra[i];
      if (a.rfind("--", 0) != 0 || i + 1 >= extra.size())
        throw InputError(a, "expected '--key value' override");
      overrides[a.substr(2)] = extra[++i];
    }
    RunConfig cfg;
    if (germ_path.empty()) {
      if (!(cmd == "verify" && suite)) throw InputError("germ", "--germ is required");
      cfg.source = json::object();
      cfg.germ.type = "model";
    } else {
      cfg = load_config(germ_path, overrides);
    }
    Context c{cfg, build_germ(cfg.germ), {}};
    if (overrides.count("out")) out_dir = c.cfg.out;
    c.out = out_dir;
    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (ec) throw InputError("out", "cannot create '" + c.out.string() + "'");

    if (cmd == "analyze") return cmd_analyze(c);
    if (cmd == "orbit") return cmd_orbit(c);
    if (cmd == "fatou") return cmd_fatou(c);
    if (cmd == "theta") return cmd_theta(c);
    if (cmd == "jumps") return cmd_jumps(c);
    if (cmd == "invariants") return cmd_invariants(c);
    if (cmd == "fractal") return cmd_fractal(c);
    return cmd_verify(c, suite);
  } catch (const InputError& e) {
    error_json("input", e.what(), e.field);
    return 2;
  } catch (const GermError& e) {
    error_json("input", e.what(), "germ");
    return 2;
  } catch (const ThetaError& e) {
    error_json("theta", e.what());
    return 1;
  } catch (const FatouError& e) {
    error_json("fatou", e.what());
    return 1;
  } catch (const QuadratureError& e) {
    error_json("quadrature", e.what());
    return 1;
  } catch (const InvariantError& e) {
    error_json("invariants", e.what());
    return 1;
  } catch (const FractalError& e) {
    error_json("fractal", e.what());
    return 1;
  } catch (const std::exception& e) {
    error_json("numeric", e.what());
    return 1;
  }
}
