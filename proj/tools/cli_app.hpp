#pragma once
// chyp command line: eval, verify, transform, asymptotics.
// Exit codes: 0 success / all checks pass, 1 check failure, 2 usage or config error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <chyp/verify.hpp>

namespace chyp::cli {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "1.5", "-2i", "0.3-0.1i", "i", "(0.3,-0.1)", "0.3,-0.1"
inline cplx parse_cplx(std::string s) {
  auto bad = [&] { return UsageError("not a complex number: '" + s + "'"); };
  std::string t;
  for (char ch : s)
    if (ch != ' ' && ch != '(' && ch != ')') t += ch;
  if (t.empty()) throw bad();
  auto num = [&](const std::string& x) {
    if (x == "" || x == "+") return 1.0;
    if (x == "-") return -1.0;
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(x, &used);
    } catch (...) {
      throw bad();
    }
    if (used != x.size()) throw bad();
    return v;
  };
  if (auto c = t.find(','); c != std::string::npos) {
    std::string re = t.substr(0, c), im = t.substr(c + 1);
    if (re.empty() || im.empty()) throw bad();
    return {num(re), num(im)};
  }
  if (t.back() != 'i' && t.back() != 'j') return {num(t), 0};
  t.pop_back();
  // split at the last sign that is not an exponent sign
  std::size_t cut = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;)
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      cut = i;
      break;
    }
  if (cut == std::string::npos) return {0, num(t)};
  return {num(t.substr(0, cut)), num(t.substr(cut))};
}

inline std::string fmt_real(double x) { return strf("%.17g", x); }

inline std::string fmt_cplx(cplx z) {
  double re = z.real(), im = z.imag();
  auto imag = [](double v, bool sign) {
    if (v == 1) return std::string(sign ? "+i" : "i");
    if (v == -1) return std::string("-i");
    return strf(sign ? "%+.17gi" : "%.17gi", v);
  };
  if (im == 0) return fmt_real(re);
  if (re == 0) return imag(im, false);
  return fmt_real(re) + imag(im, true);
}

inline json jcplx(cplx z) { return json::array({z.real(), z.imag()}); }

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

inline json report_json(const VerifyReport& r, bool timing) {
  json j;
  j["schema"] = 1;
  j["suite"] = r.suite;
  json env = json::object();
  for (auto& [k, v] : r.environment) env[k] = v;
  j["environment"] = env;
  json checks = json::array();
  for (auto& c : r.checks)
    checks.push_back({{"id", c.id},
                      {"anchor", c.anchor},
                      {"inputs", c.inputs},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  j["checks"] = checks;
  j["all_pass"] = r.all_pass();
  if (timing) j["wall_time_s"] = r.wall_time;
  return j;
}

struct Options {
  std::vector<std::string> args;
  double a = 0.5, b = 0.5;
  long k_max = 32;
  double s_max = 40;
  double tol = 1;
  std::uint64_t seed = 42;
  std::string json_path, csv_path;
  std::string center = "4,0";
  double log_width = 1, angular_width = 1, amplitude = 1;
  std::string z = "2+1i";
  std::vector<double> radii{10, 20, 40};
  bool timing = false;
};

inline int cmd_eval(const Options& o, std::ostream& out) {
  if (o.args.empty()) throw UsageError("eval: expected a kind (gamma, beta, f21c, kernel, density)");
  const std::string& kind = o.args[0];
  std::vector<cplx> v;
  for (std::size_t i = 1; i < o.args.size(); ++i) v.push_back(parse_cplx(o.args[i]));
  auto need = [&](std::size_t n, const char* usage) {
    if (v.size() != n) throw UsageError(std::string("eval ") + kind + ": expected " + usage);
  };
  ParamsAB p{o.a, o.b};
  json j{{"kind", kind}};
  std::string line;
  auto gamma_out = [&](const GammaValue& g) {
    j["value"] = jcplx(g.num());
    j["pole"] = g.is_pole();
    j["zero"] = g.is_zero();
    j["order"] = g.order;
    line = fmt_cplx(g.num());
    if (g.is_pole()) line += strf("  (pole of order %d, residue-type coefficient %s)", g.order, fmt_cplx(g.value).c_str());
    if (g.is_zero()) line += strf("  (zero of order %d)", -g.order);
  };
  if (kind == "gamma") {
    need(2, "a a'");
    gamma_out(gamma_c(Bidegree(v[0], v[1])));
  } else if (kind == "beta") {
    need(4, "a a' b b'");
    gamma_out(beta_c(Bidegree(v[0], v[1]), Bidegree(v[2], v[3])));
  } else if (kind == "f21c" || kind == "kernel") {
    F21CResult r;
    if (kind == "f21c") {
      need(7, "a a' b b' c c' z");
      r = f21c_detail({Bidegree(v[0], v[1]), Bidegree(v[2], v[3]), Bidegree(v[4], v[5])}, v[6]);
    } else {
      need(3, "k s z  (lambda = (k + i s)/2, with --a --b)");
      if (v[0].imag() != 0 || v[0].real() != std::round(v[0].real())) throw UsageError("eval kernel: k must be an integer");
      LambdaPoint l{long(v[0].real()), cplx(0, 1) * v[1]};
      r = f21c_detail(kernel_params(l, p), v[2], true);
    }
    j["value"] = jcplx(r.value);
    j["pole"] = r.pole;
    j["region"] = expansion_name(r.region);
    j["cond"] = r.cond;
    j["reduced_accuracy"] = r.reduced_accuracy;
    line = fmt_cplx(r.value) + "  [expansion " + expansion_name(r.region) + strf(", cond %.2g", r.cond) +
           (r.reduced_accuracy ? ", reduced accuracy" : "") + (r.pole ? ", pole" : "") + "]";
  } else if (kind == "density") {
    need(2, "k s  (with --a --b)");
    if (v[0].imag() != 0 || v[0].real() != std::round(v[0].real())) throw UsageError("eval density: k must be an integer");
    LambdaPoint l{long(v[0].real()), cplx(0, 1) * v[1]};
    double d = plancherel_density(l, p);
    j["value"] = d;
    line = fmt_real(d);
  } else {
    throw UsageError("eval: unknown kind '" + kind + "'");
  }
  out << line << "\n" << j.dump() << "\n";
  if (!o.json_path.empty()) write_file(o.json_path, j.dump(2) + "\n");
  return 0;
}

inline RunConfig run_config(const Options& o) {
  if (o.k_max < 0 || !(o.s_max > 0) || !(o.tol > 0)) throw UsageError("bad truncation or tolerance");
  return {o.seed, o.k_max, o.s_max, o.tol};
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  std::string suite = o.args.empty() ? "all" : o.args[0];
  if (suite != "all" && suite != "gamma" && suite != "hyp" && suite != "kernel" && suite != "transform")
    throw UsageError("verify: unknown suite '" + suite + "'");
  auto r = run_suite(suite, run_config(o));
  for (auto& c : r.checks)
    out << strf("%-4s %-44s residual %.3e  tol %.1e\n", c.pass ? "ok" : "FAIL", c.id.c_str(), c.residual, c.tolerance);
  std::size_t failed = std::count_if(r.checks.begin(), r.checks.end(), [](auto& c) { return !c.pass; });
  out << strf("%s: %zu checks, %zu failed\n", suite.c_str(), r.checks.size(), failed);
  if (!o.json_path.empty()) write_file(o.json_path, report_json(r, o.timing).dump(2) + "\n");
  return r.all_pass() ? 0 : 1;
}

inline LogPolarBump bump_from(const Options& o) {
  LogPolarBump b{parse_cplx(o.center), o.log_width, o.angular_width, o.amplitude};
  b.as_function();  // validates widths
  return b;
}

inline int cmd_transform(const Options& o, std::ostream& out) {
  ParamsAB p{o.a, o.b};
  if (!p.in_Pi()) throw UsageError("transform: (a,b) outside the admissible region");
  auto b = bump_from(o);
  auto f = b.as_function();
  if (!f.avoids_singular_points()) throw UsageError("transform: bump support meets 0 or 1");
  auto cfg = run_config(o);
  SpectralGrid g;
  g.k_max = cfg.k_max;
  g.s_max = cfg.s_max;
  auto F = transform_grid(f, p, g);
  double nf = inner_mu(f, f.eval, p).real(), nJ = F.norm2();
  if (!o.csv_path.empty()) {
    std::ostringstream csv;
    csv << "k,s,re,im,kappa\n";
    for (long k = -F.grid.k_max; k <= F.grid.k_max; ++k)
      for (std::size_t j = 0; j < F.grid.ns(); ++j) {
        cplx v = F.at(k, j);
        csv << k << "," << fmt_real(F.grid.s[j]) << "," << fmt_real(v.real()) << "," << fmt_real(v.imag()) << ","
            << fmt_real(F.kappa[F.grid.index(k, j)]) << "\n";
      }
    write_file(o.csv_path, csv.str());
  }
  json j{{"schema", 1},
         {"a", p.a},
         {"b", p.b},
         {"bump", {{"center", jcplx(b.center)}, {"log_width", b.log_width}, {"angular_width", b.angular_width},
                   {"amplitude", b.amplitude}}},
         {"k_max", F.grid.k_max},
         {"s_max", F.grid.s_max},
         {"grid_points", F.grid.size()},
         {"norm2_f_mu", nf},
         {"norm2_Jf_kappa", nJ}};
  j["ratio"] = nf > 0 ? json(nJ / nf) : json(nullptr);
  j["tail_max_abs"] = F.tail;
  if (F.discrete_value) {
    j["discrete_value"] = jcplx(*F.discrete_value);
    j["discrete_contribution"] = discrete_point(p)->contribution(*F.discrete_value);
  }
  out << (nf > 0 ? strf("<Jf,Jf>_kappa = %.12g  <f,f>_mu = %.12g  ratio = %.10f  tail = %.2e\n", nJ, nf, nJ / nf, F.tail)
                 : strf("f = 0: <Jf,Jf>_kappa = %.3g\n", nJ));
  out << j.dump() << "\n";
  if (!o.json_path.empty()) write_file(o.json_path, j.dump(2) + "\n");
  return 0;
}

inline int cmd_asymptotics(const Options& o, std::ostream& out) {
  ParamsAB p{o.a, o.b};
  cplx z = parse_cplx(o.z);
  if (z == 0.0 || z == 1.0) throw UsageError("asymptotics: z must avoid 0 and 1");
  json rows = json::array();
  out << "R        kernel_rel_err   beta_as_err\n";
  for (double R : o.radii) {
    if (!(R > 0)) throw UsageError("asymptotics: radii must be positive");
    double ek = asymptotic_ring_error(z, p, R), eb = beta_as_ring_error(p, R);
    out << strf("%-8g %.6e     %.6e\n", R, ek, eb);
    rows.push_back({{"R", R}, {"kernel_rel_err", ek}, {"beta_as_err", eb}});
  }
  json j{{"schema", 1}, {"a", p.a}, {"b", p.b}, {"z", jcplx(z)}, {"rows", rows}};
  out << j.dump() << "\n";
  if (!o.json_path.empty()) write_file(o.json_path, j.dump(2) + "\n");
  return 0;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"chyp: hypergeometric functions of the complex field and the index transform"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s) {
    s->add_option("--a", o.a, "parameter a");
    s->add_option("--b", o.b, "parameter b");
    s->add_option("--json", o.json_path, "write JSON to this file");
  };
  auto grid = [&](CLI::App* s) {
    s->add_option("--k-max", o.k_max, "largest |k| on the spectral grid");
    s->add_option("--s-max", o.s_max, "s range [-S, S]");
  };
  auto* eval = app.add_subcommand("eval", "evaluate gamma, beta, f21c, kernel or density");
  eval->add_option("args", o.args, "kind followed by its arguments")->required();
  common(eval);
  auto* verify = app.add_subcommand("verify", "run a property suite: gamma, hyp, kernel, transform, all");
  verify->add_option("suite", o.args, "suite name")->expected(0, 1);
  common(verify);
  grid(verify);
  verify->add_option("--seed", o.seed, "RNG seed");
  verify->add_option("--tol", o.tol, "scale factor applied to every tolerance");
  verify->add_flag("--timing", o.timing, "include wall time in the JSON report");
  auto* tr = app.add_subcommand("transform", "Jf of a log-polar bump on the (k,s) grid");
  common(tr);
  grid(tr);
  tr->add_option("--center", o.center, "bump centre, e.g. 4,0 or -2+3i");
  tr->add_option("--log-width", o.log_width, "half width in log|z|");
  tr->add_option("--angular-width", o.angular_width, "half width in arg z");
  tr->add_option("--amplitude", o.amplitude, "bump height");
  tr->add_option("--csv", o.csv_path, "write the grid values as CSV");
  auto* as = app.add_subcommand("asymptotics", "large-lambda errors of the kernel and gamma asymptotics");
  common(as);
  as->add_option("--z", o.z, "point z");
  as->add_option("--radii", o.radii, "values of |lambda|");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }
  try {
    if (*eval) return cmd_eval(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*tr) return cmd_transform(o, out);
    return cmd_asymptotics(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace chyp::cli
