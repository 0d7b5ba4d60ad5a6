// quatfun: command-line front end for the quatfun library.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quatfun/quatfun.hpp"

using json = nlohmann::ordered_json;
using namespace quatfun;

namespace {

constexpr int exit_usage = 2;
constexpr int exit_domain = 3;
constexpr int exit_not_converged = 4;

struct Options {
  std::string function;
  std::string params;
  std::string g;
  std::vector<std::string> partners;
  std::string at;
  bool soft = false;
  bool real_form = false;
  std::string jet = "auto";
  std::string phi[4] = {"0", "0", "0", "0"};
  std::string psi[4] = {"0", "0", "0", "0"};
  double R = 1.0;
  std::string center;
  std::string schedule = "default";
  int n_eta = 0;
  int n_xi = 0;
  std::string domain;
  std::string format = "json";
  bool strict = false;
  int pole = 1;
  int test_power = 0;
  bool pv1d = false;
  int n_theta = 256;
};

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    out.push_back(cur);
  return out;
}

std::vector<Rational> parse_params(const std::string &s) {
  std::vector<Rational> out;
  if (s.empty())
    return out;
  for (const auto &p : split(s, ','))
    out.push_back(parse_decimal(p));
  return out;
}

std::vector<double> parse_reals(const std::string &s, std::size_t n, const std::string &what) {
  std::vector<double> out;
  for (const auto &p : split(s, ','))
    out.push_back(parse_decimal(p).get_d());
  if (out.size() != n)
    throw Error(what + " expects " + std::to_string(n) + " comma-separated reals", false);
  return out;
}

Quat parse_point(const std::string &s, const std::string &what) {
  auto v = parse_reals(s, 4, what);
  return {cplx(v[0], v[1]), cplx(v[2], v[3])};
}

// NAME, NAME[p1,p2], holo:POLY or a literal "N1/D1 ; N2/D2".
QFunction resolve(const std::string &spec, const std::string &params = {}) {
  auto open = spec.find('[');
  if (open != std::string::npos && spec.back() == ']' && open > 0) {
    std::string name = spec.substr(0, open);
    QFunction f = resolve_function(name, parse_params(spec.substr(open + 1, spec.size() - open - 2)));
    return f.set_label(spec);
  }
  QFunction f = resolve_function(spec, parse_params(params));
  if (f.label().empty())
    f.set_label(spec);
  return f;
}

json quat_json(const Quat &q) { return json::array({q.z1.real(), q.z1.imag(), q.z2.real(), q.z2.imag()}); }

json function_inputs(const Options &o, const QFunction &f) {
  json in;
  in["function"] = o.function;
  if (!o.params.empty())
    in["params"] = o.params;
  in["literal"] = f.to_string();
  return in;
}

JetMethod jet_method(const std::string &s) {
  if (s == "auto")
    return JetMethod::Auto;
  if (s == "symbolic")
    return JetMethod::Symbolic;
  if (s == "fd")
    return JetMethod::FiniteDifference;
  if (s == "richardson")
    return JetMethod::Richardson;
  throw Error("--jet must be auto, symbolic, fd or richardson", false);
}

EpsilonSchedule parse_schedule(const std::string &s, double support) {
  if (s == "default")
    return EpsilonSchedule::for_support(support);
  auto v = split(s, ',');
  if (v.size() != 3)
    throw Error("--schedule expects 'default' or eps0,ratio,count", false);
  return {parse_decimal(v[0]).get_d(), parse_decimal(v[1]).get_d(), std::stoi(v[2])};
}

Support parse_support(const Options &o) {
  Support s;
  if (!(o.R > 0))
    throw Error("--R must be positive", false);
  s.R = o.R;
  if (!o.center.empty())
    s.center = parse_point(o.center, "--center");
  return s;
}

json estimate_json(const CurrentEstimate &e) {
  json table = json::array();
  for (std::size_t k = 0; k < e.eps.size(); ++k)
    table.push_back({{"eps", e.eps[k]}, {"value", quat_json(e.values[k])}});
  json d;
  d["table"] = table;
  d["ratios"] = e.ratios;
  d["converged"] = e.converged;
  d["notes"] = e.notes;
  return d;
}

std::string estimate_csv(const CurrentEstimate &e) {
  std::string out = "eps,re1,im1,re_j,im_j\n";
  char buf[256];
  for (std::size_t k = 0; k < e.eps.size(); ++k) {
    const Quat &v = e.values[k];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", e.eps[k], v.z1.real(),
                  v.z1.imag(), v.z2.real(), v.z2.imag());
    out += buf;
  }
  return out;
}

json schedule_json(const EpsilonSchedule &s) {
  return {{"eps0", s.eps0}, {"ratio", s.ratio}, {"count", s.count}};
}

// Each handler fills `report` and returns an exit code.
int cmd_classify(const Options &o, json &report) {
  QFunction f = resolve(o.function, o.params);
  std::vector<QFunction> partners;
  for (const auto &p : o.partners)
    partners.push_back(resolve(p));
  report["inputs"] = function_inputs(o, f);
  report["inputs"]["partners"] = o.partners;
  Classification c = classify(f, partners);
  json r;
  r["hyperholomorphic"] = c.hyperholomorphic;
  r["hypermeromorphic"] = c.hypermeromorphic;
  r["inverse_hyperholomorphic"] = c.inverse_hyperholomorphic ? json(*c.inverse_hyperholomorphic) : json();
  r["disagreement"] = c.disagreement;
  json closure = json::array();
  for (const auto &cl : c.closure)
    closure.push_back({{"partner", cl.partner},
                       {"sum_hypermeromorphic", cl.sum_hypermeromorphic},
                       {"product_hypermeromorphic", cl.product_hypermeromorphic}});
  r["closure"] = closure;
  report["result"] = r;
  report["exact"] = {{"d1", c.d.d1.to_string()},
                     {"d2", c.d.d2.to_string()},
                     {"eq3", c.residuals.eq3.to_string()},
                     {"eq4", c.residuals.eq4.to_string()}};
  report["diagnostics"] = {{"inverse_numeric_max", c.inverse_numeric_max}, {"notes", c.notes}};
  return 0;
}

int cmd_apply_d(const Options &o, json &report) {
  QFunction f = resolve(o.function, o.params);
  report["inputs"] = function_inputs(o, f);
  DResult d = apply_D(f);
  report["exact"] = {{"d1", d.d1.to_string()}, {"d2", d.d2.to_string()}, {"is_zero", d.is_zero()}};
  json r;
  r["hyperholomorphic"] = d.is_zero();
  if (!o.at.empty()) {
    report["inputs"]["at"] = o.at;
    report["inputs"]["jet"] = o.jet;
    r["value"] = quat_json(apply_D_at(f, parse_point(o.at, "--at"), jet_method(o.jet)));
  }
  report["result"] = r;
  return 0;
}

int cmd_inverse(const Options &o, json &report) {
  QFunction f = resolve(o.function, o.params);
  report["inputs"] = function_inputs(o, f);
  QFunction g = inverse_function(f);
  report["exact"] = {{"g1", g.f1().to_string()}, {"g2", g.f2().to_string()}};
  json r;
  r["literal"] = g.to_string();
  if (!o.at.empty()) {
    report["inputs"]["at"] = o.at;
    Quat q = parse_point(o.at, "--at");
    r["value"] = quat_json(g(q));
    r["product_check"] = quat_json(f(q) * g(q));
  }
  report["result"] = r;
  return 0;
}

int cmd_product_rule(const Options &o, json &report) {
  if (o.g.empty())
    throw Error("product-rule needs --g", false);
  QFunction f = resolve(o.function, o.params), g = resolve(o.g);
  report["inputs"] = function_inputs(o, f);
  report["inputs"]["g"] = o.g;
  report["inputs"]["form"] = o.real_form ? "real" : "general";
  ProductRuleReport p = o.real_form ? check_real_product_rule(f, g, o.soft)
                                    : check_product_rule(f, g, o.soft);
  report["result"] = {{"holds", p.holds()}};
  report["exact"] = {{"residual_d1", p.residual.d1.to_string()},
                     {"residual_d2", p.residual.d2.to_string()}};
  report["diagnostics"] = {{"warnings", p.warnings}};
  return 0;
}

int cmd_hypermero(const Options &o, json &report) {
  QFunction f = resolve(o.function, o.params);
  report["inputs"] = function_inputs(o, f);
  HypermeroResiduals h = hypermero_residuals(f);
  json r;
  r["hyperholomorphic"] = is_hyperholomorphic(f);
  r["residuals_vanish"] = h.vanish();
  if (!o.at.empty()) {
    report["inputs"]["at"] = o.at;
    Quat q = parse_point(o.at, "--at");
    cplx e3 = h.eq3.eval(q), e4 = h.eq4.eval(q);
    r["eq3_value"] = json::array({e3.real(), e3.imag()});
    r["eq4_value"] = json::array({e4.real(), e4.imag()});
  }
  report["result"] = r;
  report["exact"] = {{"eq3", h.eq3.to_string()}, {"eq4", h.eq4.to_string()}};
  return 0;
}

int cmd_product_compat(const Options &o, json &report) {
  if (o.g.empty())
    throw Error("product-compat needs --g", false);
  QFunction f = resolve(o.function, o.params), g = resolve(o.g);
  report["inputs"] = function_inputs(o, f);
  report["inputs"]["g"] = o.g;
  ProductCompat p = product_compat_residuals(f, g, o.soft);
  json r = {{"vanish", p.vanish()}};
  json ex = {{"r1", p.r1.to_string()}, {"r2", p.r2.to_string()}};
  if (p.real) {
    r["real_vanish"] = p.real->first.is_zero() && p.real->second.is_zero();
    ex["real_r1"] = p.real->first.to_string();
    ex["real_r2"] = p.real->second.to_string();
  }
  report["result"] = r;
  report["exact"] = ex;
  report["diagnostics"] = {{"warnings", p.warnings}};
  return 0;
}

int finish_estimate(const Options &o, const CurrentEstimate &e, json &report) {
  report["result"] = {{"value", quat_json(e.extrapolated)}, {"converged", e.converged}};
  report["diagnostics"] = estimate_json(e);
  return o.strict && !e.converged ? exit_not_converged : 0;
}

CurrentOptions current_options(const Options &o, Domain fallback) {
  CurrentOptions c;
  c.domain = fallback;
  if (o.domain == "level")
    c.domain = Domain::Level;
  else if (o.domain == "ball")
    c.domain = Domain::Ball;
  else if (!o.domain.empty())
    throw Error("--domain must be level or ball", false);
  return c;
}

json rule_inputs(const Options &o, const QuadratureRule &rule, const EpsilonSchedule &s,
                 const CurrentOptions &c) {
  json in;
  in["function"] = o.function;
  if (!o.params.empty())
    in["params"] = o.params;
  in["R"] = o.R;
  in["center"] = o.center.empty() ? "0,0,0,0" : o.center;
  in["schedule"] = schedule_json(s);
  in["n_eta"] = int(rule.eta.size());
  in["n_xi"] = rule.n_xi;
  in["domain"] = to_string(c.domain);
  return in;
}

int cmd_residue(const Options &o, json &report, CurrentEstimate &est) {
  QFunction f = resolve(o.function, o.params);
  TestForm2 phi{TestCoefficient::parse(o.phi[0]), TestCoefficient::parse(o.phi[1]),
                TestCoefficient::parse(o.phi[2]), TestCoefficient::parse(o.phi[3]),
                parse_support(o)};
  QuadratureRule rule = build_quadrature(o.n_eta ? o.n_eta : 16, o.n_xi ? o.n_xi : 16);
  EpsilonSchedule s = parse_schedule(o.schedule, phi.support.radius());
  CurrentOptions c = current_options(o, Domain::Level);
  report["inputs"] = rule_inputs(o, rule, s, c);
  report["inputs"]["literal"] = f.to_string();
  report["inputs"]["test_form"] = {{"phi11", o.phi[0]}, {"phi12", o.phi[1]}, {"phi21", o.phi[2]},
                                   {"phi22", o.phi[3]}};
  est = residue_pair(f, phi, rule, s, c);
  return finish_estimate(o, est, report);
}

int cmd_pv(const Options &o, json &report, CurrentEstimate &est) {
  QFunction f = resolve(o.function, o.params);
  TestForm3 psi{TestCoefficient::parse(o.psi[0]), TestCoefficient::parse(o.psi[1]),
                TestCoefficient::parse(o.psi[2]), TestCoefficient::parse(o.psi[3]),
                parse_support(o)};
  QuadratureRule rule = build_quadrature(o.n_eta ? o.n_eta : 24, o.n_xi ? o.n_xi : 32);
  EpsilonSchedule s = parse_schedule(o.schedule, psi.support.radius());
  CurrentOptions c = current_options(o, Domain::Ball);
  report["inputs"] = rule_inputs(o, rule, s, c);
  report["inputs"]["literal"] = f.to_string();
  report["inputs"]["test_form"] = {{"psi1", o.psi[0]}, {"psi2", o.psi[1]}, {"psi3", o.psi[2]},
                                   {"psi4", o.psi[3]}};
  est = pv_pair(f, psi, rule, s, c);
  return finish_estimate(o, est, report);
}

int cmd_oracle_1d(const Options &o, json &report, CurrentEstimate &est) {
  if (o.pole < 0 || o.test_power < 0)
    throw Error("--pole and --power must be non-negative", false);
  Laurent1D g;
  if (o.pole > 0)
    g = Laurent1D::pole(o.pole);
  else
    g.tail = {1.0};
  EpsilonSchedule s = parse_schedule(o.schedule, o.R);
  TestFunction1D phi = monomial_bump(o.test_power, o.R);
  report["inputs"] = {{"pole", o.pole},         {"power", o.test_power}, {"R", o.R},
                      {"schedule", schedule_json(s)}, {"n_theta", o.n_theta},
                      {"mode", o.pv1d ? "pv" : "residue"}};
  if (o.pv1d) {
    est = pv_1d(g, phi, o.R, s, o.n_theta);
  } else {
    est = res_limit_1d(g, phi, s, o.n_theta);
  }
  int code = finish_estimate(o, est, report);
  if (!o.pv1d) {
    // Expected pairing 2πi a_{-(j+1)} / j! with a_{-K} = 1.
    cplx expected = o.pole == o.test_power + 1 ? cplx(0, 2 * pi) / std::tgamma(o.test_power + 1.0)
                                               : cplx(0.0);
    report["result"]["b_j"] = json::array({est.extrapolated.z1.real(), est.extrapolated.z1.imag()});
    report["result"]["expected"] = json::array({expected.real(), expected.imag()});
  }
  return code;
}

int cmd_catalogue(const Options &o, json &report) {
  json list = json::array();
  std::vector<std::pair<std::string, std::vector<Rational>>> entries;
  if (o.function.empty() || o.function == "all") {
    for (const auto &n : catalogue_names())
      entries.push_back({n, n == "prop34" ? std::vector<Rational>{0, 0} : std::vector<Rational>{}});
  } else {
    entries.push_back({o.function, parse_params(o.params)});
  }
  for (const auto &[name, params] : entries) {
    CatalogueEntry e = builtin(name, params);
    Classification c = classify(e.f);
    json p = json::array();
    for (const auto &x : params)
      p.push_back(x.get_str());
    list.push_back({{"name", e.name},
                    {"params", p},
                    {"literal", e.f.to_string()},
                    {"role", e.role},
                    {"zero_set", e.zero_set.description},
                    {"known_hyperholomorphic", e.known_flags.hyperholomorphic},
                    {"known_hypermeromorphic", e.known_flags.hypermeromorphic},
                    {"classify_agrees", c.hyperholomorphic == e.known_flags.hyperholomorphic &&
                                            c.hypermeromorphic == e.known_flags.hypermeromorphic}});
  }
  report["inputs"] = {{"function", o.function.empty() ? "all" : o.function}};
  report["result"] = {{"entries", list}};
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"quatfun: quaternionic function theory toolkit"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::string> argv_echo(argv + 1, argv + argc);

  auto add_function = [&](CLI::App *c, bool required = true) {
    auto *opt = c->add_option("--function", o.function, "catalogue name, holo:POLY or 'N1/D1 ; N2/D2'");
    if (required)
      opt->required();
    c->add_option("--params", o.params, "comma-separated parameters (prop34: A,B)");
  };
  auto add_format = [&](CLI::App *c, bool csv) {
    auto *f = c->add_option("--format", o.format, "output format");
    f->check(CLI::IsMember(csv ? std::vector<std::string>{"json", "csv"} : std::vector<std::string>{"json"}));
  };
  auto add_quadrature = [&](CLI::App *c) {
    c->add_option("--R", o.R, "test-form support radius");
    c->add_option("--center", o.center, "test-form center x1,y1,x2,y2");
    c->add_option("--schedule", o.schedule, "'default' or eps0,ratio,count");
    c->add_option("--n-eta", o.n_eta, "Gauss-Legendre points in eta");
    c->add_option("--n-xi", o.n_xi, "trapezoid points in each xi");
    c->add_option("--domain", o.domain, "level or ball");
    c->add_flag("--strict", o.strict, "exit 4 when the estimate is not converged");
    add_format(c, true);
  };

  auto *classify_cmd = app.add_subcommand("classify", "hyperholomorphy and hypermeromorphy flags");
  add_function(classify_cmd);
  classify_cmd->add_option("--partner", o.partners, "closure partner (repeatable), NAME[params] allowed");
  add_format(classify_cmd, false);

  auto *apply_cmd = app.add_subcommand("apply-d", "modified Cauchy-Fueter operator");
  add_function(apply_cmd);
  apply_cmd->add_option("--at", o.at, "point x1,y1,x2,y2");
  apply_cmd->add_option("--jet", o.jet, "auto, symbolic, fd or richardson");
  add_format(apply_cmd, false);

  auto *inverse_cmd = app.add_subcommand("inverse", "right inverse 1/f");
  add_function(inverse_cmd);
  inverse_cmd->add_option("--at", o.at, "point x1,y1,x2,y2");
  add_format(inverse_cmd, false);

  auto *rule_cmd = app.add_subcommand("product-rule", "residual of the product rule for D");
  add_function(rule_cmd);
  rule_cmd->add_option("--g", o.g, "second factor")->required();
  rule_cmd->add_flag("--soft", o.soft, "warn instead of failing on preconditions");
  rule_cmd->add_flag("--real", o.real_form, "check D(f*g) = Df*jg + f*Dg (real components)");
  add_format(rule_cmd, false);

  auto *hm_cmd = app.add_subcommand("hypermero", "hypermeromorphy residuals");
  add_function(hm_cmd);
  hm_cmd->add_option("--at", o.at, "point x1,y1,x2,y2");
  add_format(hm_cmd, false);

  auto *pc_cmd = app.add_subcommand("product-compat", "product-compatibility residuals");
  add_function(pc_cmd);
  pc_cmd->add_option("--g", o.g, "second factor")->required();
  pc_cmd->add_flag("--soft", o.soft, "warn instead of failing on preconditions");
  add_format(pc_cmd, false);

  auto *res_cmd = app.add_subcommand("residue", "residue pairing Res[df/f](phi)");
  add_function(res_cmd);
  const char *phi_names[4] = {"--phi11", "--phi12", "--phi21", "--phi22"};
  for (int k = 0; k < 4; ++k)
    res_cmd->add_option(phi_names[k], o.phi[k], "coefficient: bump, 0 or polynomial (times bump)");
  add_quadrature(res_cmd);

  auto *pv_cmd = app.add_subcommand("pv", "principal value Vp[df/f](psi)");
  add_function(pv_cmd);
  const char *psi_names[4] = {"--psi1", "--psi2", "--psi3", "--psi4"};
  for (int k = 0; k < 4; ++k)
    pv_cmd->add_option(psi_names[k], o.psi[k], "coefficient: bump, 0 or polynomial (times bump)");
  add_quadrature(pv_cmd);

  auto *o1_cmd = app.add_subcommand("oracle-1d", "one-variable residue / principal value");
  o1_cmd->add_option("--pole", o.pole, "pole order K of g = 1/z^K (0: g = 1)");
  o1_cmd->add_option("--power", o.test_power, "test function z^j/j! * bump");
  o1_cmd->add_option("--R", o.R, "bump radius");
  o1_cmd->add_option("--schedule", o.schedule, "'default' or eps0,ratio,count");
  o1_cmd->add_option("--n-theta", o.n_theta, "trapezoid points on each circle");
  o1_cmd->add_flag("--pv", o.pv1d, "principal value with psi0 = z^j/j! * bump");
  o1_cmd->add_flag("--strict", o.strict, "exit 4 when the estimate is not converged");
  add_format(o1_cmd, true);

  auto *cat_cmd = app.add_subcommand("catalogue", "list catalogue entries");
  cat_cmd->add_option("--function", o.function, "single entry");
  cat_cmd->add_option("--params", o.params, "parameters");
  add_format(cat_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    json report;
    report["command"] = argc > 1 ? std::string(argv[1]) : std::string();
    report["argv"] = argv_echo;
    report["error"] = {{"kind", "usage"}, {"message", e.what()}};
    std::cout << report.dump(2) << "\n";
    return exit_usage;
  }
  CLI::App *sub = app.get_subcommands().front();
  json report;
  report["command"] = sub->get_name();
  report["argv"] = argv_echo;
  CurrentEstimate est;
  bool has_estimate = false;
  int code = 0;
  try {
    const std::string name = sub->get_name();
    if (name == "classify")
      code = cmd_classify(o, report);
    else if (name == "apply-d")
      code = cmd_apply_d(o, report);
    else if (name == "inverse")
      code = cmd_inverse(o, report);
    else if (name == "product-rule")
      code = cmd_product_rule(o, report);
    else if (name == "hypermero")
      code = cmd_hypermero(o, report);
    else if (name == "product-compat")
      code = cmd_product_compat(o, report);
    else if (name == "residue")
      code = cmd_residue(o, report, est), has_estimate = true;
    else if (name == "pv")
      code = cmd_pv(o, report, est), has_estimate = true;
    else if (name == "oracle-1d")
      code = cmd_oracle_1d(o, report, est), has_estimate = true;
    else
      code = cmd_catalogue(o, report);
  } catch (const quatfun::Error &e) {
    report["error"] = {{"kind", e.domain_error() ? "domain" : "usage"}, {"message", e.what()}};
    std::cerr << "error: " << e.what() << "\n";
    code = e.domain_error() ? exit_domain : exit_usage;
  } catch (const std::exception &e) {
    report["error"] = {{"kind", "usage"}, {"message", e.what()}};
    std::cerr << "error: " << e.what() << "\n";
    code = exit_usage;
  }
  if (o.format == "csv" && has_estimate && !report.contains("error"))
    std::cout << estimate_csv(est);
  else
    std::cout << report.dump(2) << "\n";
  return code;
}
