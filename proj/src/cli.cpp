#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "germ/branch.hpp"
#include "germ/cli.hpp"
#include "germ/errors.hpp"
#include "germ/lip_geometry.hpp"
#include "germ/milnor.hpp"
#include "germ/multiplicity.hpp"
#include "germ/tangent_cone.hpp"

namespace germ::cli {

namespace {

using json = nlohmann::json;

constexpr int kJsonVersion = 1;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// nlohmann's own dump prints the shortest round-trip form; fixed 17 digits keeps output stable
// across library versions.
void write_json(const json& j, std::ostream& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << json(it.key()).dump() << ": ";
        write_json(it.value(), out, indent, depth + 1);
      }
      out << "\n" << close_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out << ",\n";
        out << pad;
        write_json(j[k], out, indent, depth + 1);
      }
      out << "\n" << close_pad << "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out << (std::isfinite(v) ? format_double(v) : "null");
      return;
    }
    default:
      out << j.dump();
  }
}

void emit_json(json j, std::ostream& out) {
  j["version"] = kJsonVersion;
  write_json(j, out, 2, 0);
  out << "\n";
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_json(const std::vector<Complex>& v) {
  json a = json::array();
  for (Complex z : v) a.push_back(complex_json(z));
  return a;
}

json line_json(const TangentLine& l) {
  return {{"line", format_line(l)},
          {"direction", json::array({complex_json(l.direction[0]), complex_json(l.direction[1])})},
          {"cone_multiplicity", l.cone_multiplicity}};
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw InputError("empty variable name in --vars");
    out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) throw InputError("--vars needs at least one name");
  return out;
}

struct Globals {
  std::uint64_t seed = 0;
  bool json = false;
  std::string vars;
};

struct ParsedInput {
  Polynomial f;
  std::vector<std::string> names;
};

// Without --vars the smallest of x,y / x,y,z / x,y,z,w that parses is used.
ParsedInput parse_input(const std::string& text, const Globals& g) {
  if (!g.vars.empty()) {
    auto names = split_names(g.vars);
    return {parse_polynomial(text, names), names};
  }
  for (std::size_t n = 2; n < 4; ++n) {
    auto names = default_variable_names(n);
    try {
      return {parse_polynomial(text, names), names};
    } catch (const ParseError&) {
    }
  }
  auto names = default_variable_names(4);
  return {parse_polynomial(text, names), names};
}

json input_json(const ParsedInput& in, const Globals& g) {
  return {{"polynomial", format_polynomial(in.f, in.names)}, {"variables", in.names}, {"seed", g.seed}};
}

struct Outcome {
  json doc;
  std::string text;
  int code = kExitOk;
};

Outcome do_mult(const ParsedInput& in, const Globals& g, const std::vector<std::string>& routes, std::size_t samples) {
  ReportOptions opts{.seed = g.seed, .routes = routes};
  if (samples) opts.density_samples = samples;
  const MultiplicityReport rep = report(in.f, opts);
  Outcome o;
  std::ostringstream t;
  json r = json::object();
  if (rep.order) {
    r["order"] = *rep.order;
    t << "order    " << *rep.order << "\n";
  }
  if (rep.line) {
    json votes = json::array();
    for (const auto& v : rep.line->votes) votes.push_back({{"radius", v.radius}, {"seed", v.seed}, {"count", v.count}});
    r["line"] = {{"multiplicity", rep.line->multiplicity},
                 {"direction", vector_json(rep.line->direction)},
                 {"offset", vector_json(rep.line->offset)},
                 {"radius", rep.line->radius},
                 {"votes", votes}};
    t << "line     " << rep.line->multiplicity << "  (radius " << rep.line->radius << ", " << rep.line->votes.size()
      << " votes)\n";
  }
  if (rep.cone_sum) {
    r["cone"] = *rep.cone_sum;
    t << "cone     " << *rep.cone_sum << "\n";
  }
  if (rep.density) {
    json table = json::array();
    for (const auto& row : rep.density->table) {
      table.push_back({{"radius", row.radius},
                       {"estimate", row.estimate},
                       {"std_error", row.std_error},
                       {"samples", row.samples},
                       {"discarded", row.discarded}});
    }
    r["density"] = {{"estimate", rep.density->estimate}, {"std_error", rep.density->std_error}, {"table", table}};
    t << "density  " << rep.density->estimate << " +- " << rep.density->std_error << "\n";
  }
  if (rep.hilbert) {
    json values = json::object();
    for (const auto& [k, v] : rep.hilbert->values) values[std::to_string(k)] = v;
    json coeffs = json::array();
    for (const auto& c : rep.hilbert->samuel_coefficients) coeffs.push_back(c.get_str());
    r["hilbert"] = {{"e", rep.hilbert->e}, {"d", rep.hilbert->d}, {"values", values}, {"samuel_coefficients", coeffs}};
    t << "hilbert  " << rep.hilbert->e << "  (d = " << rep.hilbert->d << ")\n";
  }
  json failures = json::array();
  bool input_failure = false;
  for (const auto& fl : rep.failures) {
    failures.push_back({{"route", fl.route}, {"message", fl.message}, {"kind", fl.input_error ? "input" : "numeric"}});
    input_failure = input_failure || fl.input_error;
    t << "failed   " << fl.route << ": " << fl.message << "\n";
  }
  for (const auto& n : rep.notes) t << "note     " << n << "\n";
  t << "agree    " << (rep.agree ? "yes" : "no") << "\n";
  o.doc = {{"routes", r}, {"agree", rep.agree}, {"failures", failures}, {"notes", rep.notes}};
  o.text = t.str();
  o.code = input_failure ? kExitInput : (rep.agree ? kExitOk : kExitNumeric);
  return o;
}

Outcome do_cone(const ParsedInput& in) {
  const ConeDescription cone = hypersurface_cone(in.f);
  Outcome o;
  std::ostringstream t;
  t << "cone     " << format_polynomial(cone.defining_form, in.names) << " = 0\n";
  json lines = json::array();
  for (const auto& l : cone.lines) {
    lines.push_back(line_json(l));
    t << "line     " << format_line(l) << "  multiplicity " << l.cone_multiplicity << "\n";
  }
  o.doc = {{"defining_form", format_polynomial(cone.defining_form, in.names)}, {"lines", lines}};
  o.text = t.str();
  return o;
}

Outcome do_branches(const ParsedInput& in, const Globals& g, std::optional<double> epsilon) {
  const BranchDecomposition d = branches(in.f, {.seed = g.seed, .epsilon = epsilon});
  const RelativeMultiplicities rel = relative_multiplicities(d);
  Outcome o;
  std::ostringstream t;
  t << "epsilon  " << d.epsilon_used << "\n";
  json bs = json::array();
  for (const auto& b : d.branches) {
    bs.push_back({{"order", b.order},
                  {"tangent", format_line(b.tangent)},
                  {"cycle", b.cycle},
                  {"estimated_direction",
                   json::array({complex_json(b.estimated_direction[0]), complex_json(b.estimated_direction[1])})},
                  {"witness_radius", b.witness_radius}});
    t << "branch   order " << b.order << "  tangent " << format_line(b.tangent) << "\n";
  }
  json ks = json::array();
  for (const auto& [line, k] : rel.entries) {
    ks.push_back({{"line", format_line(line)}, {"k", k}});
    t << "k        " << format_line(line) << " = " << k << "\n";
  }
  json u = json::array();
  for (const auto& row : d.coordinate_change) u.push_back(json::array({complex_json(row[0]), complex_json(row[1])}));
  o.doc = {{"epsilon", d.epsilon_used},
           {"branches", bs},
           {"relative_multiplicities", ks},
           {"total", rel.total()},
           {"coordinate_change", u}};
  o.text = t.str();
  return o;
}

std::vector<double> parse_doubles(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& item : split_names(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InputError(std::string("bad number '") + item + "' in " + what);
    }
  }
  return out;
}

Outcome do_density(const ParsedInput& in, const Globals& g, const std::string& radii, std::size_t samples) {
  DensityOptions opts{.seed = g.seed};
  if (!radii.empty()) opts.radii = parse_doubles(radii, "--radii");
  if (samples) opts.samples_per_radius = samples;
  const DensityEstimate est = mult_density(in.f, opts);
  Outcome o;
  std::ostringstream t;
  json table = json::array();
  for (const auto& row : est.table) {
    table.push_back({{"radius", row.radius},
                     {"estimate", row.estimate},
                     {"std_error", row.std_error},
                     {"samples", row.samples},
                     {"discarded", row.discarded}});
    t << "r = " << row.radius << "  " << row.estimate << " +- " << row.std_error << "  (" << row.discarded
      << " discarded)\n";
  }
  o.doc = {{"estimate", est.estimate}, {"std_error", est.std_error}, {"table", table}};
  o.text = t.str();
  return o;
}

Outcome do_milnor(const ParsedInput& in, const Globals& g, const std::string& line) {
  Outcome o;
  std::ostringstream t;
  if (!line.empty()) {
    std::vector<GaussianRational> point;
    for (const auto& item : split_names(line)) {
      const Polynomial c = parse_polynomial(item, in.names);
      if (c.degree() > 0) throw InputError("--line entries must be constants");
      point.push_back(c.constant_term());
    }
    const int mu = transversal_milnor(in.f, point, g.seed);
    o.doc = {{"transversal_mu", mu}};
    t << "transversal mu  " << mu << "\n";
  } else {
    const MilnorResult m = milnor_number(in.f);
    o.doc = {{"mu", m.mu}, {"truncation_degree", m.truncation_degree}, {"stabilized", m.stabilized}};
    t << "mu       " << m.mu << "  (truncation degree " << m.truncation_degree << ")\n";
  }
  o.text = t.str();
  return o;
}

Outcome do_randell(int d, int n, long long mu_prime, std::optional<long long> chi_in) {
  const long long chi = chi_in ? *chi_in : randell_chi(d, n, mu_prime);
  const std::vector<int> degrees = recover_degree(chi, n, mu_prime);
  Outcome o;
  o.doc = {{"chi", chi}, {"degrees", degrees}, {"n", n}, {"mu_prime", mu_prime}};
  std::ostringstream t;
  t << "chi      " << chi << "\ndegrees ";
  for (int k : degrees) t << " " << k;
  t << "\n";
  o.text = t.str();
  return o;
}

Outcome do_lne(const ParsedInput& in, const Globals& g, const std::string& ladder, std::size_t samples) {
  const LneDecision dec = lne_decide_plane_curve(in.f, g.seed);
  const std::vector<double> scales = ladder.empty() ? std::vector<double>{1e-1, 1e-2, 1e-3} : parse_doubles(ladder, "--scale-ladder");
  LneOptions opts{.seed = g.seed};
  if (samples) opts.count = samples;
  Outcome o;
  std::ostringstream t;
  t << "decision " << (dec.lne ? "LNE" : "not LNE");
  if (!dec.reason.empty()) t << "  (" << dec.reason << ")";
  t << "\n";
  json evidence = json::array();
  for (double s : scales) {
    const LneEstimate e = lne_ratio(in.f, s, opts);
    evidence.push_back({{"scale", e.scale},
                        {"ratio", e.ratio},
                        {"pairs", e.pairs},
                        {"witness", json::array({e.witness.first, e.witness.second})}});
    t << "evidence s = " << s << "  ratio " << e.ratio << "\n";
  }
  o.doc = {{"decision", {{"lne", dec.lne}, {"reason", dec.reason}}}, {"evidence", evidence}};
  o.text = t.str();
  return o;
}

json entry_json(const CatalogEntry& e) {
  json exp = json::object();
  const auto& w = e.expected;
  if (w.mult) exp["mult"] = *w.mult;
  if (w.tangent_lines) exp["tangent_lines"] = *w.tangent_lines;
  if (w.branches) exp["branches"] = *w.branches;
  if (w.lne) exp["lne"] = *w.lne;
  if (w.milnor) exp["milnor"] = *w.milnor;
  if (w.transversal_milnor) exp["transversal_milnor"] = *w.transversal_milnor;
  if (w.chi) exp["chi"] = *w.chi;
  if (w.hilbert_e) exp["hilbert_e"] = *w.hilbert_e;
  json j = {{"name", e.name},
            {"polynomial", e.polynomial.empty() ? "0" : e.polynomial},
            {"variables", e.variables},
            {"provenance", e.provenance},
            {"note", e.note},
            {"expected", exp}};
  if (!e.singular_line.empty()) {
    json line = json::array();
    for (const auto& c : e.singular_line) line.push_back(c.to_string());
    j["singular_line"] = line;
  }
  return j;
}

Outcome do_catalog(const Globals& g, bool run_all, const std::string& name) {
  Outcome o;
  std::ostringstream t;
  std::vector<const CatalogEntry*> chosen;
  for (const auto& e : catalog()) {
    if (name.empty() || e.name == name) chosen.push_back(&e);
  }
  if (!name.empty() && chosen.empty()) throw InputError("no catalog entry named '" + name + "'");
  json entries = json::array();
  for (const CatalogEntry* e : chosen) {
    json j = entry_json(*e);
    if (run_all || !name.empty()) {
      const CatalogCheck c = check_entry(*e, g.seed);
      j["check"] = {{"ok", c.ok}, {"checked", c.checked}, {"mismatches", c.mismatches}};
      t << (c.ok ? "ok       " : "MISMATCH ") << e->name << "  (" << c.checked.size() << " checks)\n";
      for (const auto& m : c.mismatches) t << "         " << m << "\n";
      if (!c.ok) o.code = kExitNumeric;
    } else {
      t << e->name << "  " << (e->polynomial.empty() ? "0" : e->polynomial) << "  [" << e->provenance << "]\n";
    }
    entries.push_back(j);
  }
  o.doc = {{"entries", entries}};
  o.text = t.str();
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical invariants of complex algebraic germs at the origin", "germ"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master seed for every randomized step")->capture_default_str();
  app.add_flag("--json", g.json, "Write a JSON report to stdout");
  app.add_option("--vars", g.vars, "Comma-separated variable names (default x,y[,z[,w]])");

  std::string poly;
  auto needs_poly = [&](CLI::App* sub) { sub->add_option("--poly,-p", poly, "Polynomial, e.g. \"x^3 - y^2\"")->required(); };

  auto* mult = app.add_subcommand("mult", "Multiplicity by every applicable route, cross-checked");
  needs_poly(mult);
  std::vector<std::string> routes;
  std::size_t samples = 0;
  mult->add_option("--routes", routes, "Subset of order,line,cone,density,hilbert")->delimiter(',');
  mult->add_option("--samples", samples, "Density samples per radius");

  auto* cone = app.add_subcommand("cone", "Tangent cone and its lines");
  needs_poly(cone);

  auto* br = app.add_subcommand("branches", "Branches, orders, tangents and relative multiplicities");
  needs_poly(br);
  std::optional<double> epsilon;
  br->add_option("--epsilon", epsilon, "Fixed loop radius instead of the stabilized one");

  auto* dens = app.add_subcommand("density", "Monte-Carlo area density of a plane curve");
  needs_poly(dens);
  std::string radii;
  dens->add_option("--radii", radii, "Decreasing comma-separated radii");
  dens->add_option("--samples", samples, "Samples per radius");

  auto* mil = app.add_subcommand("milnor", "Milnor number (or transversal Milnor number along a line)");
  needs_poly(mil);
  std::string line;
  mil->add_option("--line", line, "Point spanning the singular line, e.g. 0,0,1");

  auto* ran = app.add_subcommand("randell", "Euler characteristic of the Milnor fibre and degree recovery");
  int degree = 0, n = 0;
  long long mu_prime = 0;
  std::optional<long long> chi;
  ran->add_option("--degree,-d", degree, "Degree of the homogeneous polynomial");
  ran->add_option("-n", n, "n, where the polynomial lives in n + 1 variables")->required();
  ran->add_option("--mu-prime", mu_prime, "Transversal Milnor number")->capture_default_str();
  ran->add_option("--chi", chi, "Recover degrees from this Euler characteristic instead");

  auto* lne = app.add_subcommand("lne", "Lipschitz normal embedding decision with sampled evidence");
  needs_poly(lne);
  std::string ladder;
  lne->add_option("--scale-ladder", ladder, "Comma-separated scales (default 1e-1,1e-2,1e-3)");
  lne->add_option("--samples", samples, "Curve samples per scale");

  auto* cat = app.add_subcommand("catalog", "Embedded example germs with known invariants");
  bool run_all = false;
  std::string entry;
  cat->add_flag("--run-all", run_all, "Recompute and compare every expected value");
  cat->add_option("--run", entry, "Recompute a single entry");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  Outcome o;
  try {
    if (*ran) {
      if (!chi && degree == 0) throw InputError("randell needs --degree or --chi");
      o = do_randell(degree, n, mu_prime, chi);
    } else if (*cat) {
      o = do_catalog(g, run_all, entry);
    } else {
      // A transversal line fixes the ambient dimension.
      if (*mil && !line.empty() && g.vars.empty()) {
        const auto names = default_variable_names(split_names(line).size());
        g.vars.clear();
        for (const auto& v : names) g.vars += (g.vars.empty() ? "" : ",") + v;
      }
      const ParsedInput in = parse_input(poly, g);
      if (*mult) o = do_mult(in, g, routes, samples);
      else if (*cone) o = do_cone(in);
      else if (*br) o = do_branches(in, g, epsilon);
      else if (*dens) o = do_density(in, g, radii, samples);
      else if (*mil) o = do_milnor(in, g, line);
      else o = do_lne(in, g, ladder, samples);
      o.doc["input"] = input_json(in, g);
    }
  } catch (const InputError& e) {
    if (g.json) emit_json({{"error", {{"kind", "input"}, {"message", e.what()}}}}, out);
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericError& e) {
    if (g.json) emit_json({{"error", {{"kind", "numeric"}, {"message", e.what()}}}}, out);
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  o.doc["command"] = app.get_subcommands().front()->get_name();
  if (g.json) emit_json(o.doc, out);
  else out << o.text;
  return o.code;
}

}  // namespace germ::cli
