#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "loewner/definiteness.hpp"
#include "loewner/errors.hpp"
#include "loewner/intervals.hpp"
#include "loewner/loewner_matrix.hpp"
#include "loewner/matorder.hpp"
#include "loewner/rng.hpp"
#include "loewner/search.hpp"

namespace loewner::cli {

namespace {

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "inf" || item == "+inf") {
      out.push_back(kInf);
      continue;
    }
    if (item == "-inf") {
      out.push_back(-kInf);
      continue;
    }
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(what + ": '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

std::vector<int> parse_ints(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (double x : parse_reals(text, what)) {
    if (x != std::floor(x)) throw ConfigError(what + ": expected integers");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::vector<std::string> parse_words(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

const Json& need(const Json& config, const char* key) {
  if (!config.contains(key)) throw ConfigError(std::string("config is missing '") + key + "'");
  return config.at(key);
}

FunctionDescriptor config_function(const Json& config) { return function_from_json(need(config, "function")); }

Interval config_interval(const Json& config, const FunctionDescriptor& f) {
  if (!config.contains("interval") || config.at("interval").is_null()) return f.domain();
  const Interval j = interval_from_json(config.at("interval"));
  if (!is_subset(j, f.domain())) {
    throw ConfigError("interval " + to_string(j) + " is not inside domain " + to_string(f.domain()) +
                      " of " + describe(f));
  }
  return j;
}

std::uint64_t config_seed(const Json& config) { return need(config, "seed").get<std::uint64_t>(); }
double config_tol(const Json& config) { return real_from_json(need(config, "tol")); }

FunctionDescriptor apply_weight(const FunctionDescriptor& f, const std::string& weight,
                                const Interval& j) {
  if (weight == "none") return f;
  return weighted(f, weight_tag_from_string(weight), j.lo, j.hi);
}

Outcome run_build(const Json& c) {
  const FunctionDescriptor f = config_function(c);
  const Interval j = config_interval(c, f);
  const FunctionDescriptor g = apply_weight(f, need(c, "weight").get<std::string>(), j);
  const std::vector<double> pts = need(c, "points").get<std::vector<double>>();
  const LoewnerMatrix lm = build_loewner(g, pts);
  Json r = to_json(lm);
  r["eigenvalues"] = to_json(Vector(sym_eigen(lm.entries).eigenvalues));
  return {r, false};
}

Outcome run_check(const Json& c) {
  const FunctionDescriptor f = config_function(c);
  const Interval j = config_interval(c, f);
  const FunctionDescriptor g = apply_weight(f, need(c, "weight").get<std::string>(), j);
  const Property prop = property_from_string(need(c, "property").get<std::string>());
  const int order = need(c, "order").get<int>();
  const double tol = config_tol(c);
  if (order < 1) throw ConfigError("--order must be >= 1");
  const bool closed = prop != Property::PSD && (order == 2 || order == 3);

  std::vector<std::vector<double>> tuples;
  if (c.contains("points") && !c.at("points").is_null()) {
    tuples.push_back(c.at("points").get<std::vector<double>>());
  } else {
    const long trials = need(c, "trials").get<long>();
    if (trials < 1) throw ConfigError("--trials must be >= 1");
    const SamplingWindow w = sampling_window(j);
    const std::uint64_t seed = config_seed(c);
    for (long i = 0; i < trials; ++i) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      std::vector<double> t(static_cast<std::size_t>(order));
      for (double& x : t) x = w.sample(rng);
      tuples.push_back(std::move(t));
    }
  }

  long failures = 0, disagreements = 0;
  Json first = nullptr;
  for (const auto& t : tuples) {
    const LoewnerMatrix lm = build_loewner(g, t);
    const DefinitenessVerdict v = test_property(lm.entries, prop, tol);
    if (closed) {
      const DefinitenessVerdict cf = cpd_closed_form_small(lm.entries, prop, tol);
      if (cf.holds != v.holds) ++disagreements;
    }
    if (!v.holds) {
      ++failures;
      if (first.is_null()) first = Json{{"points", t}, {"verdict", to_json(v)}};
    }
  }
  Json r{{"function", describe(g)},
         {"property", to_string(prop)},
         {"order", order},
         {"tuples", static_cast<long>(tuples.size())},
         {"failures", failures},
         {"verdict", failures ? "counterexample" : "no-counterexample"}};
  r["closed_form_disagreements"] = closed ? Json(disagreements) : Json(nullptr);
  r["first_failure"] = first;
  return {r, failures > 0};
}

Outcome run_order(const Json& c, unsigned jobs) {
  const FunctionDescriptor f = config_function(c);
  CheckOptions o;
  o.order = need(c, "order").get<int>();
  o.trials = need(c, "trials").get<long>();
  o.interval = config_interval(c, f);
  o.tol = config_tol(c);
  o.seed = config_seed(c);
  o.jobs = jobs;
  const std::string cmd = need(c, "command").get<std::string>();
  const OrderCheckReport rep = cmd == "monotone" ? check_n_monotone(f, o) : check_n_convex(f, o);
  Json r = to_json(rep);
  r["function"] = describe(f);
  if (rep.witness) {
    r["replayed_violation"] = real_to_json(replay_violation(f, rep.property, *rep.witness));
  }
  return {r, rep.counterexample};
}

Outcome run_sweep(const Json& c, unsigned jobs) {
  SweepOptions o;
  const Json& a = need(c, "alpha");
  o.grid = AlphaGrid{real_from_json(need(a, "lo")), real_from_json(need(a, "hi")),
                     real_from_json(need(a, "step"))};
  o.sizes = need(c, "sizes").get<std::vector<int>>();
  o.properties.clear();
  for (const auto& p : need(c, "properties").get<std::vector<std::string>>()) {
    o.properties.push_back(sweep_property_from_string(p));
  }
  o.trials = need(c, "trials").get<long>();
  o.seed = config_seed(c);
  o.tol = config_tol(c);
  o.jobs = jobs;
  const ClassificationTable t = sweep_alpha(o);
  bool any = false;
  for (const auto& cell : t.cells) any = any || cell.counterexample;
  return {to_json(t), any};
}

Outcome run_hunt(const Json& c, unsigned jobs) {
  const FunctionDescriptor f = config_function(c);
  HuntOptions o;
  o.order = need(c, "order").get<int>();
  o.budget = need(c, "budget").get<long>();
  o.seed = config_seed(c);
  o.tol = config_tol(c);
  o.interval = config_interval(c, f);
  o.jobs = jobs;
  const SweepProperty target = sweep_property_from_string(need(c, "property").get<std::string>());
  const HuntResult h = hunt(f, target, o);
  Json r = to_json(h);
  r["function"] = describe(f);
  if (h.witness) r["replayed_violation"] = real_to_json(replay(f, *h.witness, o.tol));
  return {r, h.witness.has_value()};
}

Outcome run_probe(const Json& c, unsigned jobs) {
  if (c.value("list", false)) {
    Json items = Json::array();
    for (const Implication& imp : implication_catalog()) {
      items.push_back(Json{{"id", imp.id},
                           {"holds_in_theory", imp.holds_in_theory},
                           {"hypotheses", imp.hypotheses}});
    }
    return {Json{{"implications", items}, {"families", family_names()}}, false};
  }
  ProbeOptions o;
  o.trials = need(c, "trials").get<long>();
  o.seed = config_seed(c);
  o.tol = config_tol(c);
  o.jobs = jobs;
  const ProbeReport rep = probe_implication(need(c, "implication").get<std::string>(),
                                            need(c, "family").get<std::string>(),
                                            need(c, "sizes").get<std::vector<int>>(), o);
  return {to_json(rep), !rep.consistent};
}

Outcome run_conjugate(const Json& c) {
  const FunctionDescriptor f = config_function(c);
  const FunctionDescriptor g = conjugate(f);
  const ConjugationMap map = make_conjugation_map(f.domain());
  Json rows = Json::array();
  for (double x : need(c, "points").get<std::vector<double>>()) {
    rows.push_back(Json{{"x", x},
                        {"t", psi_inv(map, x)},
                        {"value", real_to_json(eval(g, x))},
                        {"derivative", real_to_json(deriv(g, x))}});
  }
  return {Json{{"function", describe(g)}, {"a", map.a}, {"b", map.b}, {"rows", rows}}, false};
}

Outcome run_identities(const Json& c) {
  const FunctionDescriptor f = config_function(c);
  const Interval j = config_interval(c, f);
  const ConjugationMap map = make_conjugation_map(f.domain());
  const long trials = need(c, "trials").get<long>();
  const std::uint64_t seed = config_seed(c);
  const double tol = config_tol(c);
  const SamplingWindow w = sampling_window(j);
  Json kinds = Json::array();
  bool bad = false;
  for (const auto& name : need(c, "kinds").get<std::vector<std::string>>()) {
    const TransferKind kind = transfer_kind_from_string(name);
    double worst = 0.0;
    Json worst_at = nullptr;
    for (long i = 0; i < trials; ++i) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      const double ti = w.sample(rng), tj = w.sample(rng);
      const IdentityResidual r = verify_conjugation_dd(f, map, kind, ti, tj);
      if (r.residual > worst || worst_at.is_null()) {
        worst = r.residual;
        worst_at = Json{{"ti", ti}, {"tj", tj}, {"residual", to_json(r)}};
      }
    }
    bad = bad || worst > tol;
    kinds.push_back(Json{{"kind", name},
                         {"evaluations", trials},
                         {"max_residual", real_to_json(worst)},
                         {"verdict", worst > tol ? "mismatch" : "holds"},
                         {"worst", worst_at}});
  }
  return {Json{{"function", describe(f)}, {"identities", kinds}}, bad};
}

Outcome run_boundary(const Json& c) {
  const FunctionDescriptor f = config_function(c);
  GridSpec g;
  g.ratio = real_from_json(need(c, "ratio"));
  g.points = need(c, "grid_points").get<int>();
  const BoundaryEstimate e =
      boundary_estimate(f, boundary_kind_from_string(need(c, "kind").get<std::string>()), g);
  Json r = to_json(e);
  Json cond = Json::object();
  const std::pair<const char*, BoundaryCondition> names[] = {
      {"below-plus-infinity", BoundaryCondition::BelowPlusInfinity},
      {"above-minus-infinity", BoundaryCondition::AboveMinusInfinity},
      {"at-most-zero", BoundaryCondition::AtMostZero},
      {"at-least-zero", BoundaryCondition::AtLeastZero}};
  for (const auto& [name, bc] : names) {
    const auto s = e.supports(bc);
    cond[name] = s ? Json(*s) : Json(nullptr);
  }
  r["conditions"] = cond;
  r["function"] = describe(f);
  return {r, false};
}

std::string human(const Json& report) {
  const Json& c = report.at("config");
  const Json& r = report.at("result");
  const std::string cmd = c.at("command").get<std::string>();
  std::ostringstream out;
  if (cmd == "build") {
    out << "L[" << r.at("source").get<std::string>() << "] at " << r.at("points").dump() << "\n";
    for (const auto& row : r.at("entries")) out << "  " << row.dump() << "\n";
  } else if (cmd == "check") {
    out << "check " << r.at("property").get<std::string>() << " order " << r.at("order") << " of "
        << r.at("function").get<std::string>() << ": " << r.at("verdict").get<std::string>() << " ("
        << r.at("failures") << "/" << r.at("tuples") << " failing, seed " << c.at("seed") << ")\n";
  } else if (cmd == "monotone" || cmd == "convex") {
    out << cmd << " order " << r.at("order") << " of " << r.at("function").get<std::string>() << ": "
        << r.at("verdict").get<std::string>() << " after " << r.at("trials") << " trials (seed "
        << r.at("seed") << ")\n";
  } else if (cmd == "sweep") {
    for (const auto& cell : r.at("cells")) {
      out << cell.at("property").get<std::string>() << " n=" << cell.at("size") << " alpha="
          << cell.at("alpha") << " " << cell.at("verdict").get<std::string>() << "\n";
    }
    for (const auto& f : r.at("flips")) {
      out << "flip " << f.at("property").get<std::string>() << " n=" << f.at("size") << " at "
          << f.at("at") << "\n";
    }
  } else if (cmd == "hunt") {
    out << "hunt " << c.at("property").get<std::string>() << " failure of "
        << r.at("function").get<std::string>() << ": " << (r.at("found").get<bool>() ? "witness" : "none")
        << " after " << r.at("evaluations") << " evaluations";
    if (r.at("found").get<bool>()) out << ", violation " << r.at("witness").at("violation");
    out << "\n";
  } else if (cmd == "probe") {
    if (r.contains("implications")) {
      for (const auto& imp : r.at("implications")) out << imp.at("id").get<std::string>() << "\n";
    } else {
      out << r.at("implication").get<std::string>() << " over " << r.at("family").get<std::string>()
          << ": " << r.at("status").get<std::string>() << "\n";
      for (const auto& s : r.at("separating")) out << "  separating: " << s.get<std::string>() << "\n";
    }
  } else if (cmd == "conjugate") {
    out << r.at("function").get<std::string>() << "\n";
    for (const auto& row : r.at("rows")) {
      out << "  x=" << row.at("x") << " t=" << row.at("t") << " value=" << row.at("value") << "\n";
    }
  } else if (cmd == "verify-identities") {
    for (const auto& k : r.at("identities")) {
      out << k.at("kind").get<std::string>() << ": max residual " << k.at("max_residual") << " ("
          << k.at("verdict").get<std::string>() << ")\n";
    }
  } else if (cmd == "boundary") {
    out << r.at("kind").get<std::string>() << " of " << r.at("function").get<std::string>() << ": "
        << r.at("trend").get<std::string>() << " (heuristic)\n";
  }
  return out.str();
}

std::string csv(const Json& report) {
  const Json& c = report.at("config");
  const Json& r = report.at("result");
  const std::string cmd = c.at("command").get<std::string>();
  std::ostringstream out;
  if (cmd == "build") {
    return matrix_to_csv(matrix_from_json(r.at("entries")));
  } else if (cmd == "check") {
    out << "function,property,order,tuples,failures,verdict\n"
        << r.at("function").get<std::string>() << "," << r.at("property").get<std::string>() << ","
        << r.at("order") << "," << r.at("tuples") << "," << r.at("failures") << ","
        << r.at("verdict").get<std::string>() << "\n";
  } else if (cmd == "monotone" || cmd == "convex") {
    out << "property,order,trials,seed,verdict,violation\n"
        << r.at("property").get<std::string>() << "," << r.at("order") << "," << r.at("trials") << ","
        << r.at("seed") << "," << r.at("verdict").get<std::string>() << ",";
    if (!r.at("witness").is_null()) out << r.at("witness").at("violation");
    out << "\n";
  } else if (cmd == "sweep") {
    out << "alpha,size,property,verdict,evaluations,seed,violation,witness_points\n";
    for (const auto& cell : r.at("cells")) {
      out << cell.at("alpha") << "," << cell.at("size") << "," << cell.at("property").get<std::string>()
          << "," << cell.at("verdict").get<std::string>() << "," << cell.at("evaluations") << ","
          << cell.at("seed") << ",";
      const Json& w = cell.at("witness");
      if (!w.is_null()) {
        out << w.at("violation") << ",";
        if (w.contains("points")) {
          bool first = true;
          for (const auto& p : w.at("points")) {
            out << (first ? "" : ";") << p;
            first = false;
          }
        }
      } else {
        out << ",";
      }
      out << "\n";
    }
  } else if (cmd == "hunt") {
    out << "property,order,evaluations,verdict,violation,points\n"
        << c.at("property").get<std::string>() << "," << c.at("order") << "," << r.at("evaluations")
        << "," << (r.at("found").get<bool>() ? "counterexample" : "no-counterexample") << ",";
    if (r.at("found").get<bool>()) {
      const Json& w = r.at("witness");
      out << w.at("violation") << ",";
      if (w.contains("points")) {
        bool first = true;
        for (const auto& p : w.at("points")) {
          out << (first ? "" : ";") << p;
          first = false;
        }
      }
    } else {
      out << ",";
    }
    out << "\n";
  } else if (cmd == "probe") {
    if (r.contains("implications")) {
      out << "id,holds_in_theory\n";
      for (const auto& imp : r.at("implications")) {
        out << imp.at("id").get<std::string>() << "," << imp.at("holds_in_theory") << "\n";
      }
    } else {
      out << "function,n,applicable,antecedent,consequent,separating\n";
      for (const auto& row : r.at("rows")) {
        out << '"' << row.at("function").get<std::string>() << "\"," << row.at("n") << ","
            << row.at("applicable") << "," << row.at("antecedent").at("satisfied") << ",";
        if (!row.at("consequent").is_null()) out << row.at("consequent").at("satisfied");
        out << "," << row.at("separating") << "\n";
      }
    }
  } else if (cmd == "conjugate") {
    out << "x,t,value,derivative\n";
    for (const auto& row : r.at("rows")) {
      out << row.at("x") << "," << row.at("t") << "," << row.at("value") << "," << row.at("derivative")
          << "\n";
    }
  } else if (cmd == "verify-identities") {
    out << "kind,evaluations,max_residual,verdict\n";
    for (const auto& k : r.at("identities")) {
      out << k.at("kind").get<std::string>() << "," << k.at("evaluations") << "," << k.at("max_residual")
          << "," << k.at("verdict").get<std::string>() << "\n";
    }
  } else if (cmd == "boundary") {
    out << "t,value,trend\n";
    const std::string trend = r.at("trend").get<std::string>();
    for (std::size_t k = 0; k < r.at("grid").size(); ++k) {
      out << r.at("grid")[k] << "," << r.at("values")[k] << "," << trend << "\n";
    }
  }
  return out.str();
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

unsigned default_jobs() {
  if (const char* env = std::getenv("LOEWNER_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

FunctionDescriptor parse_function_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') {
    Json j;
    try {
      j = Json::parse(spec);
    } catch (const Json::parse_error& e) {
      throw ConfigError(std::string("function JSON does not parse: ") + e.what());
    }
    return function_from_json(j);
  }
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const auto one = [&] {
    const std::vector<double> v = parse_reals(args, "preset " + name);
    if (v.size() != 1) throw ConfigError("preset " + name + " takes one parameter");
    return v[0];
  };
  if (name == "power") return power(one());
  if (name == "moebius-monotone") return moebius_monotone(one());
  if (name == "moebius-convex") return moebius_convex(one());
  if (name == "constant") return constant(one());
  if (name == "piecewise-quad-linear") return piecewise_quad_linear();
  if (name == "identity") return identity();
  if (name == "affine") {
    const std::vector<double> v = parse_reals(args, "preset affine");
    if (v.size() != 2) throw ConfigError("preset affine takes c0,c1");
    return affine(v[0], v[1]);
  }
  throw ConfigError("unknown function preset '" + name +
                    "' (power:a, moebius-monotone:l, moebius-convex:l, piecewise-quad-linear, "
                    "affine:c0,c1, constant:c, identity, or a JSON object)");
}

Interval parse_interval(const std::string& spec) {
  const std::vector<double> v = parse_reals(spec, "--interval");
  if (v.size() != 2) throw ConfigError("--interval takes lo,hi");
  return make_interval(v[0], v[1]);
}

Outcome execute(const Json& config, unsigned jobs) {
  const std::string cmd = need(config, "command").get<std::string>();
  if (cmd == "build") return run_build(config);
  if (cmd == "check") return run_check(config);
  if (cmd == "monotone" || cmd == "convex") return run_order(config, jobs);
  if (cmd == "sweep") return run_sweep(config, jobs);
  if (cmd == "hunt") return run_hunt(config, jobs);
  if (cmd == "probe") return run_probe(config, jobs);
  if (cmd == "conjugate") return run_conjugate(config);
  if (cmd == "verify-identities") return run_identities(config);
  if (cmd == "boundary") return run_boundary(config);
  throw ConfigError("unknown command '" + cmd + "'");
}

Json make_report(const Json& config, const Outcome& outcome) {
  return Json{{"schema", 1}, {"config", config}, {"result", outcome.result}};
}

std::string render(const Json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format == "csv") return csv(report);
  if (format == "human") return human(report);
  throw ConfigError("unknown format '" + format + "' (json, csv, human)");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Loewner matrices, conditional definiteness and matrix monotone/convex checks"};
  app.require_subcommand(1);

  std::string function_spec, function_file, interval, points, weight = "none", property = "cpd";
  std::string format = "json", output, alpha = "-2:4:0.25", sizes = "2", properties;
  std::string implication, family = "default", kinds = "b-t-sq,ta-bt,t-a-sq", kind;
  std::string report_path;
  int order = 2, grid_points = 12;
  long trials = 500, budget = 2000;
  double tol = kDefaultTolerance, ratio = 10.0;
  std::optional<std::uint64_t> seed;
  unsigned jobs = default_jobs();
  bool expect_hold = false, list = false;

  const auto common = [&](CLI::App* s, bool with_function) {
    if (with_function) {
      s->add_option("--function", function_spec, "preset (power:0.5, ...) or JSON descriptor");
      s->add_option("--function-file", function_file, "JSON descriptor file");
    }
    s->add_option("--seed", seed, "random seed (drawn from entropy when absent)");
    s->add_option("--tol", tol, "relative tolerance");
    s->add_option("--format", format, "json, csv or human")->check(CLI::IsMember({"json", "csv", "human"}));
    s->add_option("--output", output, "write the report here instead of stdout");
    s->add_option("--jobs", jobs, "worker threads (default from LOEWNER_JOBS)")->check(CLI::PositiveNumber);
    s->add_flag("--expect-hold", expect_hold, "exit 2 when a counterexample is found");
  };

  auto* build = app.add_subcommand("build", "emit the Loewner matrix at given points");
  common(build, true);
  build->add_option("--points", points, "comma-separated points")->required();
  build->add_option("--weight", weight, "none, t, t2, b-t-sq, ta-bt, t-a-sq");
  build->add_option("--interval", interval, "lo,hi for interval weights");

  auto* check = app.add_subcommand("check", "definiteness of a (weighted) Loewner matrix");
  common(check, true);
  check->add_option("--weight", weight, "none, t, t2, b-t-sq, ta-bt, t-a-sq");
  check->add_option("--order", order, "matrix order");
  check->add_option("--property", property, "psd, cpd or cnd");
  check->add_option("--points", points, "fixed points instead of random tuples");
  check->add_option("--trials", trials, "random tuples");
  check->add_option("--interval", interval, "sampling interval lo,hi");

  auto* monotone = app.add_subcommand("monotone", "randomized n-monotonicity check");
  auto* convex = app.add_subcommand("convex", "randomized n-convexity check");
  for (auto* s : {monotone, convex}) {
    common(s, true);
    s->add_option("--order", order, "matrix order");
    s->add_option("--trials", trials, "random trials");
    s->add_option("--interval", interval, "sampling interval lo,hi");
  }

  auto* sweep = app.add_subcommand("sweep", "classify t^alpha over an alpha grid");
  common(sweep, false);
  sweep->add_option("--alpha", alpha, "lo:hi:step");
  sweep->add_option("--order", sizes, "sizes, comma-separated (2..5)");
  sweep->add_option("--property", properties, "psd, cpd, cnd, monotone, convex (comma-separated)");
  sweep->add_option("--trials", trials, "trials or hunt budget per cell");

  auto* hunt_cmd = app.add_subcommand("hunt", "search for a violating tuple or matrix pair");
  common(hunt_cmd, true);
  hunt_cmd->add_option("--property", property, "psd, cpd, cnd, monotone, convex");
  hunt_cmd->add_option("--order", order, "size");
  hunt_cmd->add_option("--budget", budget, "evaluations");
  hunt_cmd->add_option("--interval", interval, "search interval lo,hi");

  auto* probe = app.add_subcommand("probe", "empirical check of an implication between conditions");
  common(probe, false);
  probe->add_option("--implication", implication, "implication id (see --list)");
  probe->add_option("--family", family, "function family");
  probe->add_option("--sizes", sizes, "values of n, comma-separated");
  probe->add_option("--trials", trials, "trials per condition");
  probe->add_flag("--list", list, "list implication ids and families");

  auto* conj = app.add_subcommand("conjugate", "evaluate f(psi^{-1}(x)) on (0, inf)");
  common(conj, true);
  conj->add_option("--points", points, "x values (default 1e-3..1e3)");

  auto* ident = app.add_subcommand("verify-identities", "divided-difference transfer identities");
  common(ident, true);
  ident->add_option("--kind", kinds, "b-t-sq, ta-bt, t-a-sq (comma-separated)");
  ident->add_option("--trials", trials, "random pairs");
  ident->add_option("--interval", interval, "sampling interval lo,hi");

  auto* bound = app.add_subcommand("boundary", "trend of a weighted f toward a domain end");
  common(bound, true);
  bound->add_option("--kind", kind, "boundary kind, e.g. sup-f-over-t-inf")->required();
  bound->add_option("--ratio", ratio, "geometric grid ratio");
  bound->add_option("--grid-points", grid_points, "grid size");

  auto* replay_cmd = app.add_subcommand("replay", "re-run the config embedded in a JSON report");
  replay_cmd->add_option("--report", report_path, "report file")->required();
  replay_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();

    if (cmd == "replay") {
      const std::string text = read_file(report_path);
      Json stored;
      try {
        stored = Json::parse(text);
      } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("report does not parse: ") + e.what());
      }
      if (!stored.is_object() || stored.value("schema", 0) != 1 || !stored.contains("config")) {
        throw ConfigError("not a schema-1 report: " + report_path);
      }
      const std::string again = render(make_report(stored.at("config"), execute(stored.at("config"), jobs)), "json");
      out << again;
      if (again != text) {
        err << "replay differs from " << report_path << "\n";
        return kReplayMismatch;
      }
      return kOk;
    }

    Json config{{"command", cmd}};
    const bool takes_function = cmd != "sweep" && cmd != "probe";
    if (takes_function) {
      if (function_spec.empty() == function_file.empty()) {
        throw ConfigError("give exactly one of --function or --function-file");
      }
      const FunctionDescriptor f = function_file.empty()
                                       ? parse_function_spec(function_spec)
                                       : parse_function_spec(read_file(function_file));
      config["function"] = to_json(f);
    }
    const auto add_interval = [&] {
      config["interval"] = interval.empty() ? Json(nullptr) : to_json(parse_interval(interval));
    };
    const std::uint64_t s = seed ? *seed : entropy_seed();

    if (cmd == "build") {
      add_interval();
      config["weight"] = weight;
      config["points"] = parse_reals(points, "--points");
    } else if (cmd == "check") {
      add_interval();
      config["weight"] = weight;
      config["property"] = property;
      config["order"] = order;
      if (!points.empty()) {
        const std::vector<double> p = parse_reals(points, "--points");
        config["order"] = static_cast<int>(p.size());
        config["points"] = p;
      } else {
        config["points"] = nullptr;
        config["trials"] = trials;
      }
    } else if (cmd == "monotone" || cmd == "convex") {
      add_interval();
      config["order"] = order;
      config["trials"] = trials;
    } else if (cmd == "sweep") {
      const AlphaGrid g = parse_alpha_grid(alpha);
      config["alpha"] = Json{{"lo", g.lo}, {"hi", g.hi}, {"step", g.step}};
      config["sizes"] = parse_ints(sizes, "--order");
      config["properties"] = parse_words(properties.empty() ? "cpd" : properties);
      config["trials"] = trials;
    } else if (cmd == "hunt") {
      add_interval();
      config["property"] = property;
      config["order"] = order;
      config["budget"] = budget;
    } else if (cmd == "probe") {
      if (list) {
        config["list"] = true;
      } else {
        if (implication.empty()) throw ConfigError("--implication is required (see probe --list)");
        config["implication"] = implication;
        config["family"] = family;
        config["sizes"] = parse_ints(sizes, "--sizes");
        config["trials"] = trials;
      }
    } else if (cmd == "conjugate") {
      config["points"] = points.empty() ? std::vector<double>{1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1e3}
                                        : parse_reals(points, "--points");
    } else if (cmd == "verify-identities") {
      add_interval();
      config["kinds"] = parse_words(kinds);
      config["trials"] = trials;
    } else if (cmd == "boundary") {
      config["kind"] = kind;
      config["ratio"] = ratio;
      config["grid_points"] = grid_points;
    }
    config["seed"] = s;
    config["tol"] = tol;

    const Outcome outcome = execute(config, jobs);
    const std::string text = render(make_report(config, outcome), format);
    if (output.empty()) {
      out << text;
    } else {
      std::ofstream f(output, std::ios::binary);
      if (!f) throw ConfigError("cannot write '" + output + "'");
      f << text;
    }
    return expect_hold && outcome.counterexample ? kCounterexample : kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed report or config: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace loewner::cli
