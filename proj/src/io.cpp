#include "loewner/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "loewner/errors.hpp"

namespace loewner {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("function JSON is missing field '") + key + "'");
  }
  return j.at(key);
}

double real_field(const Json& j, const char* key) { return real_from_json(field(j, key)); }

std::vector<double> reals(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of numbers");
  std::vector<double> out;
  for (const Json& x : j) out.push_back(real_from_json(x));
  return out;
}

Json reals_to_json(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(real_to_json(x));
  return a;
}

}  // namespace

Json real_to_json(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ConfigError("expected a number or \"inf\"/\"-inf\", got " + j.dump());
}

Json to_json(const Interval& j) { return Json{{"lo", real_to_json(j.lo)}, {"hi", real_to_json(j.hi)}}; }

Interval interval_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2) return make_interval(real_from_json(j[0]), real_from_json(j[1]));
  return make_interval(real_field(j, "lo"), real_field(j, "hi"));
}

Json to_json(const FunctionDescriptor& f) {
  return std::visit(
      overloaded{
          [](const fn::Power& p) { return Json{{"kind", "power"}, {"alpha", p.alpha}}; },
          [](const fn::Affine& a) { return Json{{"kind", "affine"}, {"c0", a.c0}, {"c1", a.c1}}; },
          [](const fn::MoebiusMonotone& m) {
            return Json{{"kind", "moebius-monotone"}, {"lambda", m.lambda}};
          },
          [](const fn::MoebiusConvex& m) {
            return Json{{"kind", "moebius-convex"}, {"lambda", m.lambda}};
          },
          [](const fn::PiecewiseQuadLinear&) { return Json{{"kind", "piecewise-quad-linear"}}; },
          [](const fn::Tabulated& t) {
            Json j{{"kind", "tabulated"}, {"t", reals_to_json(t.t)}, {"values", reals_to_json(t.values)}};
            if (!t.derivatives.empty()) j["derivatives"] = reals_to_json(t.derivatives);
            return j;
          },
          [](const fn::Negated& n) { return Json{{"kind", "negated"}, {"inner", to_json(n.inner)}}; },
          [](const fn::Scaled& s) {
            return Json{{"kind", "scaled"}, {"c", s.c}, {"inner", to_json(s.inner)}};
          },
          [](const fn::Shifted& s) {
            return Json{{"kind", "shifted"}, {"eps", s.eps}, {"inner", to_json(s.inner)}};
          },
          [](const fn::Restricted& r) {
            return Json{{"kind", "restricted"}, {"domain", to_json(r.dom)}, {"inner", to_json(r.inner)}};
          },
          [](const fn::Sum& s) {
            return Json{{"kind", "sum"}, {"lhs", to_json(s.lhs)}, {"rhs", to_json(s.rhs)}};
          },
          [](const fn::Product& p) {
            return Json{{"kind", "product"}, {"lhs", to_json(p.lhs)}, {"rhs", to_json(p.rhs)}};
          },
          [](const fn::Reciprocal& r) {
            return Json{{"kind", "reciprocal"}, {"inner", to_json(r.inner)}};
          },
          [](const fn::Weighted& w) {
            Json j{{"kind", "weighted"}, {"weight", to_string(w.tag)}};
            if (!std::isnan(w.a)) j["a"] = real_to_json(w.a);
            if (!std::isnan(w.b)) j["b"] = real_to_json(w.b);
            j["inner"] = to_json(w.inner);
            return j;
          },
          [](const fn::ToHalfLine& h) {
            return Json{{"kind", "to-half-line"}, {"a", h.a}, {"b", h.b}, {"inner", to_json(h.inner)}};
          },
          [](const fn::FromHalfLine& h) {
            return Json{{"kind", "from-half-line"}, {"a", h.a}, {"b", h.b}, {"inner", to_json(h.inner)}};
          },
      },
      f.node().v);
}

FunctionDescriptor function_from_json(const Json& j) {
  const Json& k = field(j, "kind");
  if (!k.is_string()) throw ConfigError("function 'kind' must be a string");
  const std::string kind = k.get<std::string>();
  const auto inner = [&] { return function_from_json(field(j, "inner")); };
  const auto opt_real = [&](const char* key) {
    return j.contains(key) ? real_from_json(j.at(key)) : std::numeric_limits<double>::quiet_NaN();
  };

  if (kind == "power") return power(real_field(j, "alpha"));
  if (kind == "affine") return affine(real_field(j, "c0"), real_field(j, "c1"));
  if (kind == "constant") return constant(real_field(j, "c"));
  if (kind == "moebius-monotone") return moebius_monotone(real_field(j, "lambda"));
  if (kind == "moebius-convex") return moebius_convex(real_field(j, "lambda"));
  if (kind == "piecewise-quad-linear") return piecewise_quad_linear();
  if (kind == "tabulated") {
    std::vector<double> d = j.contains("derivatives") ? reals(j.at("derivatives")) : std::vector<double>{};
    return tabulated(reals(field(j, "t")), reals(field(j, "values")), std::move(d));
  }
  if (kind == "negated") return negated(inner());
  if (kind == "scaled") return scaled(inner(), real_field(j, "c"));
  if (kind == "shifted") return shifted(inner(), real_field(j, "eps"));
  if (kind == "restricted") return restricted(inner(), interval_from_json(field(j, "domain")));
  if (kind == "sum") return sum(function_from_json(field(j, "lhs")), function_from_json(field(j, "rhs")));
  if (kind == "product") {
    return product(function_from_json(field(j, "lhs")), function_from_json(field(j, "rhs")));
  }
  if (kind == "reciprocal") return reciprocal(inner());
  if (kind == "weighted") {
    const Json& w = field(j, "weight");
    if (!w.is_string()) throw ConfigError("'weight' must be a string");
    return weighted_product(inner(), weight_tag_from_string(w.get<std::string>()), opt_real("a"),
                            opt_real("b"));
  }
  if (kind == "to-half-line") return to_half_line(inner(), real_field(j, "a"), real_field(j, "b"));
  if (kind == "from-half-line") return from_half_line(inner(), real_field(j, "a"), real_field(j, "b"));
  throw ConfigError("unknown function kind '" + kind + "'");
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(real_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("matrix must be an array of rows");
  const Eigen::Index n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != m.cols()) {
      throw ConfigError("matrix rows must have equal length");
    }
    for (Eigen::Index k = 0; k < m.cols(); ++k) m(i, k) = real_from_json(j[i][k]);
  }
  return m;
}

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(real_to_json(v(i)));
  return a;
}

Json to_json(const LoewnerMatrix& m) {
  return Json{{"source", m.source}, {"points", reals_to_json(m.points)}, {"entries", to_json(m.entries)}};
}

Json to_json(const DefinitenessVerdict& v) {
  return Json{{"property", to_string(v.property)},
              {"holds", v.holds},
              {"marginal", v.marginal},
              {"extremal_eigenvalue", real_to_json(v.extremal_eigenvalue)},
              {"witness", to_json(v.witness)},
              {"tolerance_used", real_to_json(v.tolerance_used)}};
}

Json to_json(const OrderWitness& w) {
  Json j{{"trial", w.trial}, {"violation", real_to_json(w.violation)}, {"scale", real_to_json(w.scale)}};
  if (w.a.size() > 0) j["a"] = to_json(w.a);
  if (w.b.size() > 0) j["b"] = to_json(w.b);
  if (!std::isnan(w.mix)) j["mix"] = real_to_json(w.mix);
  if (!w.points.empty()) j["points"] = reals_to_json(w.points);
  return j;
}

Json to_json(const OrderCheckReport& r) {
  Json j{{"property", to_string(r.property)},
         {"order", r.order},
         {"interval", to_json(r.interval)},
         {"trials", r.trials},
         {"seed", r.seed},
         {"tolerance", real_to_json(r.tolerance)},
         {"verdict", r.counterexample ? "counterexample" : "no-counterexample"}};
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return j;
}

Json to_json(const Witness& w) {
  Json j{{"kind", w.kind == Witness::Kind::Points ? "points" : "matrix-pair"},
         {"property", to_string(w.property)},
         {"function", w.function}};
  if (w.kind == Witness::Kind::Points) {
    j["points"] = reals_to_json(w.points);
  } else {
    j["a"] = to_json(w.a);
    j["b"] = to_json(w.b);
    if (!std::isnan(w.mix)) j["mix"] = real_to_json(w.mix);
  }
  j["violation"] = real_to_json(w.violation);
  j["scale"] = real_to_json(w.scale);
  j["seed"] = w.seed;
  j["evaluation"] = w.evaluation;
  j["phase"] = w.phase;
  return j;
}

Witness witness_from_json(const Json& j) {
  Witness w;
  const std::string kind = field(j, "kind").get<std::string>();
  w.property = sweep_property_from_string(field(j, "property").get<std::string>());
  if (kind == "points") {
    w.kind = Witness::Kind::Points;
    w.points = reals(field(j, "points"));
  } else if (kind == "matrix-pair") {
    w.kind = Witness::Kind::MatrixPair;
    w.a = matrix_from_json(field(j, "a"));
    w.b = matrix_from_json(field(j, "b"));
    if (j.contains("mix")) w.mix = real_from_json(j.at("mix"));
  } else {
    throw ConfigError("unknown witness kind '" + kind + "'");
  }
  w.violation = real_field(j, "violation");
  w.scale = real_field(j, "scale");
  if (j.contains("seed")) w.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("evaluation")) w.evaluation = j.at("evaluation").get<std::uint64_t>();
  if (j.contains("phase")) w.phase = j.at("phase").get<std::string>();
  if (j.contains("function")) w.function = j.at("function").get<std::string>();
  return w;
}

Json to_json(const HuntResult& r) {
  Json j{{"found", r.witness.has_value()},
         {"evaluations", r.evaluations},
         {"best_violation", real_to_json(r.best_violation)},
         {"best_points", reals_to_json(r.best_points)}};
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return j;
}

Json to_json(const SweepCell& c) {
  Json j{{"alpha", c.alpha},
         {"size", c.size},
         {"property", to_string(c.property)},
         {"verdict", c.counterexample ? "counterexample" : "no-counterexample"},
         {"evaluations", c.evaluations},
         {"seed", c.seed}};
  j["witness"] = c.witness ? to_json(*c.witness) : Json(nullptr);
  return j;
}

Json to_json(const ClassificationTable& t) {
  Json cells = Json::array();
  for (const SweepCell& c : t.cells) cells.push_back(to_json(c));
  Json flips = Json::array();
  for (const Flip& f : t.flips) {
    flips.push_back(Json{{"property", to_string(f.property)},
                         {"size", f.size},
                         {"between", Json::array({f.lo, f.hi})},
                         {"at", f.at}});
  }
  return Json{{"cells", std::move(cells)}, {"flips", std::move(flips)}};
}

Json to_json(const ConditionOutcome& c) {
  Json j{{"evaluable", c.evaluable}, {"satisfied", c.satisfied}, {"note", c.note}};
  j["witness"] = c.witness ? to_json(*c.witness) : Json(nullptr);
  return j;
}

Json to_json(const ProbeReport& r) {
  const Implication& imp = r.implication;
  Json rows = Json::array();
  for (const ProbeRow& row : r.rows) {
    Json jr{{"function", row.function}, {"n", row.n}, {"applicable", row.applicable}};
    jr["antecedent"] = to_json(row.antecedent);
    jr["consequent"] = row.consequent ? to_json(*row.consequent) : Json(nullptr);
    jr["separating"] = row.separating;
    rows.push_back(std::move(jr));
  }
  Json j{{"implication", imp.id},
         {"holds_in_theory", imp.holds_in_theory},
         {"hypotheses", imp.hypotheses},
         {"family", r.family},
         {"sizes", r.sizes},
         {"rows", std::move(rows)},
         {"separating", r.separating}};
  j["status"] = imp.holds_in_theory ? (r.consistent ? "consistent" : "inconsistent")
                                    : (r.demonstrated ? "demonstrated" : "not-demonstrated");
  return j;
}

Json to_json(const BoundaryEstimate& e) {
  return Json{{"kind", to_string(e.kind)},
              {"grid", reals_to_json(e.grid)},
              {"values", reals_to_json(e.values)},
              {"trend", to_string(e.trend)},
              {"heuristic", e.heuristic}};
}

Json to_json(const IdentityResidual& r) {
  return Json{{"lhs", real_to_json(r.lhs)},
              {"rhs", real_to_json(r.rhs)},
              {"scale", real_to_json(r.scale)},
              {"residual", real_to_json(r.residual)}};
}

Json to_json(const TransferComparison& c) {
  Json j{{"tuples", c.tuples}, {"mismatches", c.mismatches}, {"failing", c.failing}};
  j["first_mismatch"] = c.first_mismatch ? reals_to_json(*c.first_mismatch) : Json(nullptr);
  return j;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string matrix_to_csv(const Matrix& m) {
  std::ostringstream out;
  for (Eigen::Index k = 0; k < m.cols(); ++k) out << (k ? "," : "") << "c" << k;
  out << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) out << (k ? "," : "") << format_real(m(i, k));
    out << "\n";
  }
  return out.str();
}

std::string table_to_csv(const ClassificationTable& t) {
  std::ostringstream out;
  out << "alpha,size,property,verdict,evaluations,seed,violation,witness_points\n";
  for (const SweepCell& c : t.cells) {
    out << format_real(c.alpha) << "," << c.size << "," << to_string(c.property) << ","
        << (c.counterexample ? "counterexample" : "no-counterexample") << "," << c.evaluations
        << "," << c.seed << ",";
    if (c.witness) {
      out << format_real(c.witness->violation) << ",";
      for (std::size_t k = 0; k < c.witness->points.size(); ++k) {
        out << (k ? ";" : "") << format_real(c.witness->points[k]);
      }
    } else {
      out << ",";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace loewner
