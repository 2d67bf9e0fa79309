#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "loewner/errors.hpp"
#include "loewner/intervals.hpp"
#include "loewner/rng.hpp"
#include "loewner/search.hpp"

namespace loewner {

namespace {

enum class Reach { Any, HalfLine, Finite };

struct ConditionDef {
  std::string name;
  Reach reach;
  std::function<ConditionOutcome(const FunctionDescriptor&, int, const ProbeOptions&,
                                 std::uint64_t)>
      eval;
};

const Interval kHalfLine{0.0, kInf};

std::uint64_t name_stream(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

ConditionOutcome loewner_condition(const FunctionDescriptor& g, SweepProperty p, int n,
                                   const ProbeOptions& opts, std::uint64_t seed) {
  ConditionOutcome out;
  if (n < 2 && p != SweepProperty::PSD) {
    out.note = "void at order 1";
    return out;
  }
  HuntOptions ho;
  ho.order = n;
  ho.budget = opts.trials;
  ho.seed = seed;
  ho.tol = opts.tol;
  HuntResult r = hunt(g, p, ho);
  out.satisfied = !r.witness;
  out.witness = std::move(r.witness);
  return out;
}

ConditionOutcome order_condition(const FunctionDescriptor& g, OrderProperty p, int n,
                                 const ProbeOptions& opts, std::uint64_t seed) {
  CheckOptions co;
  co.order = n;
  co.trials = opts.trials;
  co.seed = seed;
  co.tol = opts.tol;
  co.jobs = opts.jobs;
  OrderCheckReport r;
  switch (p) {
    case OrderProperty::Monotone:
      r = check_n_monotone(g, co);
      break;
    case OrderProperty::Convex:
      r = check_n_convex(g, co);
      break;
    case OrderProperty::Concave:
      r = check_n_concave(g, co);
      break;
    case OrderProperty::Contraction:
      r = check_contraction(g, co);
      break;
    case OrderProperty::LoewnerPsd:
      r = loewner_psd_probe(g, co);
      break;
  }
  ConditionOutcome out;
  out.satisfied = !r.counterexample;
  if (r.witness) {
    Witness w;
    w.kind = Witness::Kind::MatrixPair;
    w.property = p == OrderProperty::Convex ? SweepProperty::Convex : SweepProperty::Monotone;
    w.a = r.witness->a;
    w.b = r.witness->b;
    w.mix = r.witness->mix;
    w.scale = r.witness->scale;
    w.violation = r.witness->violation / r.witness->scale;
    w.seed = seed;
    w.evaluation = r.witness->trial;
    w.phase = to_string(p);
    w.function = describe(g);
    out.witness = std::move(w);
  }
  return out;
}

// Applies a boundary requirement; a refuted one makes the condition fail.
void require_boundary(ConditionOutcome& out, const FunctionDescriptor& f, BoundaryKind kind,
                      BoundaryCondition c) {
  const BoundaryEstimate est = boundary_estimate(f, kind);
  const std::optional<bool> ok = est.supports(c);
  std::string entry = to_string(kind) + " " + to_string(est.trend);
  if (!ok) {
    entry += " (inconclusive)";
  } else if (!*ok) {
    out.satisfied = false;
    entry += " (refuted)";
  }
  out.note += out.note.empty() ? entry : "; " + entry;
}

double origin_probe(const FunctionDescriptor& f, double t) { return eval(f, t); }

const std::vector<ConditionDef>& condition_defs() {
  using O = ConditionOutcome;
  using F = FunctionDescriptor;
  using P = ProbeOptions;
  static const std::vector<ConditionDef> defs = {
      {"monotone", Reach::Any,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         return order_condition(f, OrderProperty::Monotone, n, o, s);
       }},
      {"concave", Reach::Any,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         return order_condition(f, OrderProperty::Concave, n, o, s);
       }},
      {"convex", Reach::Any,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         return order_condition(f, OrderProperty::Convex, n, o, s);
       }},
      {"cnd", Reach::Any,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         return loewner_condition(f, SweepProperty::CND, n, o, s);
       }},
      {"convex-nonpositive-origin", Reach::HalfLine,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         O out = order_condition(f, OrderProperty::Convex, n, o, s);
         const double f0 = origin_probe(f, 1e-12);
         out.note = "f(0+) ~ " + std::to_string(f0);
         if (!(f0 <= 1e-6)) out.satisfied = false;
         return out;
       }},
      {"contraction", Reach::HalfLine,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         return order_condition(f, OrderProperty::Contraction, n, o, s);
       }},
      {"f-over-t-monotone", Reach::HalfLine,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         return order_condition(product(f, power(-1.0)), OrderProperty::Monotone, n, o, s);
       }},
      {"t-over-f-monotone", Reach::HalfLine,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         return order_condition(product(power(1.0), reciprocal(f)), OrderProperty::Monotone, n,
                                o, s);
       }},
      {"t2-over-f-monotone", Reach::HalfLine,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         return order_condition(product(power(2.0), reciprocal(f)), OrderProperty::Monotone, n,
                                o, s);
       }},
      {"tf-cpd", Reach::HalfLine,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         return loewner_condition(weighted(f, WeightTag::T), SweepProperty::CPD, n, o, s);
       }},
      {"cnd-growth", Reach::HalfLine,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         O out = loewner_condition(f, SweepProperty::CND, n, o, s);
         require_boundary(out, f, BoundaryKind::InfOverTAtInfinity,
                          BoundaryCondition::AboveMinusInfinity);
         return out;
       }},
      {"tf-cpd-origin", Reach::HalfLine,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         O out = loewner_condition(weighted(f, WeightTag::T), SweepProperty::CPD, n, o, s);
         require_boundary(out, f, BoundaryKind::InfTimesTAtZero, BoundaryCondition::AtLeastZero);
         return out;
       }},
      {"cpd-growth", Reach::HalfLine,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         O out = loewner_condition(f, SweepProperty::CPD, n, o, s);
         require_boundary(out, f, BoundaryKind::SupOverTAtInfinity,
                          BoundaryCondition::BelowPlusInfinity);
         require_boundary(out, f, BoundaryKind::SupAtUpperEnd,
                          BoundaryCondition::AboveMinusInfinity);
         return out;
       }},
      {"tf-cnd-origin", Reach::HalfLine,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         O out = loewner_condition(weighted(f, WeightTag::T), SweepProperty::CND, n, o, s);
         require_boundary(out, f, BoundaryKind::InfTimesTAtZero, BoundaryCondition::AtMostZero);
         require_boundary(out, f, BoundaryKind::SupAtUpperEnd,
                          BoundaryCondition::AboveMinusInfinity);
         return out;
       }},
      {"t2f-cpd-origin", Reach::HalfLine,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         O out = loewner_condition(weighted(f, WeightTag::TSquared), SweepProperty::CPD, n, o, s);
         require_boundary(out, f, BoundaryKind::InfTimesTAtZero, BoundaryCondition::AtMostZero);
         require_boundary(out, f, BoundaryKind::SupTSqAtZero, BoundaryCondition::AtLeastZero);
         return out;
       }},
      {"b-t-sq-cpd", Reach::Finite,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         const Interval j = f.domain();
         O out = loewner_condition(weighted(f, WeightTag::BMinusTSquared, j.lo, j.hi),
                                   SweepProperty::CPD, n, o, s);
         require_boundary(out, f, BoundaryKind::SupBMinusTAtB,
                          BoundaryCondition::BelowPlusInfinity);
         require_boundary(out, f, BoundaryKind::SupAtUpperEnd,
                          BoundaryCondition::AboveMinusInfinity);
         return out;
       }},
      {"ab-weight-cnd", Reach::Finite,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         const Interval j = f.domain();
         O out = loewner_condition(weighted(f, WeightTag::TMinusATimesBMinusT, j.lo, j.hi),
                                   SweepProperty::CND, n, o, s);
         require_boundary(out, f, BoundaryKind::InfTimesTMinusAAtA, BoundaryCondition::AtMostZero);
         require_boundary(out, f, BoundaryKind::SupAtUpperEnd,
                          BoundaryCondition::AboveMinusInfinity);
         return out;
       }},
      {"t-a-sq-cpd", Reach::Finite,
       [](const F& f, int n, const P& o, std::uint64_t s) {
         const Interval j = f.domain();
         O out = loewner_condition(weighted(f, WeightTag::TMinusASquared, j.lo, j.hi),
                                   SweepProperty::CPD, n, o, s);
         require_boundary(out, f, BoundaryKind::InfTimesTMinusAAtA, BoundaryCondition::AtMostZero);
         require_boundary(out, f, BoundaryKind::SupTMinusASqAtA, BoundaryCondition::AtLeastZero);
         return out;
       }},
  };
  return defs;
}

const ConditionDef& find_condition(const std::string& name) {
  for (const ConditionDef& d : condition_defs())
    if (d.name == name) return d;
  throw ConfigError("unknown condition '" + name + "'");
}

std::string order_label(const OrderTerm& t) {
  if (t.mult == 0) return std::to_string(t.offset);
  std::string s = t.mult == 1 ? "n" : std::to_string(t.mult) + "n";
  if (t.offset > 0) s += "+" + std::to_string(t.offset);
  if (t.offset < 0) s += std::to_string(t.offset);
  return s;
}

Implication arrow(std::string ant, OrderTerm ao, std::string cons, OrderTerm co,
                  std::vector<std::string> hyps, int min_n = 1, bool holds = true) {
  Implication imp;
  imp.antecedent = std::move(ant);
  imp.antecedent_order = ao;
  imp.consequent = std::move(cons);
  imp.consequent_order = co;
  imp.min_n = min_n;
  imp.holds_in_theory = holds;
  imp.hypotheses = std::move(hyps);
  imp.id = imp.antecedent + "[" + order_label(ao) + "]" + (holds ? "=>" : "=/=>") +
           imp.consequent + "[" + order_label(co) + "]";
  return imp;
}

bool near_origin_converges(const FunctionDescriptor& f, double (*probe)(const FunctionDescriptor&,
                                                                        double)) {
  if (f.domain().lo != 0.0) return false;
  try {
    const double v1 = probe(f, 1e-9), v2 = probe(f, 1e-12);
    if (!std::isfinite(v1) || !std::isfinite(v2)) return false;
    return std::abs(v1 - v2) <= 1e-3 * std::max(1.0, std::abs(v2));
  } catch (const DomainError&) {
    return false;
  }
}

double deriv_probe(const FunctionDescriptor& f, double t) { return deriv(f, t); }

bool reach_fits(Reach r, const FunctionDescriptor& f) {
  switch (r) {
    case Reach::Any:
      return true;
    case Reach::HalfLine:
      return f.domain() == kHalfLine;
    case Reach::Finite:
      return f.domain().finite();
  }
  return false;
}

}  // namespace

std::vector<std::string> condition_names() {
  std::vector<std::string> out;
  for (const ConditionDef& d : condition_defs()) out.push_back(d.name);
  return out;
}

std::vector<std::string> hypothesis_names() {
  return {"half-line", "finite-interval", "positive", "continuous-origin", "vanishing-origin",
          "c1-origin"};
}

bool satisfies_hypothesis(const FunctionDescriptor& f, const std::string& h) {
  if (h == "half-line") return f.domain() == kHalfLine;
  if (h == "finite-interval") return f.domain().finite();
  if (h == "positive") {
    const SamplingWindow w = sampling_window(f.domain());
    for (int k = 0; k <= 40; ++k) {
      const double t = w.to_point(w.z_lo + (w.z_hi - w.z_lo) * k / 40.0);
      if (!(eval(f, t) > 0.0)) return false;
    }
    return true;
  }
  if (h == "continuous-origin") return near_origin_converges(f, origin_probe);
  if (h == "vanishing-origin") {
    if (!near_origin_converges(f, origin_probe)) return false;
    return std::abs(eval(f, 1e-12)) <= 1e-3 && std::abs(1e-12 * deriv(f, 1e-12)) <= 1e-3;
  }
  if (h == "c1-origin") {
    return near_origin_converges(f, origin_probe) && near_origin_converges(f, deriv_probe);
  }
  throw ConfigError("unknown hypothesis '" + h + "'");
}

const std::vector<Implication>& implication_catalog() {
  static const std::vector<Implication> catalog = [] {
    const OrderTerm n{1, 0}, n1{1, 1}, n2{2, 0}, n21{2, 1}, n22{2, 2}, n41{4, 1};
    const auto fixed = [](int k) { return OrderTerm{0, k}; };
    const std::vector<std::string> c0{"half-line", "continuous-origin"};
    const std::vector<std::string> c0p{"half-line", "continuous-origin", "positive"};
    const std::vector<std::string> hl{"half-line"};
    const std::vector<std::string> fi{"finite-interval"};
    std::vector<Implication> v = {
        // convexity, contraction and f(t)/t
        arrow("convex-nonpositive-origin", n1, "contraction", n, c0),
        arrow("contraction", n, "f-over-t-monotone", n, c0),
        arrow("f-over-t-monotone", n, "contraction", n, c0),
        arrow("f-over-t-monotone", n2, "convex-nonpositive-origin", n, c0),
        // monotone, concave, t/f
        arrow("monotone", n2, "concave", n, c0),
        arrow("concave", n, "monotone", n, c0p),
        arrow("monotone", n2, "t-over-f-monotone", n, c0p),
        arrow("f-over-t-monotone", n2, "t2-over-f-monotone", n, c0p),
        arrow("t2-over-f-monotone", n2, "f-over-t-monotone", n, c0p),
        // Loewner matrices of f and t f
        arrow("cnd", n1, "t2-over-f-monotone", n, {"half-line", "positive", "vanishing-origin", "c1-origin"}),
        arrow("t2-over-f-monotone", n, "cnd", n, {"half-line", "positive", "vanishing-origin", "c1-origin"}),
        arrow("tf-cpd", n1, "f-over-t-monotone", n, {"half-line", "vanishing-origin"}),
        arrow("f-over-t-monotone", n, "tf-cpd", n, {"half-line", "vanishing-origin"}),
        // convexity on (0, inf)
        arrow("convex", n21, "cnd-growth", n, hl),
        arrow("cnd-growth", n41, "convex", n, hl),
        arrow("convex", n1, "tf-cpd-origin", n, hl),
        arrow("tf-cpd-origin", n21, "convex", n, hl),
        arrow("cnd-growth", fixed(2), "convex", fixed(1), hl),
        arrow("tf-cpd-origin", fixed(2), "convex", fixed(1), hl),
        // monotonicity on (0, inf)
        arrow("monotone", n, "cpd-growth", n, hl, 2),
        arrow("cpd-growth", n41, "monotone", n, hl),
        arrow("monotone", n22, "tf-cnd-origin", n, hl),
        arrow("tf-cnd-origin", n21, "monotone", n, hl),
        arrow("monotone", n, "t2f-cpd-origin", n, hl, 2),
        arrow("tf-cnd-origin", n21, "t2f-cpd-origin", n, hl),
        arrow("t2f-cpd-origin", n21, "tf-cnd-origin", n, hl),
        // monotonicity on a finite interval
        arrow("monotone", n, "b-t-sq-cpd", n, fi, 2),
        arrow("b-t-sq-cpd", n41, "monotone", n, fi),
        arrow("monotone", n22, "ab-weight-cnd", n, fi),
        arrow("ab-weight-cnd", n21, "monotone", n, fi),
        arrow("monotone", n, "t-a-sq-cpd", n, fi, 2),
        arrow("ab-weight-cnd", n21, "t-a-sq-cpd", n, fi),
        arrow("t-a-sq-cpd", n21, "ab-weight-cnd", n, fi),
        // documented non-implications
        arrow("convex", fixed(1), "cnd-growth", fixed(2), hl, 1, false),
        arrow("cnd-growth", fixed(2), "convex", fixed(2), hl, 1, false),
        arrow("tf-cpd-origin", fixed(2), "convex", fixed(2), hl, 1, false),
        arrow("convex", fixed(1), "tf-cpd-origin", fixed(2), hl, 1, false),
        arrow("convex", fixed(2), "cnd", fixed(2), fi, 1, false),
        arrow("cnd", fixed(4), "convex", fixed(1), {}, 1, false),
    };
    return v;
  }();
  return catalog;
}

const Implication& find_implication(const std::string& id) {
  for (const Implication& imp : implication_catalog())
    if (imp.id == id) return imp;
  throw UnknownImplicationError("unknown implication '" + id + "'");
}

ConditionOutcome evaluate_condition(const FunctionDescriptor& f, const std::string& name, int n,
                                    const ProbeOptions& opts) {
  const ConditionDef& def = find_condition(name);
  if (n < 1) throw ConfigError("condition order must be >= 1");
  if (!reach_fits(def.reach, f)) {
    ConditionOutcome out;
    out.evaluable = false;
    out.note = "domain " + to_string(f.domain()) + " does not fit " + name;
    return out;
  }
  const std::uint64_t seed =
      derive_seed(opts.seed, name_stream(name + "[" + std::to_string(n) + "]"));
  return def.eval(f, n, opts, seed);
}

std::vector<std::string> family_names() {
  return {"default", "power", "negated-power", "moebius", "power-interval", "examples"};
}

std::vector<FunctionDescriptor> function_family(const std::string& family) {
  std::vector<FunctionDescriptor> out;
  const auto add_powers = [&] {
    for (int k = -4; k <= 8; ++k) out.push_back(power(0.5 * k));
  };
  const auto add_moebius = [&] {
    for (double l : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
      out.push_back(moebius_monotone(l));
      out.push_back(moebius_convex(l));
    }
  };
  const auto add_examples = [&] {
    out.push_back(power(3.0));
    out.push_back(power(-2.0));
    out.push_back(piecewise_quad_linear());
    const FunctionDescriptor g = restricted(moebius_convex(0.5), Interval{0.0, 1.0});
    out.push_back(g);
    out.push_back(negated(g));
  };
  if (family == "power") {
    add_powers();
  } else if (family == "negated-power") {
    for (double a : {-1.0, -0.5, 2.0, 2.5, 3.0}) out.push_back(negated(power(a)));
  } else if (family == "moebius") {
    add_moebius();
  } else if (family == "power-interval") {
    for (double a : {-1.0, -0.5, 0.5, 1.0, 1.5, 2.0}) {
      out.push_back(restricted(power(a), Interval{0.1, 5.0}));
    }
  } else if (family == "examples") {
    add_examples();
  } else if (family == "default") {
    add_powers();
    add_moebius();
    add_examples();
  } else {
    throw ConfigError("unknown function family '" + family + "'");
  }
  return out;
}

ProbeReport probe_implication(const std::string& id, const std::string& family,
                              const std::vector<int>& sizes, const ProbeOptions& opts) {
  const Implication& imp = find_implication(id);
  ProbeReport rep;
  rep.implication = imp;
  rep.family = family;
  const bool fixed = imp.antecedent_order.mult == 0 && imp.consequent_order.mult == 0;
  rep.sizes = fixed ? std::vector<int>{0} : sizes;
  if (rep.sizes.empty()) throw ConfigError("probe needs at least one size n");
  const std::vector<FunctionDescriptor> fns = function_family(family);

  for (int n : rep.sizes) {
    if (!fixed && n < imp.min_n) {
      throw ConfigError(imp.id + " needs n >= " + std::to_string(imp.min_n));
    }
    for (const FunctionDescriptor& f : fns) {
      ProbeRow row;
      row.function = describe(f);
      row.n = n;
      for (const std::string& h : imp.hypotheses) row.applicable = row.applicable && satisfies_hypothesis(f, h);
      if (row.applicable) {
        row.antecedent = evaluate_condition(f, imp.antecedent, imp.antecedent_order.at(n), opts);
        row.applicable = row.antecedent.evaluable;
      }
      if (row.applicable && row.antecedent.satisfied) {
        row.consequent = evaluate_condition(f, imp.consequent, imp.consequent_order.at(n), opts);
        row.applicable = row.consequent->evaluable;
        row.separating = row.applicable && !row.consequent->satisfied;
      }
      if (row.separating) rep.separating.push_back(row.function);
      rep.rows.push_back(std::move(row));
    }
  }
  rep.consistent = !imp.holds_in_theory || rep.separating.empty();
  rep.demonstrated = !imp.holds_in_theory && !rep.separating.empty();
  return rep;
}

}  // namespace loewner
