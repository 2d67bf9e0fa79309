#include "loewner/funcs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iterator>

#include "loewner/errors.hpp"

namespace loewner {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

[[noreturn]] void domain_error(const FunctionDescriptor& f, double t) {
  throw DomainError("point " + fmt(t) + " outside domain " + to_string(f.domain()) + " of " +
                    describe(f));
}

double weight_value(WeightTag tag, double a, double b, double t) {
  switch (tag) {
    case WeightTag::T:
      return t;
    case WeightTag::TSquared:
      return t * t;
    case WeightTag::BMinusTSquared:
      return (b - t) * (b - t);
    case WeightTag::TMinusATimesBMinusT:
      return (t - a) * (b - t);
    case WeightTag::TMinusASquared:
      return (t - a) * (t - a);
  }
  return 0.0;
}

double weight_slope(WeightTag tag, double a, double b, double t) {
  switch (tag) {
    case WeightTag::T:
      return 1.0;
    case WeightTag::TSquared:
      return 2.0 * t;
    case WeightTag::BMinusTSquared:
      return -2.0 * (b - t);
    case WeightTag::TMinusATimesBMinusT:
      return (b - t) - (t - a);
    case WeightTag::TMinusASquared:
      return 2.0 * (t - a);
  }
  return 0.0;
}

Interval compute_domain(const FunctionNode& node) {
  return std::visit(
      overloaded{
          [](const fn::Power&) { return Interval{0.0, kInf}; },
          [](const fn::Affine&) { return Interval{}; },
          [](const fn::MoebiusMonotone&) { return Interval{-1.0, 1.0}; },
          [](const fn::MoebiusConvex&) { return Interval{-1.0, 1.0}; },
          [](const fn::PiecewiseQuadLinear&) { return Interval{0.0, kInf}; },
          [](const fn::Tabulated& tab) { return Interval{tab.t.front(), tab.t.back()}; },
          [](const fn::Negated& n) { return n.inner.domain(); },
          [](const fn::Scaled& s) { return s.inner.domain(); },
          [](const fn::Shifted& s) {
            return Interval{s.inner.domain().lo - s.eps, s.inner.domain().hi - s.eps};
          },
          [](const fn::Restricted& r) { return r.dom; },
          [](const fn::Sum& s) { return intersect(s.lhs.domain(), s.rhs.domain()); },
          [](const fn::Product& p) { return intersect(p.lhs.domain(), p.rhs.domain()); },
          [](const fn::Reciprocal& r) { return r.inner.domain(); },
          [](const fn::Weighted& w) { return w.inner.domain(); },
          [](const fn::ToHalfLine&) { return Interval{0.0, kInf}; },
          [](const fn::FromHalfLine& h) { return Interval{h.a, h.b}; },
      },
      node.v);
}

FunctionDescriptor make(FunctionNode::Variant v) {
  return FunctionDescriptor(std::make_shared<const FunctionNode>(FunctionNode{std::move(v)}));
}

// Linear interpolation on a sorted grid; t must lie in [front, back].
double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double t) {
  auto it = std::upper_bound(xs.begin(), xs.end(), t);
  std::size_t hi = static_cast<std::size_t>(std::distance(xs.begin(), it));
  hi = std::clamp<std::size_t>(hi, 1, xs.size() - 1);
  const std::size_t lo = hi - 1;
  const double w = (t - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

double psi(double a, double b, double t) { return (t - a) / (b - t); }
double psi_inv(double a, double b, double x) { return b - (b - a) / (x + 1.0); }

}  // namespace

Interval make_interval(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
    throw ConfigError("interval requires lo < hi, got (" + fmt(lo) + ", " + fmt(hi) + ")");
  }
  return Interval{lo, hi};
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval out{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (!(out.lo < out.hi)) throw ConfigError("empty domain intersection");
  return out;
}

bool is_subset(const Interval& inner, const Interval& outer) {
  return inner.lo >= outer.lo && inner.hi <= outer.hi;
}

std::string to_string(const Interval& j) { return "(" + fmt(j.lo) + ", " + fmt(j.hi) + ")"; }

std::string to_string(WeightTag tag) {
  switch (tag) {
    case WeightTag::T:
      return "t";
    case WeightTag::TSquared:
      return "t2";
    case WeightTag::BMinusTSquared:
      return "b-t-sq";
    case WeightTag::TMinusATimesBMinusT:
      return "ta-bt";
    case WeightTag::TMinusASquared:
      return "t-a-sq";
  }
  return "?";
}

WeightTag weight_tag_from_string(const std::string& name) {
  for (WeightTag tag : {WeightTag::T, WeightTag::TSquared, WeightTag::BMinusTSquared,
                        WeightTag::TMinusATimesBMinusT, WeightTag::TMinusASquared}) {
    if (to_string(tag) == name) return tag;
  }
  throw ConfigError("unknown weight '" + name + "' (expected t, t2, b-t-sq, ta-bt, t-a-sq)");
}

bool weight_needs_a(WeightTag tag) {
  return tag == WeightTag::TMinusATimesBMinusT || tag == WeightTag::TMinusASquared;
}

bool weight_needs_b(WeightTag tag) {
  return tag == WeightTag::BMinusTSquared || tag == WeightTag::TMinusATimesBMinusT;
}

FunctionDescriptor::FunctionDescriptor(std::shared_ptr<const FunctionNode> node)
    : node_(std::move(node)), domain_(compute_domain(*node_)) {}

FunctionDescriptor power(double alpha) {
  if (!std::isfinite(alpha)) throw ConfigError("power exponent must be finite");
  return make(fn::Power{alpha});
}

FunctionDescriptor affine(double c0, double c1) {
  if (!std::isfinite(c0) || !std::isfinite(c1)) throw ConfigError("affine coefficients must be finite");
  return make(fn::Affine{c0, c1});
}

FunctionDescriptor constant(double c) { return affine(c, 0.0); }
FunctionDescriptor identity() { return affine(0.0, 1.0); }

FunctionDescriptor moebius_monotone(double lambda) {
  if (!(lambda >= -1.0 && lambda <= 1.0)) throw ConfigError("moebius lambda must lie in [-1, 1]");
  return make(fn::MoebiusMonotone{lambda});
}

FunctionDescriptor moebius_convex(double lambda) {
  if (!(lambda >= -1.0 && lambda <= 1.0)) throw ConfigError("moebius lambda must lie in [-1, 1]");
  return make(fn::MoebiusConvex{lambda});
}

FunctionDescriptor piecewise_quad_linear() {
  // Both branches must meet with equal slope at the junction t = 1.
  constexpr double left_value = 1.0 * 1.0, right_value = 2.0 * 1.0 - 1.0;
  constexpr double left_slope = 2.0 * 1.0, right_slope = 2.0;
  static_assert(left_value == right_value && left_slope == right_slope);
  return make(fn::PiecewiseQuadLinear{});
}

FunctionDescriptor tabulated(std::vector<double> t, std::vector<double> values,
                             std::vector<double> derivatives) {
  if (t.size() < 2) throw ConfigError("tabulated function needs at least two samples");
  if (values.size() != t.size()) throw ConfigError("tabulated values/points size mismatch");
  if (!derivatives.empty() && derivatives.size() != t.size()) {
    throw ConfigError("tabulated derivatives/points size mismatch");
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw ConfigError("tabulated points must be strictly increasing");
  }
  return make(fn::Tabulated{std::move(t), std::move(values), std::move(derivatives)});
}

FunctionDescriptor negated(const FunctionDescriptor& f) { return make(fn::Negated{f}); }

FunctionDescriptor scaled(const FunctionDescriptor& f, double c) {
  if (!std::isfinite(c)) throw ConfigError("scale factor must be finite");
  return make(fn::Scaled{f, c});
}

FunctionDescriptor shifted(const FunctionDescriptor& f, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError("shift must be finite and positive");
  return make(fn::Shifted{f, eps});
}

FunctionDescriptor restricted(const FunctionDescriptor& f, const Interval& dom) {
  make_interval(dom.lo, dom.hi);
  if (!is_subset(dom, f.domain())) {
    throw ConfigError("restriction " + to_string(dom) + " is not inside " + to_string(f.domain()));
  }
  return make(fn::Restricted{f, dom});
}

FunctionDescriptor sum(const FunctionDescriptor& f, const FunctionDescriptor& g) {
  return make(fn::Sum{f, g});
}

FunctionDescriptor product(const FunctionDescriptor& f, const FunctionDescriptor& g) {
  return make(fn::Product{f, g});
}

FunctionDescriptor reciprocal(const FunctionDescriptor& f) { return make(fn::Reciprocal{f}); }

FunctionDescriptor weighted_product(const FunctionDescriptor& f, WeightTag tag, double a, double b) {
  if (weight_needs_a(tag) && !std::isfinite(a)) {
    throw ConfigError("weight " + to_string(tag) + " needs a finite left endpoint a");
  }
  if (weight_needs_b(tag) && !std::isfinite(b)) {
    throw ConfigError("weight " + to_string(tag) + " needs a finite right endpoint b");
  }
  return make(fn::Weighted{f, tag, a, b});
}

FunctionDescriptor to_half_line(const FunctionDescriptor& f, double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw ConfigError("conjugation needs a finite interval a < b");
  }
  if (!is_subset(Interval{a, b}, f.domain())) {
    throw ConfigError("conjugation interval " + to_string(Interval{a, b}) + " is not inside " +
                      to_string(f.domain()));
  }
  return make(fn::ToHalfLine{f, a, b});
}

FunctionDescriptor from_half_line(const FunctionDescriptor& g, double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw ConfigError("conjugation needs a finite interval a < b");
  }
  if (!is_subset(Interval{0.0, kInf}, g.domain())) {
    throw ConfigError("pull-back needs a function defined on (0, inf)");
  }
  return make(fn::FromHalfLine{g, a, b});
}

double eval(const FunctionDescriptor& f, double t) {
  if (!f.domain().contains(t)) domain_error(f, t);
  return std::visit(
      overloaded{
          [&](const fn::Power& p) { return std::pow(t, p.alpha); },
          [&](const fn::Affine& a) { return a.c0 + a.c1 * t; },
          [&](const fn::MoebiusMonotone& m) {
            const double den = 1.0 - m.lambda * t;
            if (den == 0.0) domain_error(f, t);
            return t / den;
          },
          [&](const fn::MoebiusConvex& m) {
            const double den = 1.0 - m.lambda * t;
            if (den == 0.0) domain_error(f, t);
            return t * t / den;
          },
          [&](const fn::PiecewiseQuadLinear&) { return t <= 1.0 ? t * t : 2.0 * t - 1.0; },
          [&](const fn::Tabulated& tab) { return interpolate(tab.t, tab.values, t); },
          [&](const fn::Negated& n) { return -eval(n.inner, t); },
          [&](const fn::Scaled& s) { return s.c * eval(s.inner, t); },
          [&](const fn::Shifted& s) { return eval(s.inner, t + s.eps); },
          [&](const fn::Restricted& r) { return eval(r.inner, t); },
          [&](const fn::Sum& s) { return eval(s.lhs, t) + eval(s.rhs, t); },
          [&](const fn::Product& p) { return eval(p.lhs, t) * eval(p.rhs, t); },
          [&](const fn::Reciprocal& r) {
            const double v = eval(r.inner, t);
            if (v == 0.0) domain_error(f, t);
            return 1.0 / v;
          },
          [&](const fn::Weighted& w) { return weight_value(w.tag, w.a, w.b, t) * eval(w.inner, t); },
          [&](const fn::ToHalfLine& h) { return eval(h.inner, psi_inv(h.a, h.b, t)); },
          [&](const fn::FromHalfLine& h) { return eval(h.inner, psi(h.a, h.b, t)); },
      },
      f.node().v);
}

double deriv(const FunctionDescriptor& f, double t) {
  if (!f.domain().contains(t)) domain_error(f, t);
  return std::visit(
      overloaded{
          [&](const fn::Power& p) {
            return p.alpha == 0.0 ? 0.0 : p.alpha * std::pow(t, p.alpha - 1.0);
          },
          [&](const fn::Affine& a) { return a.c1; },
          [&](const fn::MoebiusMonotone& m) {
            const double den = 1.0 - m.lambda * t;
            if (den == 0.0) domain_error(f, t);
            return 1.0 / (den * den);
          },
          [&](const fn::MoebiusConvex& m) {
            const double den = 1.0 - m.lambda * t;
            if (den == 0.0) domain_error(f, t);
            return t * (2.0 - m.lambda * t) / (den * den);
          },
          [&](const fn::PiecewiseQuadLinear&) { return t <= 1.0 ? 2.0 * t : 2.0; },
          [&](const fn::Tabulated& tab) {
            if (!tab.derivatives.empty()) return interpolate(tab.t, tab.derivatives, t);
            const double h = std::cbrt(std::numeric_limits<double>::epsilon()) *
                             std::max(1.0, std::abs(t));
            const double lo = std::max(t - h, tab.t.front());
            const double hi = std::min(t + h, tab.t.back());
            return (interpolate(tab.t, tab.values, hi) - interpolate(tab.t, tab.values, lo)) /
                   (hi - lo);
          },
          [&](const fn::Negated& n) { return -deriv(n.inner, t); },
          [&](const fn::Scaled& s) { return s.c * deriv(s.inner, t); },
          [&](const fn::Shifted& s) { return deriv(s.inner, t + s.eps); },
          [&](const fn::Restricted& r) { return deriv(r.inner, t); },
          [&](const fn::Sum& s) { return deriv(s.lhs, t) + deriv(s.rhs, t); },
          [&](const fn::Product& p) {
            return deriv(p.lhs, t) * eval(p.rhs, t) + eval(p.lhs, t) * deriv(p.rhs, t);
          },
          [&](const fn::Reciprocal& r) {
            const double v = eval(r.inner, t);
            if (v == 0.0) domain_error(f, t);
            return -deriv(r.inner, t) / (v * v);
          },
          [&](const fn::Weighted& w) {
            return weight_slope(w.tag, w.a, w.b, t) * eval(w.inner, t) +
                   weight_value(w.tag, w.a, w.b, t) * deriv(w.inner, t);
          },
          [&](const fn::ToHalfLine& h) {
            const double x1 = t + 1.0;
            return deriv(h.inner, psi_inv(h.a, h.b, t)) * (h.b - h.a) / (x1 * x1);
          },
          [&](const fn::FromHalfLine& h) {
            const double d = h.b - t;
            return deriv(h.inner, psi(h.a, h.b, t)) * (h.b - h.a) / (d * d);
          },
      },
      f.node().v);
}

std::string describe(const FunctionDescriptor& f) {
  return std::visit(
      overloaded{
          [](const fn::Power& p) { return "t^" + fmt(p.alpha); },
          [](const fn::Affine& a) {
            if (a.c1 == 0.0) return fmt(a.c0);
            return fmt(a.c0) + "+" + fmt(a.c1) + "*t";
          },
          [](const fn::MoebiusMonotone& m) { return "t/(1-" + fmt(m.lambda) + "*t)"; },
          [](const fn::MoebiusConvex& m) { return "t^2/(1-" + fmt(m.lambda) + "*t)"; },
          [](const fn::PiecewiseQuadLinear&) { return std::string("piecewise(t^2|2t-1)"); },
          [](const fn::Tabulated& tab) {
            return "tabulated[" + std::to_string(tab.t.size()) + "]";
          },
          [](const fn::Negated& n) { return "-(" + describe(n.inner) + ")"; },
          [](const fn::Scaled& s) { return fmt(s.c) + "*(" + describe(s.inner) + ")"; },
          [](const fn::Shifted& s) { return "(" + describe(s.inner) + ")(t+" + fmt(s.eps) + ")"; },
          [](const fn::Restricted& r) { return "(" + describe(r.inner) + ")|" + to_string(r.dom); },
          [](const fn::Sum& s) { return "(" + describe(s.lhs) + ")+(" + describe(s.rhs) + ")"; },
          [](const fn::Product& p) { return "(" + describe(p.lhs) + ")*(" + describe(p.rhs) + ")"; },
          [](const fn::Reciprocal& r) { return "1/(" + describe(r.inner) + ")"; },
          [](const fn::Weighted& w) {
            std::string weight;
            switch (w.tag) {
              case WeightTag::T: weight = "t"; break;
              case WeightTag::TSquared: weight = "t^2"; break;
              case WeightTag::BMinusTSquared: weight = "(" + fmt(w.b) + "-t)^2"; break;
              case WeightTag::TMinusATimesBMinusT:
                weight = "(t-" + fmt(w.a) + ")(" + fmt(w.b) + "-t)";
                break;
              case WeightTag::TMinusASquared: weight = "(t-" + fmt(w.a) + ")^2"; break;
            }
            return weight + "*(" + describe(w.inner) + ")";
          },
          [](const fn::ToHalfLine& h) {
            return "(" + describe(h.inner) + ")o psi^-1[" + fmt(h.a) + "," + fmt(h.b) + "]";
          },
          [](const fn::FromHalfLine& h) {
            return "(" + describe(h.inner) + ")o psi[" + fmt(h.a) + "," + fmt(h.b) + "]";
          },
      },
      f.node().v);
}

const fn::Power* as_power(const FunctionDescriptor& f) {
  return std::get_if<fn::Power>(&f.node().v);
}

}  // namespace loewner
