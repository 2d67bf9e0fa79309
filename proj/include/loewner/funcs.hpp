#pragma once

#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace loewner {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double t) const { return t > lo && t < hi; }
  bool finite() const { return lo > -kInf && hi < kInf; }
  bool operator==(const Interval&) const = default;
};

Interval make_interval(double lo, double hi);
Interval intersect(const Interval& a, const Interval& b);
bool is_subset(const Interval& inner, const Interval& outer);
std::string to_string(const Interval& j);

// Polynomial weights w(t) multiplying a function; a and b are the interval
// endpoints used by the interval-specific weights.
enum class WeightTag {
  T,                  // t
  TSquared,           // t^2
  BMinusTSquared,     // (b - t)^2
  TMinusATimesBMinusT,  // (t - a)(b - t)
  TMinusASquared,     // (t - a)^2
};

std::string to_string(WeightTag tag);
WeightTag weight_tag_from_string(const std::string& name);
bool weight_needs_a(WeightTag tag);
bool weight_needs_b(WeightTag tag);

struct FunctionNode;

/// Immutable description of a real C^1 function on an open interval.
///
/// Descriptors are cheap to copy (shared, immutable node tree) and carry
/// analytic derivatives for every closed-form variant. Only `Tabulated`
/// evaluates approximately.
class FunctionDescriptor {
 public:
  explicit FunctionDescriptor(std::shared_ptr<const FunctionNode> node);

  const FunctionNode& node() const { return *node_; }
  const Interval& domain() const { return domain_; }

 private:
  std::shared_ptr<const FunctionNode> node_;
  Interval domain_;
};

namespace fn {

struct Power {
  double alpha;
};
struct Affine {
  double c0;
  double c1;
};
struct MoebiusMonotone {  // t / (1 - lambda t) on (-1, 1)
  double lambda;
};
struct MoebiusConvex {  // t^2 / (1 - lambda t) on (-1, 1)
  double lambda;
};
struct PiecewiseQuadLinear {};  // t^2 on (0, 1], 2t - 1 on [1, inf)
struct Tabulated {
  std::vector<double> t;
  std::vector<double> values;
  std::vector<double> derivatives;  // empty: finite-difference fallback
};
struct Negated {
  FunctionDescriptor inner;
};
struct Scaled {
  FunctionDescriptor inner;
  double c;
};
struct Shifted {  // t -> inner(t + eps)
  FunctionDescriptor inner;
  double eps;
};
struct Restricted {
  FunctionDescriptor inner;
  Interval dom;
};
struct Sum {
  FunctionDescriptor lhs;
  FunctionDescriptor rhs;
};
struct Product {
  FunctionDescriptor lhs;
  FunctionDescriptor rhs;
};
struct Reciprocal {
  FunctionDescriptor inner;
};
struct Weighted {
  FunctionDescriptor inner;
  WeightTag tag;
  double a;
  double b;
};
// x -> inner(psi^{-1}(x)) on (0, inf), psi(t) = (t - a) / (b - t).
struct ToHalfLine {
  FunctionDescriptor inner;
  double a;
  double b;
};
// t -> inner(psi(t)) on (a, b).
struct FromHalfLine {
  FunctionDescriptor inner;
  double a;
  double b;
};

}  // namespace fn

struct FunctionNode {
  using Variant =
      std::variant<fn::Power, fn::Affine, fn::MoebiusMonotone, fn::MoebiusConvex,
                   fn::PiecewiseQuadLinear, fn::Tabulated, fn::Negated, fn::Scaled,
                   fn::Shifted, fn::Restricted, fn::Sum, fn::Product, fn::Reciprocal,
                   fn::Weighted, fn::ToHalfLine, fn::FromHalfLine>;
  Variant v;
};

// Constructors. All validate parameters and throw ConfigError on bad input.
FunctionDescriptor power(double alpha);
FunctionDescriptor affine(double c0, double c1);
FunctionDescriptor constant(double c);
FunctionDescriptor identity();
FunctionDescriptor moebius_monotone(double lambda);
FunctionDescriptor moebius_convex(double lambda);
FunctionDescriptor piecewise_quad_linear();
FunctionDescriptor tabulated(std::vector<double> t, std::vector<double> values,
                             std::vector<double> derivatives = {});
FunctionDescriptor negated(const FunctionDescriptor& f);
FunctionDescriptor scaled(const FunctionDescriptor& f, double c);
FunctionDescriptor shifted(const FunctionDescriptor& f, double eps);
FunctionDescriptor restricted(const FunctionDescriptor& f, const Interval& dom);
FunctionDescriptor sum(const FunctionDescriptor& f, const FunctionDescriptor& g);
FunctionDescriptor product(const FunctionDescriptor& f, const FunctionDescriptor& g);
FunctionDescriptor reciprocal(const FunctionDescriptor& f);
FunctionDescriptor weighted_product(const FunctionDescriptor& f, WeightTag tag,
                                    double a = std::numeric_limits<double>::quiet_NaN(),
                                    double b = std::numeric_limits<double>::quiet_NaN());
FunctionDescriptor to_half_line(const FunctionDescriptor& f, double a, double b);
FunctionDescriptor from_half_line(const FunctionDescriptor& g, double a, double b);

inline FunctionDescriptor operator-(const FunctionDescriptor& f) { return negated(f); }
inline FunctionDescriptor operator+(const FunctionDescriptor& f, const FunctionDescriptor& g) {
  return sum(f, g);
}
inline FunctionDescriptor operator-(const FunctionDescriptor& f, const FunctionDescriptor& g) {
  return sum(f, negated(g));
}
inline FunctionDescriptor operator*(double c, const FunctionDescriptor& f) { return scaled(f, c); }
inline FunctionDescriptor operator*(const FunctionDescriptor& f, const FunctionDescriptor& g) {
  return product(f, g);
}

double eval(const FunctionDescriptor& f, double t);
double deriv(const FunctionDescriptor& f, double t);
inline const Interval& domain(const FunctionDescriptor& f) { return f.domain(); }

// Short human-readable form, e.g. "t^0.5" or "(t-a)^2*[t/(1-0.5t)]".
std::string describe(const FunctionDescriptor& f);

// Returns the exponent when f is a bare power function.
const fn::Power* as_power(const FunctionDescriptor& f);

}  // namespace loewner
