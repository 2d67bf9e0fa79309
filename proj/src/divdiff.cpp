#include "loewner/divdiff.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "loewner/errors.hpp"

namespace loewner {

ConfluencePolicy make_confluence_policy(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ConfigError("confluence threshold must be positive");
  }
  return ConfluencePolicy{delta};
}

bool confluent(double s, double t, const ConfluencePolicy& policy) {
  const double scale = std::max({1.0, std::abs(s), std::abs(t)});
  return std::abs(s - t) <= policy.delta * scale;
}

double fdd(const FunctionDescriptor& f, double s, double t, const ConfluencePolicy& policy) {
  if (confluent(s, t, policy)) return deriv(f, 0.5 * (s + t));
  return (eval(f, s) - eval(f, t)) / (s - t);
}

double sdd(const FunctionDescriptor& f, double u, double v, double w,
           const ConfluencePolicy& policy) {
  std::array<double, 3> p{u, v, w};
  std::sort(p.begin(), p.end());
  if (!confluent(p[0], p[2], policy)) {
    return (fdd(f, p[0], p[1], policy) - fdd(f, p[1], p[2], policy)) / (p[0] - p[2]);
  }
  // All three points coincide: f''(m) / 2 from a central difference of f'.
  const double m = (p[0] + p[1] + p[2]) / 3.0;
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(m));
  return (deriv(f, m + h) - deriv(f, m - h)) / (4.0 * h);
}

}  // namespace loewner
