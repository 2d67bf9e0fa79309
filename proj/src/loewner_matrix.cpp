#include "loewner/loewner_matrix.hpp"

#include "loewner/errors.hpp"

namespace loewner {

LoewnerMatrix build_loewner(const FunctionDescriptor& f, std::span<const double> points,
                            const ConfluencePolicy& policy) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n == 0) throw ShapeError("a Loewner matrix needs at least one point");
  for (double t : points) {
    if (!f.domain().contains(t)) {
      throw DomainError("point " + std::to_string(t) + " outside domain " + to_string(f.domain()) +
                        " of " + describe(f));
    }
  }
  LoewnerMatrix out;
  out.entries.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = fdd(f, points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)], policy);
      out.entries(i, j) = v;
      out.entries(j, i) = v;
    }
  }
  out.points.assign(points.begin(), points.end());
  out.source = describe(f);
  return out;
}

FunctionDescriptor weighted(const FunctionDescriptor& f, WeightTag tag, double a, double b) {
  return weighted_product(f, tag, a, b);
}

}  // namespace loewner
