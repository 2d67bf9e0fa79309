#pragma once

#include <span>
#include <string>
#include <vector>

#include "loewner/divdiff.hpp"
#include "loewner/funcs.hpp"
#include "loewner/spectral.hpp"

namespace loewner {

using PointTuple = std::vector<double>;

/// Matrix of first divided differences [f^[1](t_i, t_j)] with the points and
/// a description of the generating function.
struct LoewnerMatrix {
  Matrix entries;
  PointTuple points;
  std::string source;

  Eigen::Index order() const { return entries.rows(); }
};

/// Builds L_f(t_1, ..., t_n). Repeated points are allowed and give
/// derivative entries. Throws DomainError when a point is outside domain(f).
LoewnerMatrix build_loewner(const FunctionDescriptor& f, std::span<const double> points,
                            const ConfluencePolicy& policy = {});

/// The weighted transform w(t) f(t) for one of the weight tags. Interval
/// weights need the endpoints a and/or b; missing ones raise ConfigError.
FunctionDescriptor weighted(const FunctionDescriptor& f, WeightTag tag,
                            double a = std::numeric_limits<double>::quiet_NaN(),
                            double b = std::numeric_limits<double>::quiet_NaN());

// E_n, the all-ones matrix.
inline Matrix ones_matrix(Eigen::Index n) { return Matrix::Ones(n, n); }

}  // namespace loewner
