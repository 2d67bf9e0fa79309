#pragma once

#include "loewner/funcs.hpp"

namespace loewner {

// Points closer than delta * max(1, |s|, |t|) are treated as coincident.
struct ConfluencePolicy {
  double delta = 1e-7;
};

ConfluencePolicy make_confluence_policy(double delta);

bool confluent(double s, double t, const ConfluencePolicy& policy);

/// First divided difference f^[1](s, t).
///
/// Off the diagonal this is the plain quotient (f(s) - f(t)) / (s - t); for
/// confluent points the derivative at the midpoint is used, so the result is
/// continuous across the diagonal and exactly symmetric in (s, t).
double fdd(const FunctionDescriptor& f, double s, double t, const ConfluencePolicy& policy = {});

/// Second divided difference f^[2](u, v, w), symmetric in its arguments.
///
/// Coincident pairs fall back to derivative values through fdd; a fully
/// confluent triple uses a central difference of f' for f''/2.
double sdd(const FunctionDescriptor& f, double u, double v, double w,
           const ConfluencePolicy& policy = {});

}  // namespace loewner
