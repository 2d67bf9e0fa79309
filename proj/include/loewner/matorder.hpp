#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "loewner/definiteness.hpp"
#include "loewner/funcs.hpp"
#include "loewner/loewner_matrix.hpp"
#include "loewner/rng.hpp"
#include "loewner/spectral.hpp"

namespace loewner {

/// Q diag(f(lambda_i)) Q^T. Throws SpectrumError when an eigenvalue is not
/// inside domain(f) with a 1e-10 margin.
Matrix apply_function(const FunctionDescriptor& f, const Matrix& m);

// Finite region of an interval used for random sampling.
//
// Half-lines are sampled log-uniformly in the distance to the finite end
// (exponents [exp_lo, exp_hi]); finite intervals uniformly; the real line
// uniformly in [-10^exp_hi, 10^exp_hi]. Hunts over finite intervals use the
// PsiLog kind: x = psi(t) log-uniform, which approaches both ends geometrically.
struct SamplingWindow {
  enum class Kind { LogUp, LogDown, Linear, PsiLog };
  Kind kind = Kind::Linear;
  Interval interval;
  double z_lo = 0.0;
  double z_hi = 1.0;

  double to_point(double z) const;
  double sample(Rng& rng) const { return to_point(rng.uniform(z_lo, z_hi)); }
  double lower() const;
  double upper() const;
  bool admits(double t) const { return interval.contains(t) && t >= lower() && t <= upper(); }
};

SamplingWindow sampling_window(const Interval& j, double exp_lo = -3.0, double exp_hi = 3.0);
SamplingWindow hunt_window(const Interval& j, double exp_lo = -3.0, double exp_hi = 3.0);

struct PairSamplingOptions {
  double exp_lo = -3.0;
  double exp_hi = 3.0;
  std::optional<double> fixed_scale;  // s in A = B + s W W^T; random when unset
};

Matrix random_orthogonal(Eigen::Index n, Rng& rng);
Matrix random_symmetric_in(const SamplingWindow& window, Eigen::Index n, Rng& rng);

/// (A, B) with A - B PSD by construction and both spectra inside the window.
/// Throws SamplingError after 1000 rejected perturbations.
std::pair<Matrix, Matrix> sample_ordered_pair(const Interval& j, Eigen::Index n, Rng& rng,
                                              const PairSamplingOptions& opts = {});

enum class OrderProperty { Monotone, Convex, Concave, LoewnerPsd, Contraction };
std::string to_string(OrderProperty p);

// A concrete failure. Matrix pairs for monotone/convex/contraction (mix is the
// convex-combination weight, or the contraction X for Contraction), point
// tuples for the Loewner probe.
struct OrderWitness {
  Matrix a;
  Matrix b;
  double mix = std::numeric_limits<double>::quiet_NaN();
  PointTuple points;
  double violation = 0.0;  // -(smallest eigenvalue of the defect), absolute
  double scale = 1.0;
  std::uint64_t trial = 0;
};

struct OrderCheckReport {
  OrderProperty property = OrderProperty::Monotone;
  int order = 1;
  long trials = 0;  // trials actually run
  bool counterexample = false;
  std::optional<OrderWitness> witness;
  std::uint64_t seed = 0;
  double tolerance = kDefaultTolerance;
  Interval interval;
};

struct CheckOptions {
  int order = 2;
  long trials = 500;
  std::optional<Interval> interval;  // defaults to domain(f)
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  double exp_lo = -3.0;
  double exp_hi = 3.0;
};

OrderCheckReport check_n_monotone(const FunctionDescriptor& f, const CheckOptions& opts);
OrderCheckReport check_n_convex(const FunctionDescriptor& f, const CheckOptions& opts);
OrderCheckReport check_n_concave(const FunctionDescriptor& f, const CheckOptions& opts);
OrderCheckReport loewner_psd_probe(const FunctionDescriptor& f, const CheckOptions& opts);

// f(X^T A X) <= X^T f(A) X for A >= 0 and ||X|| <= 1.
OrderCheckReport check_contraction(const FunctionDescriptor& f, const CheckOptions& opts);

/// Recomputes the violation (absolute, same convention as OrderWitness) of a
/// stored witness; deterministic given the witness contents.
double replay_violation(const FunctionDescriptor& f, OrderProperty property,
                        const OrderWitness& w, const ConfluencePolicy& policy = {});

}  // namespace loewner
