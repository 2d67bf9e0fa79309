#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loewner/definiteness.hpp"
#include "loewner/funcs.hpp"
#include "loewner/loewner_matrix.hpp"
#include "loewner/matorder.hpp"

namespace loewner {

enum class SweepProperty { PSD, CPD, CND, Monotone, Convex };
std::string to_string(SweepProperty p);
SweepProperty sweep_property_from_string(const std::string& name);

/// A concrete failure with enough data to replay it.
///
/// Point witnesses (psd/cpd/cnd) carry the tuple; matrix witnesses carry
/// (A, B) and, for convexity, the mixing weight. `violation` is relative to
/// `scale` and is what replay() recomputes.
struct Witness {
  enum class Kind { Points, MatrixPair };
  Kind kind = Kind::Points;
  SweepProperty property = SweepProperty::CPD;
  PointTuple points;
  Matrix a;
  Matrix b;
  double mix = std::numeric_limits<double>::quiet_NaN();
  double violation = 0.0;
  double scale = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t evaluation = 0;  // index of the trial or hunt evaluation that produced it
  std::string phase;            // random, extreme, refine, trial
  std::string function;
};

/// Recomputed relative violation of a stored witness.
double replay(const FunctionDescriptor& f, const Witness& w, double tol = kDefaultTolerance);

enum class HuntPhase { Random, Extreme, Refine };
std::string to_string(HuntPhase p);

struct HuntOptions {
  int order = 3;
  long budget = 2000;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  std::optional<Interval> interval;
  double exp_lo = -3.0;
  double exp_hi = 3.0;
  double min_separation = 1e-4;  // in sampling coordinates
  unsigned jobs = 1;             // used by the matrix-pair checkers only
};

struct HuntResult {
  std::optional<Witness> witness;
  long evaluations = 0;
  double best_violation = -std::numeric_limits<double>::infinity();
  PointTuple best_points;
  std::vector<double> refine_history;  // best violation after each refinement evaluation
};

/// Three-phase search for a tuple (or matrix pair) violating `target`:
/// random sampling, extreme coordinates near the ends of the sampling box,
/// then multiplicative coordinate refinement of the best tuple. For power
/// functions on (0, inf) the last point is pinned at 1.
HuntResult hunt(const FunctionDescriptor& f, SweepProperty target, const HuntOptions& opts);

struct AlphaGrid {
  double lo = -2.0;
  double hi = 4.0;
  double step = 0.25;

  std::vector<double> values() const;
};

AlphaGrid parse_alpha_grid(const std::string& spec);  // "lo:hi:step"

struct SweepCell {
  double alpha = 0.0;
  int size = 2;
  SweepProperty property = SweepProperty::CPD;
  bool counterexample = false;
  long evaluations = 0;
  std::uint64_t seed = 0;
  std::optional<Witness> witness;
};

// Verdict flip between adjacent grid values; `at` is the alpha on the side
// where no counterexample was found.
struct Flip {
  int size = 2;
  SweepProperty property = SweepProperty::CPD;
  double lo = 0.0;
  double hi = 0.0;
  double at = 0.0;
};

struct ClassificationTable {
  std::vector<SweepCell> cells;
  std::vector<Flip> flips;

  const SweepCell* find(double alpha, int size, SweepProperty p) const;
  // Grid alphas with no counterexample.
  std::vector<double> holding(int size, SweepProperty p) const;
};

struct SweepOptions {
  AlphaGrid grid;
  std::vector<int> sizes{2};
  std::vector<SweepProperty> properties{SweepProperty::CPD};
  long trials = 500;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  unsigned jobs = 1;
};

ClassificationTable sweep_alpha(const SweepOptions& opts);

std::vector<Flip> detect_flips(const std::vector<SweepCell>& cells);

// Empirical probing of the implications between the function conditions.
//
// Conditions are named by what they require; orders are affine in n, so an
// arrow like "convex[2n+1]=>cnd-growth[n]" is probed for each requested n.
// Fixed-order arrows ("cnd-growth[2]=>convex[1]") ignore n.

struct OrderTerm {
  int mult = 1;
  int offset = 0;

  int at(int n) const { return mult * n + offset; }
};

struct Implication {
  std::string id;
  std::string antecedent;
  OrderTerm antecedent_order;
  std::string consequent;
  OrderTerm consequent_order;
  int min_n = 1;
  bool holds_in_theory = true;  // false for documented non-implications
  std::vector<std::string> hypotheses;  // positive, continuous-origin, ...
};

const std::vector<Implication>& implication_catalog();
const Implication& find_implication(const std::string& id);  // UnknownImplicationError
std::vector<std::string> condition_names();
std::vector<std::string> hypothesis_names();

struct ConditionOutcome {
  bool evaluable = true;   // false when domain(f) does not fit the condition
  bool satisfied = true;   // no counterexample found
  std::optional<Witness> witness;
  std::string note;        // boundary evidence, e.g. "inf-f-over-t-inf diverging"
};

struct ProbeOptions {
  long trials = 300;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  unsigned jobs = 1;
};

ConditionOutcome evaluate_condition(const FunctionDescriptor& f, const std::string& name, int n,
                                    const ProbeOptions& opts);
bool satisfies_hypothesis(const FunctionDescriptor& f, const std::string& hypothesis);

struct ProbeRow {
  std::string function;
  int n = 1;
  bool applicable = true;  // hypotheses and domains fit
  ConditionOutcome antecedent;
  std::optional<ConditionOutcome> consequent;  // evaluated when the antecedent holds
  bool separating = false;  // antecedent holds, consequent fails
};

struct ProbeReport {
  Implication implication;
  std::string family;
  std::vector<int> sizes;
  std::vector<ProbeRow> rows;
  std::vector<std::string> separating;
  bool consistent = true;     // theorem arrow: no separating function
  bool demonstrated = false;  // non-implication: a separating function was found
};

std::vector<std::string> family_names();
std::vector<FunctionDescriptor> function_family(const std::string& family);

ProbeReport probe_implication(const std::string& id, const std::string& family,
                              const std::vector<int>& sizes, const ProbeOptions& opts);

}  // namespace loewner
