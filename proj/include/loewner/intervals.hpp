#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loewner/divdiff.hpp"
#include "loewner/funcs.hpp"

namespace loewner {

/// psi(t) = (t - a) / (b - t), a bijection (a, b) -> (0, inf).
struct ConjugationMap {
  double a = 0.0;
  double b = 1.0;
};

ConjugationMap make_conjugation_map(double a, double b);
inline ConjugationMap make_conjugation_map(const Interval& j) { return make_conjugation_map(j.lo, j.hi); }

double psi(const ConjugationMap& map, double t);
double psi_inv(const ConjugationMap& map, double x);

/// f~(x) = f(psi^{-1}(x)) on (0, inf) for f on a finite interval (a, b).
FunctionDescriptor conjugate(const FunctionDescriptor& f);
/// g(psi(t)) on (a, b) for g on (0, inf).
FunctionDescriptor conjugate_inverse(const FunctionDescriptor& g, const ConjugationMap& map);

// Which divided-difference identity to check: the weights (b-t)^2, (t-a)(b-t)
// and (t-a)^2 on (a, b) against f~, x f~ and x^2 f~ on (0, inf).
enum class TransferKind { BSquared, Product, ASquared };
std::string to_string(TransferKind k);
TransferKind transfer_kind_from_string(const std::string& name);

struct IdentityResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double scale = 1.0;
  double residual = 0.0;  // |lhs - rhs| / scale
};

/// Left side on (0, inf) at x_i = psi(t_i), right side from the weighted f on
/// (a, b) plus the endpoint terms; both from independent divided differences.
IdentityResidual verify_conjugation_dd(const FunctionDescriptor& f, const ConjugationMap& map,
                                       TransferKind kind, double ti, double tj,
                                       const ConfluencePolicy& policy = {});

// The four pointwise forms behind the boundary conditions under x = psi(t):
//   f~(x)/x      = (b-t) f(t) / (t-a)
//   f~(x)        = f(t)
//   x f~(x)      = (t-a) f(t) / (b-t)
//   x^2 f~(x)    = (t-a)^2 f(t) / (b-t)^2
// `limit_form` drops the factor that tends to a constant at the boundary
// ((b-t)f/(b-a), f, (t-a)f/(b-a), (t-a)^2 f/(b-a)^2).
enum class LimitForm { OverXAtInfinity, AtInfinity, TimesXAtZero, TimesXSquaredAtZero };

struct LimitSample {
  double t = 0.0;
  double x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double limit_form = 0.0;
};

LimitSample limit_sample(const FunctionDescriptor& f, const ConjugationMap& map, LimitForm form,
                         double t);

// Weighted expressions whose limits appear in the boundary conditions.
enum class BoundaryKind {
  SupOverTAtInfinity,   // limsup f(t)/t, t -> inf
  InfOverTAtInfinity,   // liminf f(t)/t, t -> inf
  SupAtUpperEnd,        // limsup f(t), t -> inf or b
  InfTimesTMinusAAtA,   // liminf (t-a) f(t), t -> a
  SupTMinusASqAtA,      // limsup (t-a)^2 f(t), t -> a
  SupBMinusTAtB,        // limsup (b-t) f(t), t -> b
  InfTimesTAtZero,      // liminf t f(t), t -> 0
  SupTSqAtZero,         // limsup t^2 f(t), t -> 0
};

std::string to_string(BoundaryKind k);
BoundaryKind boundary_kind_from_string(const std::string& name);
bool is_sup_kind(BoundaryKind k);

enum class Trend { BoundedAbove, BoundedBelow, Diverging, Inconclusive };
std::string to_string(Trend t);

// Conditions of the form "limsup < +inf", "liminf > -inf", "<= 0", ">= 0".
enum class BoundaryCondition { BelowPlusInfinity, AboveMinusInfinity, AtMostZero, AtLeastZero };

struct GridSpec {
  double ratio = 10.0;
  int points = 12;
};

struct BoundaryEstimate {
  BoundaryKind kind = BoundaryKind::SupOverTAtInfinity;
  std::vector<double> grid;
  std::vector<double> values;
  Trend trend = Trend::Inconclusive;
  bool heuristic = true;

  // Evidence for a condition; nullopt when the values cannot speak to it.
  std::optional<bool> supports(BoundaryCondition c) const;
};

Trend classify_trend(BoundaryKind kind, const std::vector<double>& values);

BoundaryEstimate boundary_estimate(const FunctionDescriptor& f, BoundaryKind kind,
                                   const GridSpec& grid = {});

struct TransferComparison {
  long tuples = 0;
  long mismatches = 0;
  long failing = 0;  // tuples where both sides fail PSD
  std::optional<std::vector<double>> first_mismatch;
};

/// PSD verdicts of L_f(t_1..t_n) against L_{f~}(psi(t_1)..psi(t_n)) for
/// random tuples in domain(f), which must be finite.
TransferComparison compare_conjugated_psd(const FunctionDescriptor& f, int n, long tuples,
                                          std::uint64_t seed, double tol = 1e-9);

}  // namespace loewner
