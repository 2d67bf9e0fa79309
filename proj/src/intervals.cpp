#include "loewner/intervals.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/definiteness.hpp"
#include "loewner/errors.hpp"
#include "loewner/loewner_matrix.hpp"
#include "loewner/matorder.hpp"
#include "loewner/rng.hpp"

namespace loewner {

namespace {

constexpr double kZeroBand = 1e-6;
constexpr double kDivergenceRatio = 1.5;

}  // namespace

ConjugationMap make_conjugation_map(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw ConfigError("conjugation needs a finite interval a < b, got (" + std::to_string(a) +
                      ", " + std::to_string(b) + ")");
  }
  return {a, b};
}

double psi(const ConjugationMap& map, double t) {
  if (!(t > map.a && t < map.b)) {
    throw DomainError("psi: point " + std::to_string(t) + " not inside (" +
                      std::to_string(map.a) + ", " + std::to_string(map.b) + ")");
  }
  return (t - map.a) / (map.b - t);
}

double psi_inv(const ConjugationMap& map, double x) {
  if (!(x > 0.0 && x < kInf)) {
    throw DomainError("psi_inv: point " + std::to_string(x) + " not inside (0, inf)");
  }
  return map.b - (map.b - map.a) / (x + 1.0);
}

FunctionDescriptor conjugate(const FunctionDescriptor& f) {
  const Interval& j = f.domain();
  if (!j.finite()) throw ConfigError("conjugate needs f on a finite interval, got " + to_string(j));
  return to_half_line(f, j.lo, j.hi);
}

FunctionDescriptor conjugate_inverse(const FunctionDescriptor& g, const ConjugationMap& map) {
  return from_half_line(g, map.a, map.b);
}

std::string to_string(TransferKind k) {
  switch (k) {
    case TransferKind::BSquared:
      return "b-t-sq";
    case TransferKind::Product:
      return "ta-bt";
    case TransferKind::ASquared:
      return "t-a-sq";
  }
  return "?";
}

TransferKind transfer_kind_from_string(const std::string& name) {
  if (name == "b-t-sq") return TransferKind::BSquared;
  if (name == "ta-bt") return TransferKind::Product;
  if (name == "t-a-sq") return TransferKind::ASquared;
  throw ConfigError("unknown identity kind '" + name + "' (expected b-t-sq, ta-bt, t-a-sq)");
}

IdentityResidual verify_conjugation_dd(const FunctionDescriptor& f, const ConjugationMap& map,
                                       TransferKind kind, double ti, double tj,
                                       const ConfluencePolicy& policy) {
  const double a = map.a, b = map.b;
  const double xi = psi(map, ti), xj = psi(map, tj);
  const FunctionDescriptor g = to_half_line(f, a, b);
  const double fi = eval(f, ti), fj = eval(f, tj);

  IdentityResidual r;
  switch (kind) {
    case TransferKind::BSquared:
      r.lhs = fdd(g, xi, xj, policy);
      r.rhs = fdd(weighted(f, WeightTag::BMinusTSquared, a, b), ti, tj, policy) +
              (b - ti) * fi + (b - tj) * fj;
      break;
    case TransferKind::Product:
      r.lhs = fdd(weighted(g, WeightTag::T), xi, xj, policy);
      r.rhs = fdd(weighted(f, WeightTag::TMinusATimesBMinusT, a, b), ti, tj, policy) +
              (ti - a) * fi + (tj - a) * fj;
      break;
    case TransferKind::ASquared:
      r.lhs = fdd(weighted(g, WeightTag::TSquared), xi, xj, policy);
      r.rhs = fdd(weighted(f, WeightTag::TMinusASquared, a, b), ti, tj, policy) +
              (ti - a) * (ti - a) / (b - ti) * fi + (tj - a) * (tj - a) / (b - tj) * fj;
      break;
  }
  r.rhs /= (b - a);
  r.scale = std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
  r.residual = std::abs(r.lhs - r.rhs) / r.scale;
  return r;
}

LimitSample limit_sample(const FunctionDescriptor& f, const ConjugationMap& map, LimitForm form,
                         double t) {
  const double a = map.a, b = map.b;
  LimitSample s;
  s.t = t;
  s.x = psi(map, t);
  const double gx = eval(to_half_line(f, a, b), s.x);
  const double ft = eval(f, t);
  switch (form) {
    case LimitForm::OverXAtInfinity:
      s.lhs = gx / s.x;
      s.rhs = (b - t) * ft / (t - a);
      s.limit_form = (b - t) * ft / (b - a);
      break;
    case LimitForm::AtInfinity:
      s.lhs = gx;
      s.rhs = ft;
      s.limit_form = ft;
      break;
    case LimitForm::TimesXAtZero:
      s.lhs = s.x * gx;
      s.rhs = (t - a) * ft / (b - t);
      s.limit_form = (t - a) * ft / (b - a);
      break;
    case LimitForm::TimesXSquaredAtZero:
      s.lhs = s.x * s.x * gx;
      s.rhs = (t - a) * (t - a) * ft / ((b - t) * (b - t));
      s.limit_form = (t - a) * (t - a) * ft / ((b - a) * (b - a));
      break;
  }
  return s;
}

std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::SupOverTAtInfinity:
      return "sup-f-over-t-inf";
    case BoundaryKind::InfOverTAtInfinity:
      return "inf-f-over-t-inf";
    case BoundaryKind::SupAtUpperEnd:
      return "sup-f-upper";
    case BoundaryKind::InfTimesTMinusAAtA:
      return "inf-ta-f-lower";
    case BoundaryKind::SupTMinusASqAtA:
      return "sup-ta-sq-f-lower";
    case BoundaryKind::SupBMinusTAtB:
      return "sup-bt-f-upper";
    case BoundaryKind::InfTimesTAtZero:
      return "inf-t-f-zero";
    case BoundaryKind::SupTSqAtZero:
      return "sup-t-sq-f-zero";
  }
  return "?";
}

BoundaryKind boundary_kind_from_string(const std::string& name) {
  for (BoundaryKind k :
       {BoundaryKind::SupOverTAtInfinity, BoundaryKind::InfOverTAtInfinity,
        BoundaryKind::SupAtUpperEnd, BoundaryKind::InfTimesTMinusAAtA,
        BoundaryKind::SupTMinusASqAtA, BoundaryKind::SupBMinusTAtB,
        BoundaryKind::InfTimesTAtZero, BoundaryKind::SupTSqAtZero}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown boundary kind '" + name + "'");
}

bool is_sup_kind(BoundaryKind k) {
  return k != BoundaryKind::InfOverTAtInfinity && k != BoundaryKind::InfTimesTMinusAAtA &&
         k != BoundaryKind::InfTimesTAtZero;
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::BoundedAbove:
      return "bounded-above";
    case Trend::BoundedBelow:
      return "bounded-below";
    case Trend::Diverging:
      return "diverging";
    case Trend::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

Trend classify_trend(BoundaryKind kind, const std::vector<double>& values) {
  if (values.size() < 4) return Trend::Inconclusive;
  for (double v : values)
    if (!std::isfinite(v)) return Trend::Inconclusive;
  const std::size_t n = values.size();
  bool growing = std::abs(values[n - 1]) > 1.0;
  for (std::size_t k = n - 3; k < n && growing; ++k) {
    const double prev = values[k - 1];
    growing = prev != 0.0 && values[k] / prev > kDivergenceRatio;
  }
  if (growing) return Trend::Diverging;
  return is_sup_kind(kind) ? Trend::BoundedAbove : Trend::BoundedBelow;
}

std::optional<bool> BoundaryEstimate::supports(BoundaryCondition c) const {
  if (trend == Trend::Inconclusive || values.empty()) return std::nullopt;
  const double last = values.back();
  const bool up = trend == Trend::Diverging && last > 0.0;
  const bool down = trend == Trend::Diverging && last < 0.0;
  switch (c) {
    case BoundaryCondition::BelowPlusInfinity:
      return !up;
    case BoundaryCondition::AboveMinusInfinity:
      return !down;
    case BoundaryCondition::AtMostZero:
      return !up && last <= kZeroBand;
    case BoundaryCondition::AtLeastZero:
      return !down && last >= -kZeroBand;
  }
  return std::nullopt;
}

BoundaryEstimate boundary_estimate(const FunctionDescriptor& f, BoundaryKind kind,
                                   const GridSpec& spec) {
  if (!(spec.ratio > 1.0) || spec.points < 2) {
    throw ConfigError("boundary grid needs ratio > 1 and at least 2 points");
  }
  const Interval j = f.domain();
  BoundaryEstimate est;
  est.kind = kind;

  enum class End { Infinity, Upper, Lower, Zero } end = End::Upper;
  switch (kind) {
    case BoundaryKind::SupOverTAtInfinity:
    case BoundaryKind::InfOverTAtInfinity:
      end = End::Infinity;
      break;
    case BoundaryKind::SupAtUpperEnd:
    case BoundaryKind::SupBMinusTAtB:
      end = End::Upper;
      break;
    case BoundaryKind::InfTimesTMinusAAtA:
    case BoundaryKind::SupTMinusASqAtA:
      end = End::Lower;
      break;
    case BoundaryKind::InfTimesTAtZero:
    case BoundaryKind::SupTSqAtZero:
      end = End::Zero;
      break;
  }
  if (end == End::Infinity && j.hi < kInf) {
    throw DomainError(to_string(kind) + " needs a domain unbounded above, got " + to_string(j));
  }
  if (kind == BoundaryKind::SupBMinusTAtB && !(j.hi < kInf)) {
    throw DomainError(to_string(kind) + " needs a finite right endpoint, got " + to_string(j));
  }
  if (end == End::Lower && !(j.lo > -kInf)) {
    throw DomainError(to_string(kind) + " needs a finite left endpoint, got " + to_string(j));
  }
  if (end == End::Zero && j.lo != 0.0) {
    throw DomainError(to_string(kind) + " needs a domain starting at 0, got " + to_string(j));
  }
  if (end == End::Upper && j.hi == kInf) end = End::Infinity;

  for (int k = 0; k < spec.points; ++k) {
    const double step = std::pow(spec.ratio, k);
    double t = 0.0;
    if (end == End::Infinity) {
      const double start = j.lo > -kInf ? j.lo + std::max(1.0, std::abs(j.lo)) : 1.0;
      t = start * step;
    } else if (end == End::Upper) {
      const double d0 = j.lo > -kInf ? (j.hi - j.lo) / 2.0 : 1.0;
      t = j.hi - d0 / step;
    } else {
      const double d0 = j.hi < kInf ? (j.hi - j.lo) / 2.0 : 1.0;
      t = j.lo + d0 / step;
    }
    if (!j.contains(t)) break;
    const double ft = eval(f, t);
    double v = 0.0;
    switch (kind) {
      case BoundaryKind::SupOverTAtInfinity:
      case BoundaryKind::InfOverTAtInfinity:
        v = ft / t;
        break;
      case BoundaryKind::SupAtUpperEnd:
        v = ft;
        break;
      case BoundaryKind::InfTimesTMinusAAtA:
        v = (t - j.lo) * ft;
        break;
      case BoundaryKind::SupTMinusASqAtA:
        v = (t - j.lo) * (t - j.lo) * ft;
        break;
      case BoundaryKind::SupBMinusTAtB:
        v = (j.hi - t) * ft;
        break;
      case BoundaryKind::InfTimesTAtZero:
        v = t * ft;
        break;
      case BoundaryKind::SupTSqAtZero:
        v = t * t * ft;
        break;
    }
    est.grid.push_back(t);
    est.values.push_back(v);
  }
  est.trend = classify_trend(kind, est.values);
  return est;
}

TransferComparison compare_conjugated_psd(const FunctionDescriptor& f, int n, long tuples,
                                          std::uint64_t seed, double tol) {
  const ConjugationMap map = make_conjugation_map(f.domain());
  const FunctionDescriptor g = conjugate(f);
  const SamplingWindow window = sampling_window(f.domain());
  TransferComparison out;
  std::vector<double> ts(static_cast<std::size_t>(n)), xs(ts.size());
  for (long i = 0; i < tuples; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    for (std::size_t k = 0; k < ts.size(); ++k) {
      ts[k] = window.sample(rng);
      xs[k] = psi(map, ts[k]);
    }
    const bool lhs = is_psd(build_loewner(f, ts).entries, tol).holds;
    const bool rhs = is_psd(build_loewner(g, xs).entries, tol).holds;
    ++out.tuples;
    if (lhs != rhs) {
      ++out.mismatches;
      if (!out.first_mismatch) out.first_mismatch = ts;
    } else if (!lhs) {
      ++out.failing;
    }
  }
  return out;
}

}  // namespace loewner
