#include "loewner/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "loewner/errors.hpp"
#include "loewner/parallel.hpp"
#include "loewner/rng.hpp"

namespace loewner {

namespace {

constexpr double kNoScore = -std::numeric_limits<double>::infinity();

Property point_property(SweepProperty p) {
  switch (p) {
    case SweepProperty::PSD:
      return Property::PSD;
    case SweepProperty::CPD:
      return Property::CPD;
    case SweepProperty::CND:
      return Property::CND;
    default:
      break;
  }
  throw ConfigError("property " + to_string(p) + " is not a Loewner-matrix property");
}

bool is_point_property(SweepProperty p) {
  return p == SweepProperty::PSD || p == SweepProperty::CPD || p == SweepProperty::CND;
}

Witness from_order_witness(const OrderWitness& ow, SweepProperty p, std::uint64_t seed,
                           const FunctionDescriptor& f) {
  Witness w;
  w.kind = Witness::Kind::MatrixPair;
  w.property = p;
  w.a = ow.a;
  w.b = ow.b;
  w.mix = ow.mix;
  w.scale = ow.scale;
  w.violation = ow.violation / ow.scale;
  w.seed = seed;
  w.evaluation = ow.trial;
  w.phase = "trial";
  w.function = describe(f);
  return w;
}

class PointHunter {
 public:
  PointHunter(const FunctionDescriptor& f, SweepProperty target, const HuntOptions& opts)
      : f_(f), prop_(point_property(target)), target_(target), opts_(opts) {
    const Interval j = opts.interval.value_or(f.domain());
    make_interval(j.lo, j.hi);
    if (!is_subset(j, f.domain())) {
      throw ConfigError("hunt interval " + to_string(j) + " is not inside domain " +
                        to_string(f.domain()));
    }
    if (opts.order < 1) throw ConfigError("hunt order must be >= 1");
    if (opts.budget < 1) throw ConfigError("hunt budget must be >= 1");
    window_ = hunt_window(j, opts.exp_lo, opts.exp_hi);
    pinned_ = as_power(f) != nullptr && j == Interval{0.0, kInf} && opts.order >= 2;
    free_ = opts.order - (pinned_ ? 1 : 0);
  }

  HuntResult run() {
    const long budget = opts_.budget;
    const long n_random = std::max<long>(1, budget / 2);
    const long n_extreme = budget / 4;
    std::vector<double> z(static_cast<std::size_t>(opts_.order), 0.0);

    for (; evals_ < budget && evals_ < n_random;) {
      Rng rng(opts_.seed, static_cast<std::uint64_t>(evals_));
      for (int k = 0; k < free_; ++k) z[k] = rng.uniform(window_.z_lo, window_.z_hi);
      consider(z, HuntPhase::Random);
    }
    for (; evals_ < budget && evals_ < n_random + n_extreme;) {
      Rng rng(opts_.seed, static_cast<std::uint64_t>(evals_));
      for (int k = 0; k < free_; ++k) z[k] = rng.uniform(window_.z_lo, window_.z_hi);
      const int k = rng.uniform_int(0, free_ - 1);
      const double push = 0.5 * rng.uniform();
      z[k] = rng.uniform() < 0.5 ? window_.z_hi - push : window_.z_lo + push;
      consider(z, HuntPhase::Extreme);
    }
    refine();

    result_.evaluations = evals_;
    if (best_score_ > opts_.tol) {
      Witness w;
      w.kind = Witness::Kind::Points;
      w.property = target_;
      w.points = points(best_z_);
      w.violation = best_score_;
      w.scale = best_scale_;
      w.seed = opts_.seed;
      w.evaluation = static_cast<std::uint64_t>(best_eval_);
      w.phase = to_string(best_phase_);
      w.function = describe(f_);
      result_.witness = std::move(w);
    }
    result_.best_violation = best_score_;
    if (!best_z_.empty()) result_.best_points = points(best_z_);
    return result_;
  }

 private:
  std::vector<double> points(const std::vector<double>& z) const {
    std::vector<double> t(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) t[k] = window_.to_point(z[k]);
    return t;
  }

  // Relative violation of the tuple, or -inf for inadmissible tuples.
  double score(const std::vector<double>& z, double& scale) const {
    for (std::size_t i = 0; i < z.size(); ++i)
      for (std::size_t j = i + 1; j < z.size(); ++j)
        if (std::abs(z[i] - z[j]) < opts_.min_separation) return kNoScore;
    const std::vector<double> t = points(z);
    try {
      const DefinitenessVerdict v = test_property(build_loewner(f_, t).entries, prop_, opts_.tol);
      scale = v.scale;
      return v.relative_violation();
    } catch (const DomainError&) {
      return kNoScore;
    }
  }

  bool consider(const std::vector<double>& z, HuntPhase phase) {
    double scale = 1.0;
    const double s = score(z, scale);
    const long index = evals_++;
    if (s > best_score_) {
      best_score_ = s;
      best_scale_ = scale;
      best_z_ = z;
      best_eval_ = index;
      best_phase_ = phase;
      return true;
    }
    return false;
  }

  void refine() {
    if (best_z_.empty() || free_ == 0) return;
    double step = (window_.z_hi - window_.z_lo) / 12.0;
    while (evals_ < opts_.budget && step > 1e-12) {
      bool improved = false;
      for (int k = 0; k < free_ && evals_ < opts_.budget; ++k) {
        for (double dir : {1.0, -1.0}) {
          if (evals_ >= opts_.budget) break;
          std::vector<double> cand = best_z_;
          cand[k] = std::clamp(cand[k] + dir * step, window_.z_lo, window_.z_hi);
          if (cand[k] == best_z_[k]) continue;
          improved = consider(cand, HuntPhase::Refine) || improved;
          result_.refine_history.push_back(best_score_);
        }
      }
      if (!improved) step /= 2.0;
    }
  }

  const FunctionDescriptor& f_;
  Property prop_;
  SweepProperty target_;
  const HuntOptions& opts_;
  SamplingWindow window_;
  bool pinned_ = false;
  int free_ = 0;
  long evals_ = 0;
  double best_score_ = kNoScore;
  double best_scale_ = 1.0;
  std::vector<double> best_z_;
  long best_eval_ = 0;
  HuntPhase best_phase_ = HuntPhase::Random;
  HuntResult result_;
};

}  // namespace

std::string to_string(SweepProperty p) {
  switch (p) {
    case SweepProperty::PSD:
      return "psd";
    case SweepProperty::CPD:
      return "cpd";
    case SweepProperty::CND:
      return "cnd";
    case SweepProperty::Monotone:
      return "monotone";
    case SweepProperty::Convex:
      return "convex";
  }
  return "?";
}

SweepProperty sweep_property_from_string(const std::string& name) {
  for (SweepProperty p : {SweepProperty::PSD, SweepProperty::CPD, SweepProperty::CND,
                          SweepProperty::Monotone, SweepProperty::Convex}) {
    if (to_string(p) == name) return p;
  }
  throw ConfigError("unknown property '" + name + "' (expected psd, cpd, cnd, monotone, convex)");
}

std::string to_string(HuntPhase p) {
  switch (p) {
    case HuntPhase::Random:
      return "random";
    case HuntPhase::Extreme:
      return "extreme";
    case HuntPhase::Refine:
      return "refine";
  }
  return "?";
}

double replay(const FunctionDescriptor& f, const Witness& w, double tol) {
  if (w.kind == Witness::Kind::Points) {
    return test_property(build_loewner(f, w.points).entries, point_property(w.property), tol)
        .relative_violation();
  }
  OrderWitness ow;
  ow.a = w.a;
  ow.b = w.b;
  ow.mix = w.mix;
  const OrderProperty op =
      w.property == SweepProperty::Convex ? OrderProperty::Convex : OrderProperty::Monotone;
  return replay_violation(f, op, ow) / w.scale;
}

HuntResult hunt(const FunctionDescriptor& f, SweepProperty target, const HuntOptions& opts) {
  if (is_point_property(target)) return PointHunter(f, target, opts).run();

  CheckOptions co;
  co.order = opts.order;
  co.trials = opts.budget;
  co.interval = opts.interval;
  co.tol = opts.tol;
  co.seed = opts.seed;
  co.jobs = opts.jobs;
  co.exp_lo = opts.exp_lo;
  co.exp_hi = opts.exp_hi;
  const OrderCheckReport r =
      target == SweepProperty::Convex ? check_n_convex(f, co) : check_n_monotone(f, co);
  HuntResult out;
  out.evaluations = r.trials;
  if (r.witness) {
    out.witness = from_order_witness(*r.witness, target, opts.seed, f);
    out.best_violation = out.witness->violation;
  }
  return out;
}

std::vector<double> AlphaGrid::values() const {
  if (!(step > 0.0)) throw ConfigError("alpha step must be > 0");
  if (!(lo <= hi)) throw ConfigError("alpha grid needs lo <= hi");
  const long count = std::lround(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count + 1));
  for (long k = 0; k <= count; ++k) {
    double v = lo + static_cast<double>(k) * step;
    if (std::abs(v) < 1e-12 * step) v = 0.0;
    out.push_back(v);
  }
  return out;
}

AlphaGrid parse_alpha_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("alpha grid '" + spec + "': '" + item + "' is not a number");
    }
  }
  if (parts.size() != 3) throw ConfigError("alpha grid must be lo:hi:step, got '" + spec + "'");
  AlphaGrid g{parts[0], parts[1], parts[2]};
  g.values();
  return g;
}

const SweepCell* ClassificationTable::find(double alpha, int size, SweepProperty p) const {
  for (const SweepCell& c : cells) {
    if (c.size == size && c.property == p && std::abs(c.alpha - alpha) < 1e-12) return &c;
  }
  return nullptr;
}

std::vector<double> ClassificationTable::holding(int size, SweepProperty p) const {
  std::vector<double> out;
  for (const SweepCell& c : cells)
    if (c.size == size && c.property == p && !c.counterexample) out.push_back(c.alpha);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Flip> detect_flips(const std::vector<SweepCell>& cells) {
  std::map<std::pair<int, int>, std::vector<const SweepCell*>> groups;
  for (const SweepCell& c : cells) groups[{static_cast<int>(c.property), c.size}].push_back(&c);
  std::vector<Flip> flips;
  for (auto& [key, group] : groups) {
    std::stable_sort(group.begin(), group.end(),
                     [](const SweepCell* x, const SweepCell* y) { return x->alpha < y->alpha; });
    for (std::size_t k = 0; k + 1 < group.size(); ++k) {
      const SweepCell& l = *group[k];
      const SweepCell& r = *group[k + 1];
      if (l.counterexample == r.counterexample) continue;
      flips.push_back({l.size, l.property, l.alpha, r.alpha, l.counterexample ? r.alpha : l.alpha});
    }
  }
  return flips;
}

ClassificationTable sweep_alpha(const SweepOptions& opts) {
  const std::vector<double> alphas = opts.grid.values();
  if (opts.trials < 1) throw ConfigError("trials per cell must be >= 1");
  for (int n : opts.sizes) {
    if (n < 2 || n > 5) throw ConfigError("sweep sizes must lie in 2..5, got " + std::to_string(n));
  }
  ClassificationTable table;
  for (SweepProperty p : opts.properties)
    for (int n : opts.sizes)
      for (double a : alphas) {
        SweepCell c;
        c.alpha = a;
        c.size = n;
        c.property = p;
        c.seed = derive_seed(opts.seed, table.cells.size());
        table.cells.push_back(c);
      }

  parallel_for(table.cells.size(), opts.jobs, [&](std::size_t i) {
    SweepCell& c = table.cells[i];
    HuntOptions ho;
    ho.order = c.size;
    ho.budget = opts.trials;
    ho.seed = c.seed;
    ho.tol = opts.tol;
    const HuntResult r = hunt(power(c.alpha), c.property, ho);
    c.evaluations = r.evaluations;
    c.counterexample = r.witness.has_value();
    c.witness = r.witness;
  });
  table.flips = detect_flips(table.cells);
  return table;
}

}  // namespace loewner
