#include "loewner/matorder.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/errors.hpp"
#include "loewner/parallel.hpp"

namespace loewner {

namespace {

constexpr double kSpectrumMargin = 1e-10;
constexpr int kMaxRejections = 1000;

struct Applied {
  Matrix value;
  double norm = 0.0;  // max |f(lambda_i)| = spectral norm of f(M)
};

Applied apply_with_norm(const FunctionDescriptor& f, const Matrix& m) {
  const auto sd = sym_eigen(m);
  const Interval& dom = f.domain();
  Vector fl(sd.eigenvalues.size());
  double norm = 0.0;
  for (Eigen::Index i = 0; i < fl.size(); ++i) {
    const double lam = sd.eigenvalues(i);
    if (!dom.contains(lam - kSpectrumMargin) || !dom.contains(lam + kSpectrumMargin)) {
      throw SpectrumError("eigenvalue " + std::to_string(lam) + " outside domain " +
                          to_string(dom) + " of " + describe(f));
    }
    fl(i) = eval(f, lam);
    norm = std::max(norm, std::abs(fl(i)));
  }
  Matrix out = sd.eigenvectors * fl.asDiagonal() * sd.eigenvectors.transpose();
  return {(out + out.transpose()) / 2.0, norm};
}

Matrix symmetrize(const Matrix& m) { return (m + m.transpose()) / 2.0; }

Interval resolve_interval(const FunctionDescriptor& f, const CheckOptions& opts) {
  const Interval j = opts.interval.value_or(f.domain());
  make_interval(j.lo, j.hi);
  if (!is_subset(j, f.domain())) {
    throw ConfigError("interval " + to_string(j) + " is not inside domain " +
                      to_string(f.domain()) + " of " + describe(f));
  }
  if (opts.order < 1) throw ConfigError("matrix order must be >= 1");
  if (opts.trials < 1) throw ConfigError("trials must be >= 1");
  return j;
}

OrderCheckReport finish(OrderProperty prop, const CheckOptions& opts, const Interval& j,
                        std::optional<std::pair<std::size_t, OrderWitness>> hit) {
  OrderCheckReport r;
  r.property = prop;
  r.order = opts.order;
  r.seed = opts.seed;
  r.tolerance = opts.tol;
  r.interval = j;
  if (hit) {
    r.counterexample = true;
    r.trials = static_cast<long>(hit->first) + 1;
    r.witness = std::move(hit->second);
    r.witness->trial = hit->first;
  } else {
    r.trials = opts.trials;
  }
  return r;
}

// Smallest eigenvalue of the defect matrix and the violation test.
std::optional<OrderWitness> judge(const Matrix& defect, double scale, double tol) {
  const double lam = sym_eigen(symmetrize(defect)).min();
  if (lam < -tol * scale) {
    OrderWitness w;
    w.violation = -lam;
    w.scale = scale;
    return w;
  }
  return std::nullopt;
}

}  // namespace

Matrix apply_function(const FunctionDescriptor& f, const Matrix& m) {
  return apply_with_norm(f, m).value;
}

double SamplingWindow::to_point(double z) const {
  switch (kind) {
    case Kind::LogUp:
      return interval.lo + std::pow(10.0, z);
    case Kind::LogDown:
      return interval.hi - std::pow(10.0, z);
    case Kind::PsiLog:
      return interval.hi - (interval.hi - interval.lo) / (std::pow(10.0, z) + 1.0);
    case Kind::Linear:
      return z;
  }
  return z;
}

double SamplingWindow::lower() const {
  return kind == Kind::LogDown ? to_point(z_hi) : to_point(z_lo);
}

double SamplingWindow::upper() const {
  return kind == Kind::LogDown ? to_point(z_lo) : to_point(z_hi);
}

SamplingWindow sampling_window(const Interval& j, double exp_lo, double exp_hi) {
  if (!(exp_lo < exp_hi)) throw ConfigError("sampling exponents need exp_lo < exp_hi");
  SamplingWindow w;
  w.interval = j;
  const bool lo_finite = j.lo > -kInf, hi_finite = j.hi < kInf;
  if (lo_finite && !hi_finite) {
    w.kind = SamplingWindow::Kind::LogUp;
    w.z_lo = exp_lo;
    w.z_hi = exp_hi;
  } else if (!lo_finite && hi_finite) {
    w.kind = SamplingWindow::Kind::LogDown;
    w.z_lo = exp_lo;
    w.z_hi = exp_hi;
  } else if (lo_finite && hi_finite) {
    const double margin = 1e-6 * (j.hi - j.lo);
    w.kind = SamplingWindow::Kind::Linear;
    w.z_lo = j.lo + margin;
    w.z_hi = j.hi - margin;
  } else {
    w.kind = SamplingWindow::Kind::Linear;
    w.z_lo = -std::pow(10.0, exp_hi);
    w.z_hi = std::pow(10.0, exp_hi);
  }
  return w;
}

SamplingWindow hunt_window(const Interval& j, double exp_lo, double exp_hi) {
  SamplingWindow w = sampling_window(j, exp_lo, exp_hi);
  if (j.finite()) {
    w.kind = SamplingWindow::Kind::PsiLog;
    w.z_lo = exp_lo;
    w.z_hi = exp_hi;
  }
  return w;
}

Matrix random_orthogonal(Eigen::Index n, Rng& rng) {
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) g(i, k) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  }
  return q;
}

Matrix random_symmetric_in(const SamplingWindow& window, Eigen::Index n, Rng& rng) {
  const Matrix q = random_orthogonal(n, rng);
  Vector u(n);
  for (Eigen::Index i = 0; i < n; ++i) u(i) = window.sample(rng);
  return symmetrize(q * u.asDiagonal() * q.transpose());
}

std::pair<Matrix, Matrix> sample_ordered_pair(const Interval& j, Eigen::Index n, Rng& rng,
                                              const PairSamplingOptions& opts) {
  if (n < 1) throw ConfigError("matrix order must be >= 1");
  const SamplingWindow window = sampling_window(j, opts.exp_lo, opts.exp_hi);
  const Matrix q = random_orthogonal(n, rng);
  Vector u(n);
  for (Eigen::Index i = 0; i < n; ++i) u(i) = window.sample(rng);
  const Matrix b = symmetrize(q * u.asDiagonal() * q.transpose());

  const double reach = window.kind == SamplingWindow::Kind::Linear
                           ? window.upper() - window.lower()
                           : u.cwiseAbs().maxCoeff();
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const int k = rng.uniform_int(1, static_cast<int>(n));
    Matrix w(n, k);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < k; ++c) w(r, c) = rng.normal();
    const Matrix p = w * w.transpose();
    double s = 0.0;
    if (opts.fixed_scale) {
      s = *opts.fixed_scale;
    } else {
      const double rho = std::pow(10.0, rng.uniform(-3.0, 0.0));
      s = rho * reach / p.trace();
    }
    const Matrix a = symmetrize(b + s * p);
    const auto sd = sym_eigen(a);
    if (window.admits(sd.min()) && window.admits(sd.max())) return {a, b};
  }
  throw SamplingError("no admissible ordered pair after 1000 attempts in window " +
                      to_string(j));
}

std::string to_string(OrderProperty p) {
  switch (p) {
    case OrderProperty::Monotone:
      return "monotone";
    case OrderProperty::Convex:
      return "convex";
    case OrderProperty::Concave:
      return "concave";
    case OrderProperty::LoewnerPsd:
      return "loewner-psd";
    case OrderProperty::Contraction:
      return "contraction";
  }
  return "?";
}

OrderCheckReport check_n_monotone(const FunctionDescriptor& f, const CheckOptions& opts) {
  const Interval j = resolve_interval(f, opts);
  PairSamplingOptions pso{opts.exp_lo, opts.exp_hi, std::nullopt};
  auto hit = first_hit<OrderWitness>(
      static_cast<std::size_t>(opts.trials), opts.jobs,
      [&](std::size_t i) -> std::optional<OrderWitness> {
        Rng rng(opts.seed, i);
        auto [a, b] = sample_ordered_pair(j, opts.order, rng, pso);
        const Applied fa = apply_with_norm(f, a), fb = apply_with_norm(f, b);
        auto w = judge(fa.value - fb.value, std::max({1.0, fa.norm, fb.norm}), opts.tol);
        if (w) {
          w->a = std::move(a);
          w->b = std::move(b);
        }
        return w;
      });
  return finish(OrderProperty::Monotone, opts, j, std::move(hit));
}

OrderCheckReport check_n_convex(const FunctionDescriptor& f, const CheckOptions& opts) {
  const Interval j = resolve_interval(f, opts);
  const SamplingWindow window = sampling_window(j, opts.exp_lo, opts.exp_hi);
  auto hit = first_hit<OrderWitness>(
      static_cast<std::size_t>(opts.trials), opts.jobs,
      [&](std::size_t i) -> std::optional<OrderWitness> {
        Rng rng(opts.seed, i);
        Matrix a = random_symmetric_in(window, opts.order, rng);
        Matrix b = random_symmetric_in(window, opts.order, rng);
        const double mix = rng.uniform(0.01, 0.99);
        const Applied fa = apply_with_norm(f, a), fb = apply_with_norm(f, b);
        const Applied fc = apply_with_norm(f, symmetrize(mix * a + (1.0 - mix) * b));
        auto w = judge(mix * fa.value + (1.0 - mix) * fb.value - fc.value,
                       std::max({1.0, fa.norm, fb.norm}), opts.tol);
        if (w) {
          w->a = std::move(a);
          w->b = std::move(b);
          w->mix = mix;
        }
        return w;
      });
  return finish(OrderProperty::Convex, opts, j, std::move(hit));
}

OrderCheckReport check_n_concave(const FunctionDescriptor& f, const CheckOptions& opts) {
  OrderCheckReport r = check_n_convex(negated(f), opts);
  r.property = OrderProperty::Concave;
  return r;
}

OrderCheckReport loewner_psd_probe(const FunctionDescriptor& f, const CheckOptions& opts) {
  const Interval j = resolve_interval(f, opts);
  const SamplingWindow window = sampling_window(j, opts.exp_lo, opts.exp_hi);
  auto hit = first_hit<OrderWitness>(
      static_cast<std::size_t>(opts.trials), opts.jobs,
      [&](std::size_t i) -> std::optional<OrderWitness> {
        Rng rng(opts.seed, i);
        PointTuple pts(static_cast<std::size_t>(opts.order));
        for (double& t : pts) t = window.sample(rng);
        const LoewnerMatrix lm = build_loewner(f, pts);
        const DefinitenessVerdict v = is_psd(lm.entries, opts.tol);
        if (v.holds) return std::nullopt;
        OrderWitness w;
        w.points = std::move(pts);
        w.violation = -v.extremal_eigenvalue;
        w.scale = v.scale;
        return w;
      });
  return finish(OrderProperty::LoewnerPsd, opts, j, std::move(hit));
}

OrderCheckReport check_contraction(const FunctionDescriptor& f, const CheckOptions& opts) {
  const Interval j = resolve_interval(f, opts);
  const SamplingWindow window = sampling_window(j, opts.exp_lo, opts.exp_hi);
  auto hit = first_hit<OrderWitness>(
      static_cast<std::size_t>(opts.trials), opts.jobs,
      [&](std::size_t i) -> std::optional<OrderWitness> {
        Rng rng(opts.seed, i);
        Matrix a = random_symmetric_in(window, opts.order, rng);
        // contraction with singular values in [0.05, 1]
        const Matrix u = random_orthogonal(opts.order, rng);
        const Matrix v = random_orthogonal(opts.order, rng);
        Vector s(opts.order);
        for (Eigen::Index k = 0; k < s.size(); ++k) s(k) = rng.uniform(0.05, 1.0);
        Matrix x = u * s.asDiagonal() * v.transpose();
        const Applied fa = apply_with_norm(f, a);
        const Applied fxax = apply_with_norm(f, symmetrize(x.transpose() * a * x));
        auto w = judge(x.transpose() * fa.value * x - fxax.value,
                       std::max({1.0, fa.norm, fxax.norm}), opts.tol);
        if (w) {
          w->a = std::move(a);
          w->b = std::move(x);
        }
        return w;
      });
  return finish(OrderProperty::Contraction, opts, j, std::move(hit));
}

double replay_violation(const FunctionDescriptor& f, OrderProperty property,
                        const OrderWitness& w, const ConfluencePolicy& policy) {
  switch (property) {
    case OrderProperty::Monotone:
      return -sym_eigen(symmetrize(apply_function(f, w.a) - apply_function(f, w.b))).min();
    case OrderProperty::Convex:
    case OrderProperty::Concave: {
      const FunctionDescriptor g = property == OrderProperty::Concave ? negated(f) : f;
      const Matrix d = w.mix * apply_function(g, w.a) + (1.0 - w.mix) * apply_function(g, w.b) -
                       apply_function(g, symmetrize(w.mix * w.a + (1.0 - w.mix) * w.b));
      return -sym_eigen(symmetrize(d)).min();
    }
    case OrderProperty::LoewnerPsd:
      return -sym_eigen(build_loewner(f, w.points, policy).entries).min();
    case OrderProperty::Contraction: {
      const Matrix d = w.b.transpose() * apply_function(f, w.a) * w.b -
                       apply_function(f, symmetrize(w.b.transpose() * w.a * w.b));
      return -sym_eigen(symmetrize(d)).min();
    }
  }
  return 0.0;
}

}  // namespace loewner
