// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "loewner/definiteness.hpp"
#include "loewner/divdiff.hpp"
#include "loewner/intervals.hpp"
#include "loewner/loewner_matrix.hpp"
#include "loewner/matorder.hpp"
#include "loewner/rng.hpp"
#include "loewner/search.hpp"
#include "oracles.hpp"

using namespace loewner;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> grid_where(const std::vector<std::pair<double, double>>& parts) {
  std::vector<double> out;
  for (double a : AlphaGrid{}.values()) {
    for (auto [p, q] : parts) {
      if (a >= p - 1e-12 && a <= q + 1e-12) {
        out.push_back(a);
        break;
      }
    }
  }
  return out;
}

std::string show(const std::vector<double>& v) {
  std::ostringstream s;
  s << "{";
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << "}";
  return s.str();
}

std::vector<double> random_tuple(const SamplingWindow& w, int n, std::uint64_t seed, std::uint64_t i) {
  Rng rng(seed, i);
  std::vector<double> t(static_cast<std::size_t>(n));
  for (double& x : t) x = w.sample(rng);
  return t;
}

// monotone, size 2
void monotone_region(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepOptions o;
  o.properties = {SweepProperty::Monotone};
  o.sizes = {2};
  o.trials = 500;
  o.seed = kSeed;
  const auto table = sweep_alpha(o);
  const double secs = seconds_since(t0);
  const auto hold = table.holding(2, SweepProperty::Monotone);
  v.require(hold == grid_where({{0, 1}}), "holding set " + show(hold));
  v.require(secs < 10, "runtime");
  v.detail << "holds on " << show(hold) << " in " << secs << " s";
}

// cpd / cnd at size 2, random pairs against the closed form
void size_two_regions(Verdict& v) {
  const SamplingWindow w = sampling_window({0, kInf});
  long disagreements = 0;
  for (Property p : {Property::CPD, Property::CND}) {
    std::vector<double> hold;
    for (double alpha : AlphaGrid{}.values()) {
      bool fails = false;
      for (int i = 0; i < 200; ++i) {
        const auto pts = random_tuple(w, 2, derive_seed(kSeed, static_cast<std::uint64_t>(alpha * 4 + 100)), i);
        const Matrix m = build_loewner(power(alpha), pts).entries;
        const bool proj = test_property(m, p).holds;
        if (proj != cpd_closed_form_small(m, p).holds) ++disagreements;
        fails = fails || !proj;
      }
      if (!fails) hold.push_back(alpha);
    }
    const auto expect = p == Property::CPD ? grid_where({{0, 1}, {2, 4}}) : grid_where({{-2, 0}, {1, 2}});
    v.require(hold == expect, to_string(p) + " holding set " + show(hold));
    v.detail << to_string(p) << " holds on " << show(hold) << "; ";
  }
  v.require(disagreements == 0, "closed form disagreements");
  v.detail << disagreements << " disagreements";
}

// cpd / cnd at size 3, plus explicit witnesses
void size_three_regions(Verdict& v) {
  SweepOptions o;
  o.properties = {SweepProperty::CPD, SweepProperty::CND};
  o.sizes = {3};
  o.trials = 2000;
  o.seed = kSeed;
  const auto table = sweep_alpha(o);
  const auto cpd = table.holding(3, SweepProperty::CPD);
  const auto cnd = table.holding(3, SweepProperty::CND);
  v.require(cpd == grid_where({{0, 1}, {2, 3}}), "cpd holding set " + show(cpd));
  v.require(cnd == grid_where({{-1, 0}, {1, 2}}), "cnd holding set " + show(cnd));
  v.detail << "cpd holds on " << show(cpd) << "; cnd holds on " << show(cnd) << "; witnesses:";
  for (double alpha : {3.25, 3.5, -1.25, -1.5}) {
    HuntOptions h;
    h.order = 3;
    h.budget = 2000;
    h.seed = kSeed;
    const auto target = alpha > 0 ? SweepProperty::CPD : SweepProperty::CND;
    const auto r = hunt(power(alpha), target, h);
    const bool found = r.witness && replay(power(alpha), *r.witness) > h.tol;
    v.require(found, "no witness at alpha " + std::to_string(alpha));
    if (found) v.detail << " " << alpha << "->" << show(r.witness->points);
  }
}

// closed form vs projection on random 3x3 matrices
void closed_form_agreement(Verdict& v) {
  Rng rng(kSeed, 4);
  long compared = 0, skipped = 0, disagreements = 0;
  for (int k = 0; k < 10000; ++k) {
    Matrix m(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = rng.uniform(-5, 5);
    for (Property p : {Property::CPD, Property::CND}) {
      if (closed_form_slacks(m, p).decisive_margin() <= 1e-8) {
        ++skipped;
        continue;
      }
      ++compared;
      if (cpd_closed_form_small(m, p).holds != test_property(m, p).holds) ++disagreements;
    }
  }
  v.require(disagreements == 0, "disagreements");
  v.detail << compared << " comparisons, " << skipped << " filtered, " << disagreements << " disagreements";
}

// identity suite
void identity_suite(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(kSeed, 5);
  std::vector<std::pair<std::string, double>> worst;
  const auto run = [&](const std::string& name, const std::function<double(int)>& residual) {
    double w = 0;
    for (int i = 0; i < 1000; ++i) w = std::max(w, residual(i));
    worst.emplace_back(name, w);
  };
  const auto pos = [&] { return rng.uniform(1e-3, 10.0); };

  run("origin", [&](int i) {
    const double alpha = i % 2 ? 1.5 : 0.5, s = pos(), t = pos();
    const auto f = power(alpha);
    const double l = fdd(f, s, t) - eval(f, s) / s - eval(f, t) / t;
    const double r = -(eval(f, s) / s) * fdd(power(2 - alpha), s, t) * (eval(f, t) / t);
    return std::max(oracle::rel(l, r, {fdd(f, s, t), eval(f, s) / s, eval(f, t) / t}),
                    oracle::origin_identity_residual(oracle::power(alpha), s, t));
  });
  run("origin-t-weighted", [&](int i) {
    const double alpha = i % 2 ? 1.5 : 0.5, s = pos(), t = pos();
    const auto g = weighted(power(alpha), WeightTag::T);
    const double l = fdd(g, s, t) - eval(g, s) / s - eval(g, t) / t;
    const double r = -(eval(g, s) / s) * fdd(power(1 - alpha), s, t) * (eval(g, t) / t);
    return std::max(oracle::rel(l, r, {fdd(g, s, t), eval(g, s) / s, eval(g, t) / t}),
                    oracle::origin_identity_residual(oracle::power(alpha + 1), s, t));
  });
  run("shift", [&](int i) {
    const double eps = 0.3, gamma = 0.7;
    const auto f = power(i % 2 ? 1.5 : 2.5);
    std::vector<double> pts{pos(), pos(), pos()}, moved = pts;
    for (double& t : moved) t += eps;
    const Matrix lhs = build_loewner(shifted(f, eps) - affine(0, gamma), pts).entries;
    const Matrix rhs = build_loewner(f, moved).entries - gamma * ones_matrix(3);
    return (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff());
  });
  const double lambdas[3] = {-0.9, 0.3, 0.9};
  const struct {
    const char* name;
    WeightTag tag;
    double (*formula)(double, double, double);
  } remarks[3] = {{"moebius-b-t-sq", WeightTag::BMinusTSquared, oracle::moebius_b_sq},
                  {"moebius-t-a-sq", WeightTag::TMinusASquared, oracle::moebius_a_sq},
                  {"moebius-ta-bt", WeightTag::TMinusATimesBMinusT, oracle::moebius_ab}};
  for (const auto& rm : remarks) {
    run(rm.name, [&](int i) {
      const double l = lambdas[i % 3], s = rng.uniform(-1, 1), t = rng.uniform(-1, 1);
      return oracle::rel(fdd(weighted(moebius_monotone(l), rm.tag, -1, 1), s, t), rm.formula(l, s, t), {});
    });
  }
  const auto map = make_conjugation_map(0.1, 5);
  for (TransferKind kind : {TransferKind::BSquared, TransferKind::Product, TransferKind::ASquared}) {
    run("transfer-" + to_string(kind), [&](int i) {
      const double alpha = i % 2 ? 1.5 : 0.5, ti = rng.uniform(0.1, 5), tj = rng.uniform(0.1, 5);
      const auto f = restricted(power(alpha), {0.1, 5});
      return std::max(verify_conjugation_dd(f, map, kind, ti, tj).residual,
                      oracle::transfer_residual(oracle::power(alpha), 0.1, 5, static_cast<int>(kind), ti, tj));
    });
  }
  const double secs = seconds_since(t0);
  for (const auto& [name, w] : worst) {
    v.require(w <= 1e-9, name);
    v.detail << name << " " << w << "; ";
  }
  v.require(worst.size() == 9, "identity count");
  v.require(secs < 5, "runtime");
  v.detail << secs << " s";
}

// border compression of constructed cpd matrices
void border_compression(Verdict& v) {
  Rng rng(kSeed, 6);
  long passed = 0, not_psd_input = 0;
  for (int k = 0; k < 1000; ++k) {
    const int n = 3 + k % 4;
    Matrix x(n, n);
    for (int i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
    Vector r(n);
    for (int i = 0; i < n; ++i) r(i) = 3 * rng.normal();
    const Matrix m = x.transpose() * x + r * Vector::Ones(n).transpose() + Vector::Ones(n) * r.transpose() +
                     rng.normal() * ones_matrix(n);
    if (!is_psd(m).holds) ++not_psd_input;
    const auto c = is_psd(border_compress(m));
    if (c.holds && c.extremal_eigenvalue >= -1e-9 * c.scale) ++passed;
  }
  v.require(passed == 1000, "compressed matrices not psd");
  v.detail << passed << "/1000 psd after compression (" << not_psd_input << " inputs indefinite)";
}

// non-implication demonstrations
void non_implications(Verdict& v) {
  const std::vector<double> p12{1, 2};
  const Matrix m3 = build_loewner(power(3), p12).entries;
  const double margin = m3(0, 0) + m3(1, 1) - 2 * m3(0, 1);
  CheckOptions scalar;
  scalar.order = 1;
  scalar.trials = 500;
  scalar.seed = kSeed;
  v.require(!check_n_convex(power(3), scalar).counterexample, "t^3 scalar convexity");
  v.require(!is_cnd(m3).holds && std::abs(margin - 1) < 1e-12, "t^3 cnd margin");
  v.detail << "t^3: convex, cnd margin " << margin << "; ";

  const SamplingWindow half = sampling_window({0, kInf});
  long cnd_fail = 0;
  for (int i = 0; i < 500; ++i) {
    if (!is_cnd(build_loewner(power(-2), random_tuple(half, 2, kSeed, i)).entries).holds) ++cnd_fail;
  }
  CheckOptions co;
  co.order = 2;
  co.trials = 1000;
  co.seed = kSeed;
  const auto conv = check_n_convex(power(-2), co);
  v.require(cnd_fail == 0, "t^-2 cnd");
  v.require(conv.counterexample, "t^-2 convexity counterexample");
  v.detail << "t^-2: cnd on 500 pairs, convexity fails at trial " << conv.trials << "; ";

  const auto g = negated(restricted(moebius_convex(0.5), {0, 1}));
  const SamplingWindow unit = sampling_window({0, 1});
  long fails = 0;
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i < 500; ++i) {
      if (!is_cnd(build_loewner(g, random_tuple(unit, n, derive_seed(kSeed, n), i)).entries).holds) ++fails;
    }
  }
  const auto gc = check_n_convex(g, scalar);
  v.require(fails == 0, "finite-interval cnd");
  v.require(gc.counterexample, "finite-interval convexity");
  v.detail << describe(g) << ": cnd sizes 2-4 on 500 tuples each, scalar convexity fails";
}

// psd verdicts through the conjugation
void conjugation_transfer(Verdict& v) {
  long mismatches = 0, failing = 0;
  for (double alpha : {0.5, 1.5}) {
    for (int n : {2, 3}) {
      const auto c = compare_conjugated_psd(restricted(power(alpha), {0.1, 5}), n, 300, kSeed);
      mismatches += c.mismatches;
      failing += c.failing;
    }
  }
  v.require(mismatches == 0, "mismatches");
  v.detail << mismatches << " mismatches over 1200 tuples (" << failing << " fail psd on both sides)";
}

std::string run_to_file(std::vector<std::string> args, const std::string& path) {
  args.insert(args.begin(), "loewner");
  args.insert(args.end(), {"--output", path});
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// repeated runs give identical bytes
void determinism(Verdict& v) {
  const auto dir = std::filesystem::temp_directory_path();
  const std::vector<std::vector<std::string>> runs = {
      {"sweep", "--property", "monotone", "--order", "2", "--trials", "500", "--seed", "11"},
      {"sweep", "--property", "cpd,cnd", "--order", "3", "--trials", "400", "--seed", "11"},
      {"hunt", "--function", "power:3.5", "--property", "cpd", "--order", "3", "--budget", "2000", "--seed", "11"},
      {"convex", "--function", "power:-2", "--trials", "1000", "--seed", "11"},
      {"check", "--function", "power:2.5", "--order", "3", "--property", "cpd", "--trials", "500", "--seed", "11"},
      {"probe", "--implication", "cnd-growth[2]=/=>convex[2]", "--family", "examples", "--seed", "11"}};
  int identical = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const std::string a = (dir / ("loewner_acc_a" + std::to_string(k) + ".json")).string();
    const std::string b = (dir / ("loewner_acc_b" + std::to_string(k) + ".json")).string();
    auto parallel = runs[k];
    parallel.insert(parallel.end(), {"--jobs", "3"});
    const std::string first = run_to_file(runs[k], a), second = run_to_file(parallel, b);
    const bool same = !first.empty() && first == second && run_to_file(runs[k], b) == first;
    v.require(same, runs[k][0] + " report differs");
    identical += same;
    std::filesystem::remove(a);
    std::filesystem::remove(b);
  }
  v.detail << identical << "/" << runs.size() << " reports byte-identical across repeats and worker counts";
}

}  // namespace

int main() {
  const std::pair<const char*, void (*)(Verdict&)> criteria[] = {
      {"AC1 monotone region of powers (size 2)", monotone_region},
      {"AC2 cpd/cnd regions of powers (size 2)", size_two_regions},
      {"AC3 cpd/cnd regions of powers (size 3) and hunted witnesses", size_three_regions},
      {"AC4 closed-form vs projection on 3x3 matrices", closed_form_agreement},
      {"AC5 identity suite", identity_suite},
      {"AC6 border compression of cpd matrices", border_compression},
      {"AC7 non-implication demonstrations", non_implications},
      {"AC8 psd transfer through the conjugation", conjugation_transfer},
      {"AC9 deterministic reports", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      check(v);
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    std::cout << (v.ok ? "PASS " : "FAIL ") << name << ": " << v.detail.str() << std::endl;
    failed += !v.ok;
  }
  return failed ? 1 : 0;
}
