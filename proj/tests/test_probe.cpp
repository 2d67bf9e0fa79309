#include <doctest.h>

#include <set>

#include "loewner/errors.hpp"
#include "loewner/search.hpp"

using namespace loewner;

namespace {

ProbeOptions popts() {
  ProbeOptions o;
  o.seed = 41;
  return o;
}

}  // namespace

TEST_CASE("implication catalog") {
  const auto& cat = implication_catalog();
  std::set<std::string> ids;
  const auto names = condition_names();
  const auto hyps = hypothesis_names();
  for (const auto& imp : cat) {
    CHECK(ids.insert(imp.id).second);
    CHECK(std::find(names.begin(), names.end(), imp.antecedent) != names.end());
    CHECK(std::find(names.begin(), names.end(), imp.consequent) != names.end());
    for (const auto& h : imp.hypotheses) CHECK(std::find(hyps.begin(), hyps.end(), h) != hyps.end());
    CHECK(&find_implication(imp.id) == &imp);
  }
  CHECK(cat.size() >= 30);
  CHECK_THROWS_AS(find_implication("nope"), UnknownImplicationError);
}

TEST_CASE("condition evaluation") {
  const auto o = popts();
  CHECK(evaluate_condition(power(3), "convex", 1, o).satisfied);
  CHECK_FALSE(evaluate_condition(power(3), "cnd", 2, o).satisfied);
  CHECK(evaluate_condition(power(-2), "cnd", 2, o).satisfied);
  CHECK_FALSE(evaluate_condition(power(-2), "convex", 2, o).satisfied);
  CHECK(evaluate_condition(power(1.5), "convex", 2, o).satisfied);
  CHECK_FALSE(evaluate_condition(power(3), "cnd-growth", 2, o).satisfied);
  const auto fin = evaluate_condition(moebius_monotone(0.5), "tf-cpd", 2, o);
  CHECK_FALSE(fin.evaluable);
  CHECK(evaluate_condition(moebius_monotone(0.5), "b-t-sq-cpd", 2, o).satisfied);
  CHECK_THROWS_AS(evaluate_condition(power(1), "no-such", 2, o), ConfigError);
}

TEST_CASE("hypotheses") {
  CHECK(satisfies_hypothesis(power(0.5), "half-line"));
  CHECK_FALSE(satisfies_hypothesis(power(0.5), "finite-interval"));
  CHECK(satisfies_hypothesis(power(0.5), "positive"));
  CHECK_FALSE(satisfies_hypothesis(negated(power(0.5)), "positive"));
  CHECK(satisfies_hypothesis(power(2), "continuous-origin"));
  CHECK_FALSE(satisfies_hypothesis(power(-1), "continuous-origin"));
}

TEST_CASE("theorem arrows are consistent") {
  for (const char* id : {"convex[2n+1]=>cnd-growth[n]", "monotone[2n]=>concave[n]", "cnd[n+1]=>t2-over-f-monotone[n]"}) {
    const auto r = probe_implication(id, "power", {1}, popts());
    CAPTURE(id);
    CHECK(r.consistent);
    CHECK(r.separating.empty());
    bool some = false;
    for (const auto& row : r.rows) some = some || (row.applicable && row.antecedent.satisfied);
    CHECK(some);
  }
}

TEST_CASE("non-implications are demonstrated by the documented functions") {
  const auto a = probe_implication("cnd-growth[2]=/=>convex[2]", "power", {0}, popts());
  CHECK(a.demonstrated);
  CHECK(std::find(a.separating.begin(), a.separating.end(), describe(power(-2))) != a.separating.end());
  const auto b = probe_implication("convex[1]=/=>cnd-growth[2]", "power", {0}, popts());
  CHECK(b.demonstrated);
  CHECK(std::find(b.separating.begin(), b.separating.end(), describe(power(3))) != b.separating.end());
  for (const auto& imp : implication_catalog()) {
    if (imp.holds_in_theory) continue;
    CAPTURE(imp.id);
    CHECK(probe_implication(imp.id, "examples", {0}, popts()).demonstrated);
  }
  CHECK_THROWS_AS(probe_implication("convex[1]=/=>cnd-growth[2]", "nope", {0}, popts()), ConfigError);
}
