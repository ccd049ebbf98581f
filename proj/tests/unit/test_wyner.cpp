// Copyright 2026 The icbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "icbound/error.hpp"
#include "icbound/function.hpp"
#include "icbound/oracle.hpp"
#include "icbound/wyner.hpp"

using namespace icb;

namespace {

JointPMF eq_uv(int k) { return lift_to_uv(uniform_inputs(k), eq_function(k)); }
ClassDecomposition decompose(const JointPMF& uv) { return maximal_bicliques(build_graph(uv)); }

QSymbol flat(const BicliqueClass& c, double each) { return {c.index, std::vector<double>(c.edge_count(), each)}; }

JointPMF two_by_two(double a, double b, double c, double d) {
  return validate(JointPMF({Alphabet::range("U", 2), Alphabet::range("V", 2)}, {a, b, c, d}));
}

JointPMF diagonal(std::size_t n) {
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0 / static_cast<double>(n);
  return JointPMF({Alphabet::range("U", n), Alphabet::range("V", n)}, m);
}

SearchConfig quick() {
  SearchConfig c;
  c.restarts = 8;
  return c;
}

}  // namespace

TEST_CASE("objective on hand-built ternary assignments") {
  const auto dec = decompose(eq_uv(3));
  // The ternary EQ protocol as an auxiliary: the three 1x2 classes carry their two edges
  // at 1/9 each, the Z=1 edges are singletons.
  std::vector<QSymbol> protocol_one, split;
  for (const auto& c : dec.classes) {
    if (c.edge_count() == 1) {
      protocol_one.push_back(flat(c, 1.0 / 9));
      split.push_back(flat(c, 1.0 / 9));
    } else {
      if (c.left_set.size() == 1) protocol_one.push_back(flat(c, 1.0 / 9));
      split.push_back(flat(c, 1.0 / 18));
    }
  }
  QAssignment q1(dec, protocol_one);
  CHECK(objective(q1) == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(conditional_entropies(q1).first == doctest::Approx(0.0));
  CHECK(objective(QAssignment(dec, split)) == doctest::Approx(2.0 / 3).epsilon(1e-14));
}

TEST_CASE("objective of the two-bit uniform assignment") {
  const auto q = eq_optimal_q(4);
  for (const auto& s : q.symbols()) {
    if (s.mass.size() == 4) {
      for (double m : s.mass) CHECK(m == doctest::Approx(1.0 / 32).epsilon(1e-15));
    }
  }
  CHECK(objective(q) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("objective rejects infeasible marginals") {
  const auto dec = decompose(eq_uv(3));
  std::vector<QSymbol> s;
  for (const auto& c : dec.classes) s.push_back(flat(c, 1.0 / 9));
  CHECK_THROWS_AS(objective(QAssignment(dec, s)), InfeasibleAssignment);
}

TEST_CASE("verify") {
  const auto r = verify(eq_optimal_q(4), eq_uv(4));
  CHECK(r.marginal_residual < 1e-12);
  CHECK(r.markov_residual < 1e-12);
  CHECK(r.valid_strict);

  const auto pmf = two_by_two(0.375, 0.125, 0.125, 0.375);
  const auto dec = decompose(pmf);
  REQUIRE(dec.classes.size() == 1u);
  QAssignment whole(dec, {{0, {0.3, 0.1, 0.1, 0.3}}, {0, {0.075, 0.025, 0.025, 0.075}}});
  const auto bad = verify(whole, pmf);
  CHECK(bad.marginal_residual < 1e-15);
  CHECK(bad.markov_residual == doctest::Approx(0.18872187554086717).epsilon(1e-12));
  CHECK_FALSE(bad.valid_relaxed);

  // One edge of a 2x2 class on its own is a product.
  QAssignment lone(dec, {{0, {0.375, 0.0, 0.0, 0.0}}, {0, {0.0, 0.125, 0.125, 0.375}}});
  CHECK(symbol_markov_residual(lone, 0) == 0.0);
}

TEST_CASE("merge") {
  const auto pmf = validate(JointPMF({Alphabet::range("U", 1), Alphabet::range("V", 2)}, {0.5, 0.5}));
  const auto dec = decompose(pmf);
  QAssignment apart(dec, {{0, {0.5, 0.0}}, {0, {0.0, 0.5}}});
  CHECK(objective(apart) == 0.0);
  const auto merged = merge_same_class(apart, 0, 1);
  CHECK(merged.symbols().size() == 1u);
  CHECK(objective(merged) == doctest::Approx(1.0).epsilon(1e-15));

  QAssignment same(dec, {{0, {0.2, 0.2}}, {0, {0.3, 0.3}}});
  CHECK(objective(merge_same_class(same, 1, 0)) == doctest::Approx(objective(same)).epsilon(1e-15));

  const auto eq = decompose(eq_uv(3));
  QAssignment two_classes(eq, {flat(eq.classes[0], 0.1), flat(eq.classes[1], 0.1)});
  CHECK_THROWS_AS(merge_same_class(two_classes, 0, 1), ClassMismatch);
  CHECK_THROWS_AS(merge_same_class(two_classes, 0, 0), ClassMismatch);
}

TEST_CASE("split then merge restores the two-bit optimum") {
  const auto q = eq_optimal_q(4);
  std::vector<QSymbol> doubled;
  for (const auto& s : q.symbols()) {
    QSymbol a = s, b = s;
    for (auto& m : a.mass) m *= 0.3;
    for (auto& m : b.mass) m *= 0.7;
    doubled.push_back(a);
    doubled.push_back(b);
  }
  QAssignment split(q.decomposition(), doubled);
  auto merged = split;
  for (std::size_t i = q.symbols().size(); i-- > 0;) merged = merge_same_class(merged, 2 * i, 2 * i + 1);
  CHECK(objective(merged) == doctest::Approx(objective(q)).epsilon(1e-12));
}

TEST_CASE("relaxation") {
  const auto t = eq_uv(3);
  const auto r3 = relaxed_sup_upper_bound(t, decompose(t));
  CHECK(r3.kind == SupKind::certified_upper);
  CHECK(r3.value == doctest::Approx(2.0 / 3).epsilon(1e-14));
  const auto f = eq_uv(4);
  CHECK(relaxed_sup_upper_bound(f, decompose(f)).value == 1.5);
  const auto s = eq_uv(6);
  CHECK(relaxed_sup_upper_bound(s, decompose(s)).value == doctest::Approx(2.6416041678685938).epsilon(1e-13));
}

TEST_CASE("closed forms") {
  CHECK(eq_sup_closed_form(3) == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(eq_sup_closed_form(4) == 1.5);
  CHECK(eq_sup_closed_form(5) == doctest::Approx(2.067970000576925).epsilon(1e-14));
  CHECK(objective(eq_optimal_q(3)) == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(objective(eq_optimal_q(7)) == doctest::Approx(3.072825000618134).epsilon(1e-13));
  CHECK_THROWS_AS(eq_sup_closed_form(1), BadK);
  CHECK_THROWS_AS(eq_optimal_q(0), BadK);
}

TEST_CASE("search on equality") {
  const auto t = eq_uv(3);
  const auto r = achievability_search(t, decompose(t), quick());
  CHECK(r.kind == SupKind::achieved_lower);
  CHECK(r.value >= 2.0 / 3 - 1e-6);
  CHECK(r.value <= 2.0 / 3 + 1e-9);
  CHECK(r.residuals.markov <= 1e-9);
  CHECK(r.residuals.marginal <= 1e-9);

  const auto f = eq_uv(4);
  CHECK(achievability_search(f, decompose(f), quick()).value >= 1.5 - 1e-6);
}

TEST_CASE("search on a diagonal is exactly zero") {
  const auto d = diagonal(3);
  CHECK(achievability_search(d, decompose(d), quick()).value == 0.0);
}

TEST_CASE("search is independent of the worker count") {
  const auto t = eq_uv(3);
  auto one = quick();
  auto four = quick();
  four.workers = 4;
  const auto a = achievability_search(t, decompose(t), one);
  const auto b = achievability_search(t, decompose(t), four);
  CHECK(a.value == b.value);
  REQUIRE(a.witness);
  REQUIRE(b.witness);
  CHECK(a.witness->symbols().size() == b.witness->symbols().size());
  for (std::size_t i = 0; i < a.witness->symbols().size(); ++i) {
    CHECK(a.witness->symbols()[i].mass == b.witness->symbols()[i].mass);
  }
}

TEST_CASE("restart seeds differ") {
  CHECK(restart_seed(1, 0) != restart_seed(1, 1));
  CHECK(restart_seed(1, 0) != restart_seed(2, 0));
  CHECK(restart_seed(5, 3) == restart_seed(5, 3));
}

TEST_CASE("budget") {
  auto c = quick();
  c.iteration_budget = c.iterations * c.penalties.size() * 2;
  const auto t = eq_uv(3);
  const auto r = achievability_search(t, decompose(t), c);
  CHECK(r.budget_exhausted);
  CHECK(r.restarts == 2u);
}

TEST_CASE("Wyner tension") {
  const auto t = eq_uv(3);
  const auto relax = relaxed_sup_upper_bound(t, decompose(t));
  CHECK(wyner_tension(t, relax) == doctest::Approx(2.0 / 3).epsilon(1e-14));

  const auto ind = uniform_pmf({Alphabet::range("U", 2), Alphabet::range("V", 3)});
  const auto oracle = brute_force_oracle(ind);
  CHECK(oracle.value == doctest::Approx(1.0 + std::log2(3.0)).epsilon(1e-12));
  CHECK(std::abs(wyner_tension(ind, oracle)) <= 1e-9);

  const auto d = diagonal(3);
  CHECK(wyner_tension(d, relaxed_sup_upper_bound(d, decompose(d))) == 0.0);

  CHECK_THROWS_AS(wyner_tension(eq_uv(4), relax), InconsistentInputs);
}

TEST_CASE("witness support stays inside its class") {
  const auto f = eq_uv(4);
  const auto r = achievability_search(f, decompose(f), quick());
  REQUIRE(r.witness);
  const auto pmf = r.witness->to_pmf();
  CHECK(pmf.arity() == 3u);
  CHECK(pmf.variable(0).name() == "Q");
  CHECK(r.witness->uv_marginal().size() == f.size());
}
