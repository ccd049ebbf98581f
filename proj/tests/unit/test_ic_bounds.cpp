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
#include "icbound/ic_bounds.hpp"
#include "icbound/oracle.hpp"

using namespace icb;

namespace {

const double kTernary = 2.5032583347756456;  // 2 log2 3 - 2/3

SupResult relaxed(int k) {
  const auto uv = lift_to_uv(uniform_inputs(k), eq_function(k));
  return relaxed_sup_upper_bound(uv, maximal_bicliques(build_graph(uv)));
}

}  // namespace

TEST_CASE("lifting") {
  const auto uv = lift_to_uv(uniform_inputs(3), eq_function(3));
  std::size_t atoms = 0;
  for (double m : uv.mass()) {
    if (m > 0.0) {
      ++atoms;
      CHECK(m == doctest::Approx(1.0 / 9).epsilon(1e-15));
    }
  }
  CHECK(atoms == 9u);
  CHECK(uv.variable(0).size() == 6u);

  const auto two = lift_to_uv(uniform_inputs(4), eq_function(4));
  std::size_t positive = 0;
  for (double m : two.mass()) positive += m > 0.0;
  CHECK(positive == 16u);

  FunctionSpec constant("c", Alphabet::range("X", 3), Alphabet::range("Y", 2), Alphabet::range("Z", 1),
                        std::vector<std::size_t>(6, 0));
  const auto c = lift_to_uv(uniform_pmf({Alphabet::range("X", 3), Alphabet::range("Y", 2)}), constant);
  CHECK(c.variable(0).size() == 3u);
  CHECK(c.variable(1).size() == 2u);
}

TEST_CASE("function tables must be total") {
  CHECK_THROWS_AS(FunctionSpec("f", Alphabet::range("X", 2), Alphabet::range("Y", 2), Alphabet::range("Z", 2), {0, 1, 0}),
                  InconsistentInputs);
  CHECK_THROWS_AS(FunctionSpec("f", Alphabet::range("X", 1), Alphabet::range("Y", 1), Alphabet::range("Z", 2), {2}),
                  InconsistentInputs);
}

TEST_CASE("lower bounds from the relaxation") {
  const auto b3 = ic_lower_bound(uniform_inputs(3), eq_function(3), relaxed(3));
  CHECK(b3.ic_lower == doctest::Approx(kTernary).epsilon(1e-14));
  CHECK(b3.route == BoundRoute::relaxation);
  CHECK(b3.ic_lower == b3.h_x_given_y + b3.h_y_given_x - b3.sup_upper);
  const auto b4 = ic_lower_bound(uniform_inputs(4), eq_function(4), relaxed(4));
  CHECK(b4.ic_lower == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("closed forms") {
  CHECK(ic_lower_bound_eq(3).ic_lower == doctest::Approx(kTernary).epsilon(1e-14));
  CHECK(ic_lower_bound_eq(3).ic_lower == doctest::Approx(binary_entropy(2.0 / 3) + std::log2(3.0)).epsilon(1e-14));
  CHECK(ic_lower_bound_eq(4).ic_lower == 2.5);
  CHECK(ic_lower_bound_eq(8).ic_lower == 2.5);
  CHECK(ic_lower_bound_eq(5).ic_lower == doctest::Approx(2.5758861891977993).epsilon(1e-14));
  CHECK(ic_lower_bound_eq(4).route == BoundRoute::closed_form_eq);
  CHECK_THROWS_AS(ic_lower_bound_eq(1), BadK);
  for (int k = 2; k <= 7; ++k) {
    CHECK(ic_lower_bound(uniform_inputs(k), eq_function(k), relaxed(k)).ic_lower ==
          doctest::Approx(ic_lower_bound_eq(k).ic_lower).epsilon(1e-9));
  }
}

TEST_CASE("bound decreases towards 2") {
  double previous = ic_lower_bound_eq(1 << 8).ic_lower;
  for (int e = 9; e <= 20; ++e) {
    const double v = ic_lower_bound_eq(1 << e).ic_lower;
    CHECK(v < previous);
    CHECK(v > 2.0);
    previous = v;
  }
}

TEST_CASE("preconditions") {
  std::vector<double> diag = {0.5, 0.0, 0.0, 0.5};
  const auto dependent = JointPMF({Alphabet::range("X", 2), Alphabet::range("Y", 2)}, diag);
  CHECK_THROWS_AS(ic_lower_bound(dependent, eq_function(2), relaxed(2)), DependentInputs);

  const auto uv = lift_to_uv(uniform_inputs(3), eq_function(3));
  SearchConfig c;
  c.restarts = 4;
  const auto found = achievability_search(uv, maximal_bicliques(build_graph(uv)), c);
  CHECK_THROWS_AS(ic_lower_bound(uniform_inputs(3), eq_function(3), found), UncertifiedSup);
  CHECK_THROWS_AS(ic_lower_bound(uniform_inputs(4), eq_function(4), relaxed(3)), InconsistentInputs);
}

TEST_CASE("sandwich closes on ternary equality") {
  const auto uv = lift_to_uv(uniform_inputs(3), eq_function(3));
  SearchConfig c;
  c.restarts = 4;
  const auto found = achievability_search(uv, maximal_bicliques(build_graph(uv)), c);
  const auto exact = close_sandwich(relaxed(3), found);
  CHECK(exact.kind == SupKind::exact);
  const auto b = ic_lower_bound(uniform_inputs(3), eq_function(3), exact, found);
  CHECK(b.route == BoundRoute::search_witnessed);
  REQUIRE(b.sup_gap());
  CHECK(std::abs(*b.sup_gap()) <= 1e-9);
}

TEST_CASE("upper bounds") {
  const auto t = attach_upper_bound(ic_lower_bound_eq(3), kTernary);
  REQUIRE(t.gap);
  CHECK(std::abs(*t.gap) <= 1e-12);
  const auto f = attach_upper_bound(ic_lower_bound_eq(4), 2.75);
  CHECK(*f.gap == 0.25);
  const auto same = attach_upper_bound(ic_lower_bound_eq(5), ic_lower_bound_eq(5).ic_lower);
  CHECK(*same.gap == 0.0);
  CHECK_THROWS_AS(attach_upper_bound(ic_lower_bound_eq(4), 2.4), BoundOrderViolation);
}

TEST_CASE("the two assemblies agree on ternary equality") {
  const auto in = uniform_inputs(3);
  const auto f = eq_function(3);
  CHECK(input_form_bound(in, 2.0 / 3) == doctest::Approx(tension_form_bound(in, f, 2.0 / 3)).epsilon(1e-12));
}

TEST_CASE("provenance") {
  const auto b = ic_lower_bound(uniform_inputs(3), eq_function(3), relaxed(3));
  CHECK(b.provenance.input_fingerprint == fingerprint(uniform_inputs(3)));
  CHECK(b.provenance.function == "eq3");
  CHECK(b.provenance.sup_kind == SupKind::certified_upper);
}
