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

#include "icbound/char_graph.hpp"
#include "icbound/error.hpp"
#include "icbound/function.hpp"

using namespace icb;

namespace {

ClassDecomposition eq_classes(int k) { return maximal_bicliques(build_graph(lift_to_uv(uniform_inputs(k), eq_function(k)))); }

JointPMF diagonal(std::size_t n) {
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0 / static_cast<double>(n);
  return JointPMF({Alphabet::range("U", n), Alphabet::range("V", n)}, m);
}

}  // namespace

TEST_CASE("graph of ternary equality") {
  const auto g = build_graph(lift_to_uv(uniform_inputs(3), eq_function(3)));
  CHECK(g.edges().size() == 9u);
  std::size_t z0 = 0;
  for (const auto& e : g.edges()) z0 += g.left().symbol(e.u).back() == ')' && g.left().symbol(e.u)[3] == '0';
  CHECK(z0 == 6u);
  CHECK_THROWS_AS(build_graph(uniform_pmf({Alphabet::range("A", 2)})), WrongArity);
}

TEST_CASE("complete and matching graphs") {
  const auto full = build_graph(uniform_pmf({Alphabet::range("U", 2), Alphabet::range("V", 3)}));
  CHECK(full.edges().size() == 6u);
  CHECK(connected_components(full).size() == 1u);
  const auto dec = maximal_bicliques(full);
  REQUIRE(dec.classes.size() == 1u);
  CHECK(dec.classes[0].edge_count() == 6u);

  const auto m = build_graph(diagonal(4));
  CHECK(m.edges().size() == 4u);
  CHECK(connected_components(m).size() == 4u);
}

TEST_CASE("class counts") {
  CHECK(eq_classes(3).classes.size() == 9u);
  const auto two_bit = eq_classes(4);
  CHECK(two_bit.classes.size() == 18u);
  std::size_t three = 0, four = 0;
  for (const auto& c : two_bit.classes) {
    three += c.edge_count() == 3;
    four += c.edge_count() == 4;
  }
  CHECK(three == 8u);
  CHECK(four == 6u);
  const std::size_t expected[] = {0, 0, 4, 9, 18, 35, 68, 133};
  for (int k = 2; k <= 7; ++k) CHECK(eq_classes(k).classes.size() == expected[k]);
}

TEST_CASE("ternary classes are 1x2, 2x1 and single edges") {
  const auto dec = eq_classes(3);
  std::size_t two = 0, one = 0;
  for (const auto& c : dec.classes) {
    two += c.edge_count() == 2;
    one += c.edge_count() == 1;
  }
  CHECK(two == 6u);
  CHECK(one == 3u);
}

TEST_CASE("canonical order") {
  const auto dec = eq_classes(4);
  for (std::size_t i = 0; i < dec.classes.size(); ++i) {
    CHECK(dec.classes[i].index == i);
    if (i == 0) continue;
    const auto& a = dec.classes[i - 1];
    const auto& b = dec.classes[i];
    CHECK(std::pair(a.left_set.size(), a.right_set.size()) <= std::pair(b.left_set.size(), b.right_set.size()));
  }
}

TEST_CASE("crown edges appear in C(k-2, i-1) classes of left size i") {
  for (int k = 3; k <= 7; ++k) {
    const auto dec = eq_classes(k);
    const auto& g = dec.graph;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      std::vector<std::size_t> per_size(k + 1, 0);
      std::size_t total = 0;
      for (auto c : dec.membership[e]) {
        if (dec.classes[c].edge_count() == 1) continue;
        ++per_size[dec.classes[c].left_set.size()];
        ++total;
      }
      if (total == 0) continue;  // a Z=1 edge
      std::size_t binom = 1;
      for (int i = 1; i <= k - 1; ++i) {
        CHECK(per_size[i] == binom);
        binom = binom * (k - 1 - i) / i;
      }
    }
  }
}

TEST_CASE("too large") {
  BicliqueOptions tight;
  tight.max_side = 3;
  CHECK_THROWS_AS(maximal_bicliques(build_graph(lift_to_uv(uniform_inputs(4), eq_function(4))), tight), TooLarge);
}

TEST_CASE("Gacs-Korner") {
  const auto same = gk_common_information(diagonal(3));
  CHECK(same.common_information == doctest::Approx(1.5849625007211562).epsilon(1e-14));
  CHECK(std::abs(same.tension) <= 1e-12);
  CHECK(gk_common_information(uniform_pmf({Alphabet::range("U", 2), Alphabet::range("V", 2)})).common_information ==
        0.0);
  const auto eq = gk_common_information(lift_to_uv(uniform_inputs(3), eq_function(3)));
  CHECK(eq.common_information == doctest::Approx(1.4466166676282082).epsilon(1e-13));
  CHECK(eq.tension >= -1e-9);
}

TEST_CASE("zero-mass symbols stay isolated") {
  JointPMF p({Alphabet::range("U", 3), Alphabet::range("V", 2)}, {0.5, 0.0, 0.0, 0.5, 0.0, 0.0});
  const auto g = build_graph(validate(p));
  CHECK_FALSE(g.left_active(2));
  const auto dec = maximal_bicliques(g);
  for (const auto& c : dec.classes) {
    for (auto u : c.left_set) CHECK(u != 2u);
  }
}
