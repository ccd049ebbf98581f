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
#include "icbound/pmf.hpp"

using namespace icb;

namespace {

const double kLog3 = 1.5849625007211562;
const double kH13 = 0.9182958340544896;  // H_2(1/3)

JointPMF ternary_eq_xyz() { return with_function(uniform_inputs(3), eq_function(3)); }

}  // namespace

TEST_CASE("alphabet rejects duplicates and empty symbol lists") {
  CHECK_THROWS_AS(Alphabet("A", {"a", "a"}), InvalidAlphabet);
  CHECK_THROWS_AS(Alphabet("A", {}), InvalidAlphabet);
  Alphabet a("A", {"x", "y"});
  CHECK(a.index_of("y") == 1u);
  CHECK_FALSE(a.index_of("z"));
}

TEST_CASE("validate") {
  auto uniform = uniform_pmf({Alphabet::range("X", 3), Alphabet::range("Y", 3)});
  auto v = validate(uniform);
  for (double m : v.mass()) CHECK(m == doctest::Approx(1.0 / 9).epsilon(1e-15));

  JointPMF over({Alphabet::range("X", 2)}, {0.5, 0.5 + 1e-10});
  CHECK(validate(over).total() == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(validate(JointPMF({Alphabet::range("X", 2)}, {1.01, -0.01})), NotAProbability);
  CHECK_THROWS_AS(validate(JointPMF({Alphabet::range("X", 2)}, {0.5, 0.6})), NotAProbability);

  auto tiny = validate(JointPMF({Alphabet::range("X", 2)}, {1.0, 1e-16}));
  CHECK(tiny.mass()[1] == 0.0);
}

TEST_CASE("entropy") {
  CHECK(entropy(uniform_pmf({Alphabet::range("X", 3)}), {"X"}) == doctest::Approx(kLog3).epsilon(1e-14));
  CHECK(entropy(JointPMF({Alphabet::range("X", 3)}, {0.0, 1.0, 0.0}), {"X"}) == 0.0);
  CHECK(entropy(JointPMF({Alphabet::range("X", 2)}, {2.0 / 3, 1.0 / 3}), {"X"}) ==
        doctest::Approx(kH13).epsilon(1e-14));
  CHECK_THROWS_AS(entropy(uniform_inputs(2), {"W"}), UnknownVariable);
}

TEST_CASE("conditional entropy") {
  CHECK(conditional_entropy(uniform_inputs(3), {"X"}, {"Y"}) == doctest::Approx(kLog3).epsilon(1e-14));
  CHECK(conditional_entropy(ternary_eq_xyz(), {"Y"}, {"X", "Z"}) == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK_THROWS_AS(conditional_entropy(uniform_inputs(3), {"X"}, {"X"}), OverlappingVariableSets);
}

TEST_CASE("mutual information") {
  CHECK(mutual_information(uniform_inputs(3), {"X"}, {"Y"}) == 0.0);
  CHECK(std::abs(mutual_information(ternary_eq_xyz(), {"X"}, {"Z"})) <= 1e-12);
  std::vector<double> diag(9, 0.0);
  for (int i = 0; i < 3; ++i) diag[i * 3 + i] = 1.0 / 3;
  JointPMF same({Alphabet::range("X", 3), Alphabet::range("Y", 3)}, diag);
  CHECK(mutual_information(same, {"X"}, {"Y"}) == doctest::Approx(kLog3).epsilon(1e-14));
}

TEST_CASE("conditional mutual information") {
  const auto j = ternary_eq_xyz();
  CHECK(conditional_mutual_information(j, {"X"}, {"Z"}, {"Y"}) == doctest::Approx(kH13).epsilon(1e-13));
  const auto c = product_pmf(uniform_inputs(3), uniform_pmf({Alphabet::range("C", 1)}));
  CHECK(std::abs(conditional_mutual_information(c, {"X"}, {"Y"}, {"C"}) - mutual_information(c, {"X"}, {"Y"})) <= 1e-12);
  CHECK_THROWS_AS(conditional_mutual_information(j, {"X"}, {"Z"}, {"X"}), OverlappingVariableSets);
}

TEST_CASE("marginals and offsets") {
  auto p = validate(JointPMF({Alphabet::range("A", 2), Alphabet::range("B", 3)}, {1 / 21.0, 2 / 21.0, 3 / 21.0, 4 / 21.0, 5 / 21.0, 6 / 21.0}));
  CHECK(p.offset(std::vector<std::size_t>{1, 2}) == 5u);
  CHECK(p.unravel(4) == std::vector<std::size_t>{1, 1});
  auto b = p.marginal_pmf({"B"});
  CHECK(b.mass()[0] == doctest::Approx(5.0 / 21));
  CHECK(b.mass()[2] == doctest::Approx(9.0 / 21));
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0 / 3) == doctest::Approx(kH13).epsilon(1e-14));
}
