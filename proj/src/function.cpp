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

#include "icbound/function.hpp"

#include "icbound/error.hpp"

namespace icb {

FunctionSpec::FunctionSpec(std::string name, Alphabet x_alphabet, Alphabet y_alphabet,
                           Alphabet z_alphabet, std::vector<std::size_t> table)
    : name_(std::move(name)),
      x_(std::move(x_alphabet)),
      y_(std::move(y_alphabet)),
      z_(std::move(z_alphabet)),
      table_(std::move(table)) {
  if (table_.size() != x_.size() * y_.size()) {
    throw InconsistentInputs("function table must cover all of X x Y");
  }
  for (auto z : table_) {
    if (z >= z_.size()) throw InconsistentInputs("function value outside the Z alphabet");
  }
}

FunctionSpec eq_function(int k) {
  if (k < 1) throw BadK("alphabet size must be positive");
  const auto n = static_cast<std::size_t>(k);
  std::vector<std::size_t> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) table[x * n + y] = x == y ? 1 : 0;
  }
  return FunctionSpec("eq" + std::to_string(k), Alphabet::range("X", n), Alphabet::range("Y", n),
                      Alphabet::range("Z", 2), std::move(table));
}

JointPMF uniform_inputs(int k) {
  if (k < 1) throw BadK("alphabet size must be positive");
  const auto n = static_cast<std::size_t>(k);
  return uniform_pmf({Alphabet::range("X", n), Alphabet::range("Y", n)});
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> align_inputs(
    const JointPMF& pmf_xy, const FunctionSpec& f) {
  if (pmf_xy.arity() != 2) throw WrongArity("input pmf must be over (X, Y)");
  auto map = [](const Alphabet& from, const Alphabet& to) {
    std::vector<std::size_t> out;
    for (const auto& s : from.symbols()) {
      auto idx = to.index_of(s);
      if (!idx) {
        throw InconsistentInputs("symbol '" + s + "' of " + from.name() +
                                 " is not in the function's domain");
      }
      out.push_back(*idx);
    }
    return out;
  };
  return {map(pmf_xy.variable(0), f.x_alphabet()), map(pmf_xy.variable(1), f.y_alphabet())};
}

LiftedPMF lift_to_uv_detailed(const JointPMF& pmf_xy, const FunctionSpec& f) {
  const auto [xmap, ymap] = align_inputs(pmf_xy, f);
  const std::size_t nx = pmf_xy.variable(0).size();
  const std::size_t ny = pmf_xy.variable(1).size();
  const std::size_t nz = f.z_alphabet().size();

  // Which (x,z) and (y,z) pairs carry mass.
  std::vector<char> u_used(nx * nz, 0);
  std::vector<char> v_used(ny * nz, 0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      if (pmf_xy.mass()[x * ny + y] <= 0.0) continue;
      const auto z = f(xmap[x], ymap[y]);
      u_used[x * nz + z] = 1;
      v_used[y * nz + z] = 1;
    }
  }
  LiftedPMF out{JointPMF({Alphabet("U", {"-"}), Alphabet("V", {"-"})}, {1.0}), {}, {}};
  std::vector<std::string> u_symbols;
  std::vector<std::string> v_symbols;
  std::vector<std::size_t> u_index(nx * nz);
  std::vector<std::size_t> v_index(ny * nz);
  const auto& zsym = f.z_alphabet().symbols();
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t z = 0; z < nz; ++z) {
      if (!u_used[x * nz + z]) continue;
      u_index[x * nz + z] = u_symbols.size();
      u_symbols.push_back("(" + pmf_xy.variable(0).symbol(x) + "," + zsym[z] + ")");
      out.u_pairs.emplace_back(x, z);
    }
  }
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t z = 0; z < nz; ++z) {
      if (!v_used[y * nz + z]) continue;
      v_index[y * nz + z] = v_symbols.size();
      v_symbols.push_back("(" + pmf_xy.variable(1).symbol(y) + "," + zsym[z] + ")");
      out.v_pairs.emplace_back(y, z);
    }
  }
  if (u_symbols.empty()) throw NotAProbability("input pmf has no mass");

  std::vector<double> mass(u_symbols.size() * v_symbols.size(), 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      const double p = pmf_xy.mass()[x * ny + y];
      if (p <= 0.0) continue;
      const auto z = f(xmap[x], ymap[y]);
      mass[u_index[x * nz + z] * v_symbols.size() + v_index[y * nz + z]] += p;
    }
  }
  out.uv = JointPMF({Alphabet("U", std::move(u_symbols)), Alphabet("V", std::move(v_symbols))},
                    std::move(mass));
  return out;
}

JointPMF lift_to_uv(const JointPMF& pmf_xy, const FunctionSpec& f) {
  return lift_to_uv_detailed(pmf_xy, f).uv;
}

JointPMF with_function(const JointPMF& pmf_xy, const FunctionSpec& f) {
  const auto [xmap, ymap] = align_inputs(pmf_xy, f);
  const std::size_t nx = pmf_xy.variable(0).size();
  const std::size_t ny = pmf_xy.variable(1).size();
  const std::size_t nz = f.z_alphabet().size();
  std::vector<double> mass(nx * ny * nz, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      mass[(x * ny + y) * nz + f(xmap[x], ymap[y])] = pmf_xy.mass()[x * ny + y];
    }
  }
  return JointPMF({pmf_xy.variable(0), pmf_xy.variable(1), Alphabet("Z", f.z_alphabet().symbols())},
                  std::move(mass));
}

}  // namespace icb
