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

#pragma once

// Hand-rolled random instance generators for property and acceptance tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "icbound/char_graph.hpp"
#include "icbound/function.hpp"
#include "icbound/pmf.hpp"
#include "icbound/protocol.hpp"
#include "icbound/wyner.hpp"

namespace icb::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on {0, ..., n-1}.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  /// Uniform on {lo, ..., hi}.
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(double p) { return uniform() < p; }
  double exponential() { return -std::log1p(-uniform()); }

 private:
  std::mt19937_64 engine_;
};

/// Random point of the simplex of dimension n; each entry is zeroed with
/// probability `zeros` (at least one stays positive).
inline std::vector<double> random_simplex(Rng& rng, std::size_t n, double zeros = 0.0) {
  std::vector<double> p(n);
  double total = 0.0;
  while (total <= 0.0) {
    total = 0.0;
    for (auto& x : p) {
      x = rng.chance(zeros) ? 0.0 : rng.exponential();
      total += x;
    }
  }
  for (auto& x : p) x /= total;
  return p;
}

inline JointPMF random_pmf(Rng& rng, const std::vector<std::size_t>& sizes, double zeros = 0.0,
                           const std::vector<std::string>& names = {}) {
  std::vector<Alphabet> vars;
  std::size_t n = 1;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const std::string name = i < names.size() ? names[i] : "V" + std::to_string(i);
    vars.push_back(Alphabet::range(name, sizes[i]));
    n *= sizes[i];
  }
  return validate(JointPMF(std::move(vars), random_simplex(rng, n, zeros)));
}

/// Independent X, Y with random marginals of the given sizes.
inline JointPMF random_independent_xy(Rng& rng, std::size_t nx, std::size_t ny) {
  const auto px = random_simplex(rng, nx);
  const auto py = random_simplex(rng, ny);
  std::vector<double> m(nx * ny);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) m[x * ny + y] = px[x] * py[y];
  }
  return validate(JointPMF({Alphabet::range("X", nx), Alphabet::range("Y", ny)}, std::move(m)));
}

inline FunctionSpec random_function(Rng& rng, std::size_t nx, std::size_t ny, std::size_t nz) {
  std::vector<std::size_t> table(nx * ny);
  for (auto& z : table) z = rng.below(nz);
  return FunctionSpec("random", Alphabet::range("X", nx), Alphabet::range("Y", ny), Alphabet::range("Z", nz),
                      std::move(table));
}

/// Tiny (U, V) instances: sides of 2 or 3 symbols, each cell empty with
/// probability 0.35, at most `max_classes` classes.
inline std::vector<JointPMF> tiny_uv_family(std::uint64_t seed, std::size_t count, std::size_t max_classes = 4) {
  Rng rng(seed);
  std::vector<JointPMF> out;
  while (out.size() < count) {
    const std::size_t a = rng.between(2, 3);
    const std::size_t b = rng.between(2, 3);
    auto pmf = random_pmf(rng, {a, b}, 0.35, {"U", "V"});
    if (maximal_bicliques(build_graph(pmf)).classes.size() <= max_classes) out.push_back(std::move(pmf));
  }
  return out;
}

/// A random QAssignment on `dec`: `symbols` symbols on random classes with
/// random masses, rescaled edge-wise so the U, V marginal matches the graph.
inline QAssignment random_assignment(Rng& rng, const ClassDecomposition& dec, std::size_t symbols) {
  std::vector<QSymbol> out;
  std::vector<double> cover(dec.graph.edges().size(), 0.0);
  for (std::size_t s = 0; s < symbols; ++s) {
    const std::size_t c = rng.below(dec.classes.size());
    const auto& cls = dec.classes[c];
    QSymbol q{c, std::vector<double>(cls.edge_count(), 0.0)};
    for (std::size_t i = 0; i < cls.left_set.size(); ++i) {
      for (std::size_t j = 0; j < cls.right_set.size(); ++j) {
        const double w = rng.chance(0.2) ? 0.0 : rng.exponential();
        q.mass[i * cls.right_set.size() + j] = w;
        cover[dec.graph.edge_index(cls.left_set[i], cls.right_set[j])] += w;
      }
    }
    out.push_back(std::move(q));
  }
  // Edges nobody covered get a symbol on their first class.
  for (std::size_t e = 0; e < cover.size(); ++e) {
    if (cover[e] > 0.0) continue;
    const std::size_t c = dec.membership[e].front();
    const auto& cls = dec.classes[c];
    QSymbol q{c, std::vector<double>(cls.edge_count(), 0.0)};
    q.mass[cls.local_position(dec.graph.edges()[e])] = 1.0;
    cover[e] = 1.0;
    out.push_back(std::move(q));
  }
  for (auto& q : out) {
    const auto& cls = dec.classes[q.class_index];
    for (std::size_t i = 0; i < cls.left_set.size(); ++i) {
      for (std::size_t j = 0; j < cls.right_set.size(); ++j) {
        const std::size_t e = dec.graph.edge_index(cls.left_set[i], cls.right_set[j]);
        q.mass[i * cls.right_set.size() + j] *= dec.graph.mass(cls.left_set[i], cls.right_set[j]) / cover[e];
      }
    }
  }
  return QAssignment(dec, std::move(out));
}

/// Random protocol with alternating senders, depth <= max_depth and
/// message alphabets <= max_messages. Kernels have random zeros; some
/// prefixes are marked terminal.
inline ProtocolSpec random_protocol(Rng& rng, std::size_t nx, std::size_t ny, std::size_t max_depth,
                                    std::size_t max_messages) {
  ProtocolSpec p;
  p.name = "random";
  p.x = Alphabet::range("X", nx);
  p.y = Alphabet::range("Y", ny);
  const std::size_t depth = rng.between(1, max_depth);
  std::vector<Prefix> live = {{}};
  for (std::size_t i = 0; i < depth; ++i) {
    RoundKernel r;
    r.sender = i % 2 == 0 ? Party::alice : Party::bob;
    r.messages = Alphabet::range("M" + std::to_string(i + 1), rng.between(1, max_messages));
    const std::size_t inputs = r.sender == Party::alice ? nx : ny;
    std::vector<Prefix> next;
    for (const auto& prefix : live) {
      for (std::size_t in = 0; in < inputs; ++in) {
        r.table[{in, prefix}] = random_simplex(rng, r.messages.size(), 0.3);
      }
      for (std::size_t m = 0; m < r.messages.size(); ++m) {
        auto longer = prefix;
        longer.push_back(m);
        if (i + 1 < depth && rng.chance(0.2)) {
          p.terminal.insert(longer);
        } else {
          next.push_back(std::move(longer));
        }
      }
    }
    p.rounds.push_back(std::move(r));
    live = std::move(next);
  }
  return p;
}

}  // namespace icb::testing
