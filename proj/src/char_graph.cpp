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

#include "icbound/char_graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <tuple>

#include "icbound/error.hpp"

namespace icb {

CharGraph::CharGraph(Alphabet left, Alphabet right, std::vector<double> dense_mass)
    : left_(std::move(left)), right_(std::move(right)), dense_(std::move(dense_mass)) {
  const std::size_t n = left_.size() * right_.size();
  if (dense_.size() != n) throw WrongArity("mass table does not match alphabet sizes");
  edge_id_.assign(n, std::size_t(-1));
  for (std::size_t u = 0; u < left_.size(); ++u) {
    for (std::size_t v = 0; v < right_.size(); ++v) {
      if (dense_[u * right_.size() + v] > 0.0) {
        edge_id_[u * right_.size() + v] = edges_.size();
        edges_.push_back({u, v});
      }
    }
  }
  for (auto& id : edge_id_) {
    if (id == std::size_t(-1)) id = edges_.size();
  }
}

std::vector<std::size_t> CharGraph::left_neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < left_.size(); ++u) {
    if (has_edge(u, v)) out.push_back(u);
  }
  return out;
}

std::vector<std::size_t> CharGraph::right_neighbors(std::size_t u) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < right_.size(); ++v) {
    if (has_edge(u, v)) out.push_back(v);
  }
  return out;
}

bool CharGraph::left_active(std::size_t u) const {
  for (std::size_t v = 0; v < right_.size(); ++v) {
    if (has_edge(u, v)) return true;
  }
  return false;
}

bool CharGraph::right_active(std::size_t v) const {
  for (std::size_t u = 0; u < left_.size(); ++u) {
    if (has_edge(u, v)) return true;
  }
  return false;
}

bool BicliqueClass::contains(const Edge& e) const {
  return std::binary_search(left_set.begin(), left_set.end(), e.u) &&
         std::binary_search(right_set.begin(), right_set.end(), e.v);
}

std::size_t BicliqueClass::local_position(const Edge& e) const {
  const auto i = std::lower_bound(left_set.begin(), left_set.end(), e.u) - left_set.begin();
  const auto j = std::lower_bound(right_set.begin(), right_set.end(), e.v) - right_set.begin();
  return static_cast<std::size_t>(i) * right_set.size() + static_cast<std::size_t>(j);
}

CharGraph build_graph(const JointPMF& pmf) {
  if (pmf.arity() != 2) {
    throw WrongArity("characteristic graph needs a bivariate pmf, got " +
                     std::to_string(pmf.arity()) + " variables");
  }
  return CharGraph(pmf.variable(0), pmf.variable(1),
                   std::vector<double>(pmf.mass().begin(), pmf.mass().end()));
}

std::vector<Component> connected_components(const CharGraph& graph) {
  const std::size_t nl = graph.left().size();
  std::vector<std::size_t> parent(nl + graph.right().size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : graph.edges()) {
    const auto a = find(e.u);
    const auto b = find(nl + e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  std::vector<Component> components;
  std::vector<std::size_t> slot(parent.size(), std::size_t(-1));
  for (const auto& e : graph.edges()) {
    const auto root = find(e.u);
    if (slot[root] == std::size_t(-1)) {
      slot[root] = components.size();
      components.emplace_back();
    }
    components[slot[root]].mass += graph.mass(e.u, e.v);
  }
  for (std::size_t u = 0; u < nl; ++u) {
    if (graph.left_active(u)) components[slot[find(u)]].left.push_back(u);
  }
  for (std::size_t v = 0; v < graph.right().size(); ++v) {
    if (graph.right_active(v)) components[slot[find(nl + v)]].right.push_back(v);
  }
  return components;
}

namespace {

// Fixed-width set over a component's larger side.
class WordSet {
 public:
  explicit WordSet(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  void intersect(const WordSet& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }
  bool subset_of(const WordSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & ~other.words_[w]) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Enumerates (S, N(S)) over subsets S of `small` and keeps closed pairs.
// Returns pairs as (small-side set, large-side set).
std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> enumerate_closed(
    const std::vector<std::size_t>& small, const std::vector<std::size_t>& large,
    const std::vector<WordSet>& nbr) {
  const std::size_t n = small.size();
  const std::size_t full = std::size_t{1} << n;
  std::vector<WordSet> common(full);
  WordSet all(large.size());
  for (std::size_t j = 0; j < large.size(); ++j) all.set(j);
  common[0] = all;

  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> out;
  for (std::size_t mask = 1; mask < full; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    common[mask] = common[mask & (mask - 1)];
    common[mask].intersect(nbr[low]);
    if (common[mask].empty()) continue;
    // Closure: every small-side vertex adjacent to all of N(S) must be in S.
    bool closed = true;
    for (std::size_t i = 0; i < n && closed; ++i) {
      if (!((mask >> i) & 1) && common[mask].subset_of(nbr[i])) closed = false;
    }
    if (!closed) continue;
    std::vector<std::size_t> s;
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1) s.push_back(small[i]);
    }
    for (std::size_t j = 0; j < large.size(); ++j) {
      if (common[mask].test(j)) t.push_back(large[j]);
    }
    out.emplace_back(std::move(s), std::move(t));
  }
  return out;
}

}  // namespace

ClassDecomposition maximal_bicliques(const CharGraph& graph, BicliqueOptions options) {
  if (graph.edges().empty()) throw TooLarge("characteristic graph has no edges");

  std::vector<BicliqueClass> classes;
  for (const auto& comp : connected_components(graph)) {
    const bool left_small = comp.left.size() <= comp.right.size();
    const auto& small = left_small ? comp.left : comp.right;
    const auto& large = left_small ? comp.right : comp.left;
    if (small.size() > options.max_side) {
      throw TooLarge("component with " + std::to_string(small.size()) +
                     " vertices on its smaller side exceeds the limit of " +
                     std::to_string(options.max_side));
    }
    std::vector<WordSet> nbr(small.size(), WordSet(large.size()));
    for (std::size_t i = 0; i < small.size(); ++i) {
      for (std::size_t j = 0; j < large.size(); ++j) {
        const bool adjacent = left_small ? graph.has_edge(small[i], large[j])
                                         : graph.has_edge(large[j], small[i]);
        if (adjacent) nbr[i].set(j);
      }
    }
    for (auto& [s, t] : enumerate_closed(small, large, nbr)) {
      BicliqueClass c;
      c.left_set = left_small ? std::move(s) : std::move(t);
      c.right_set = left_small ? std::move(t) : std::move(s);
      classes.push_back(std::move(c));
    }
  }

  std::sort(classes.begin(), classes.end(), [](const BicliqueClass& a, const BicliqueClass& b) {
    return std::tuple(a.left_set.size(), a.right_set.size(), a.left_set, a.right_set) <
           std::tuple(b.left_set.size(), b.right_set.size(), b.left_set, b.right_set);
  });
  std::vector<std::vector<std::size_t>> membership(graph.edges().size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    classes[i].index = i;
    for (auto u : classes[i].left_set) {
      for (auto v : classes[i].right_set) membership[graph.edge_index(u, v)].push_back(i);
    }
  }
  return ClassDecomposition{graph, std::move(classes), std::move(membership)};
}

bool is_maximal_biclique(const CharGraph& graph, const BicliqueClass& c) {
  if (c.left_set.empty() || c.right_set.empty()) return false;
  for (auto u : c.left_set) {
    for (auto v : c.right_set) {
      if (!graph.has_edge(u, v)) return false;
    }
  }
  for (std::size_t u = 0; u < graph.left().size(); ++u) {
    if (std::binary_search(c.left_set.begin(), c.left_set.end(), u)) continue;
    if (std::all_of(c.right_set.begin(), c.right_set.end(),
                    [&](std::size_t v) { return graph.has_edge(u, v); })) {
      return false;
    }
  }
  for (std::size_t v = 0; v < graph.right().size(); ++v) {
    if (std::binary_search(c.right_set.begin(), c.right_set.end(), v)) continue;
    if (std::all_of(c.left_set.begin(), c.left_set.end(),
                    [&](std::size_t u) { return graph.has_edge(u, v); })) {
      return false;
    }
  }
  return true;
}

GacsKornerResult gk_common_information(const JointPMF& pmf) {
  const auto graph = build_graph(pmf);
  std::vector<double> masses;
  for (const auto& c : connected_components(graph)) masses.push_back(c.mass);
  GacsKornerResult r;
  r.common_information = entropy_of(masses);
  const auto& a = pmf.variable(0).name();
  const auto& b = pmf.variable(1).name();
  r.tension = clamp_slack(mutual_information(pmf, {a}, {b}) - r.common_information);
  return r;
}

}  // namespace icb
