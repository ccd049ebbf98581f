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

// Bipartite characteristic graph of a two-variable pmf and its maximal
// bicliques ("classes"). Vertices are symbol indices of the U (left) and V
// (right) alphabets. Zero-mass symbols stay in the alphabets but never
// appear in an edge, a class or a component.

#include <cstddef>
#include <vector>

#include "icbound/pmf.hpp"

namespace icb {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  auto operator<=>(const Edge&) const = default;
};

class CharGraph {
 public:
  CharGraph(Alphabet left, Alphabet right, std::vector<double> dense_mass);

  const Alphabet& left() const { return left_; }
  const Alphabet& right() const { return right_; }
  /// Positive-mass pairs in row-major order.
  const std::vector<Edge>& edges() const { return edges_; }
  double mass(std::size_t u, std::size_t v) const { return dense_[u * right_.size() + v]; }
  bool has_edge(std::size_t u, std::size_t v) const { return mass(u, v) > 0.0; }
  /// Index into edges() of (u, v), or edges().size() when absent.
  std::size_t edge_index(std::size_t u, std::size_t v) const {
    return edge_id_[u * right_.size() + v];
  }
  std::vector<std::size_t> left_neighbors(std::size_t v) const;
  std::vector<std::size_t> right_neighbors(std::size_t u) const;
  bool left_active(std::size_t u) const;
  bool right_active(std::size_t v) const;

 private:
  Alphabet left_;
  Alphabet right_;
  std::vector<double> dense_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> edge_id_;
};

struct BicliqueClass {
  std::vector<std::size_t> left_set;   // sorted
  std::vector<std::size_t> right_set;  // sorted
  std::size_t index = 0;

  std::size_t edge_count() const { return left_set.size() * right_set.size(); }
  bool contains(const Edge& e) const;
  /// Row-major position of e inside left_set x right_set.
  std::size_t local_position(const Edge& e) const;
};

struct ClassDecomposition {
  CharGraph graph;
  std::vector<BicliqueClass> classes;
  /// membership[edge index] = ascending class indices containing the edge.
  std::vector<std::vector<std::size_t>> membership;
};

/// Throws WrongArity unless the pmf has exactly two variables.
CharGraph build_graph(const JointPMF& pmf);

struct BicliqueOptions {
  std::size_t max_side = 20;  // TooLarge above this (per component, smaller side)
};

/// Exhaustive enumeration of maximal bicliques, one connected component at a
/// time, over subsets of the component's smaller side.
ClassDecomposition maximal_bicliques(const CharGraph& graph, BicliqueOptions options = {});

struct Component {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  double mass = 0.0;
};

/// Connected components over positive-mass vertices, ordered by their first
/// edge in row-major order.
std::vector<Component> connected_components(const CharGraph& graph);

struct GacsKornerResult {
  Bits common_information = 0.0;
  Bits tension = 0.0;  // I(U;V) - CI_GK
};

GacsKornerResult gk_common_information(const JointPMF& pmf);

/// Independent maximality check used by tests and by verify paths: the pair
/// is a biclique and no vertex can be added on either side.
bool is_maximal_biclique(const CharGraph& graph, const BicliqueClass& c);

}  // namespace icb
