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

#include "icbound/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "icbound/error.hpp"

namespace icb {

Alphabet::Alphabet(std::string name, std::vector<std::string> symbols)
    : name_(std::move(name)), symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InvalidAlphabet("alphabet '" + name_ + "' is empty");
  std::set<std::string_view> seen;
  for (const auto& s : symbols_) {
    if (!seen.insert(s).second) {
      throw InvalidAlphabet("duplicate symbol '" + s + "' in alphabet '" + name_ + "'");
    }
  }
}

Alphabet Alphabet::range(std::string name, std::size_t n) {
  std::vector<std::string> symbols;
  symbols.reserve(n);
  for (std::size_t i = 0; i < n; ++i) symbols.push_back(std::to_string(i));
  return Alphabet(std::move(name), std::move(symbols));
}

std::optional<std::size_t> Alphabet::index_of(std::string_view symbol) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - symbols_.begin());
}

JointPMF::JointPMF(std::vector<Alphabet> variables, std::vector<double> mass)
    : variables_(std::move(variables)), mass_(std::move(mass)) {
  std::set<std::string_view> names;
  for (const auto& v : variables_) {
    if (!names.insert(v.name()).second) {
      throw InvalidAlphabet("duplicate variable name '" + v.name() + "'");
    }
  }
  strides_.assign(variables_.size(), 1);
  std::size_t total = 1;
  for (std::size_t i = variables_.size(); i-- > 0;) {
    strides_[i] = total;
    total *= variables_[i].size();
  }
  if (mass_.size() != total) {
    throw InvalidAlphabet("mass vector has " + std::to_string(mass_.size()) +
                          " entries, expected " + std::to_string(total));
  }
}

std::vector<std::size_t> JointPMF::shape() const {
  std::vector<std::size_t> s;
  s.reserve(variables_.size());
  for (const auto& v : variables_) s.push_back(v.size());
  return s;
}

std::size_t JointPMF::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name() == name) return i;
  }
  throw UnknownVariable("no variable named '" + std::string(name) + "'");
}

std::size_t JointPMF::offset(std::span<const std::size_t> index) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < index.size(); ++i) off += index[i] * strides_[i];
  return off;
}

std::vector<std::size_t> JointPMF::unravel(std::size_t offset) const {
  std::vector<std::size_t> index(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    index[i] = offset / strides_[i];
    offset %= strides_[i];
  }
  return index;
}

std::vector<double> JointPMF::marginal(std::span<const std::size_t> positions) const {
  std::vector<std::size_t> sub_strides(positions.size(), 1);
  std::size_t sub_size = 1;
  for (std::size_t i = positions.size(); i-- > 0;) {
    sub_strides[i] = sub_size;
    sub_size *= variables_.at(positions[i]).size();
  }
  std::vector<double> out(sub_size, 0.0);
  for (std::size_t off = 0; off < mass_.size(); ++off) {
    const double m = mass_[off];
    if (m == 0.0) continue;
    std::size_t sub = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      sub += ((off / strides_[positions[i]]) % variables_[positions[i]].size()) * sub_strides[i];
    }
    out[sub] += m;
  }
  return out;
}

JointPMF JointPMF::marginal_pmf(const VarSet& vars) const {
  std::vector<std::size_t> positions;
  std::vector<Alphabet> alphabets;
  for (const auto& name : vars) {
    positions.push_back(variable_index(name));
    alphabets.push_back(variables_[positions.back()]);
  }
  return JointPMF(std::move(alphabets), marginal(positions));
}

double JointPMF::total() const {
  return std::accumulate(mass_.begin(), mass_.end(), 0.0);
}

JointPMF validate(const JointPMF& pmf) {
  double total = 0.0;
  for (double m : pmf.mass()) {
    if (!(m >= 0.0)) throw NotAProbability("negative or NaN entry " + std::to_string(m));
    total += m;
  }
  if (std::abs(total - 1.0) > tol::kValidation) {
    throw NotAProbability("total mass " + std::to_string(total) + " deviates from 1");
  }
  std::vector<double> mass(pmf.mass().begin(), pmf.mass().end());
  for (double& m : mass) {
    m = m < tol::kZeroMass ? 0.0 : m / total;
  }
  return JointPMF(pmf.variables(), std::move(mass));
}

Bits entropy_of(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

Bits binary_entropy(double p) {
  const double q[2] = {p, 1.0 - p};
  return entropy_of(q);
}

namespace {

std::vector<std::size_t> positions_of(const JointPMF& pmf, const VarSet& vars) {
  std::vector<std::size_t> positions;
  positions.reserve(vars.size());
  for (const auto& name : vars) positions.push_back(pmf.variable_index(name));
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  return positions;
}

std::vector<std::size_t> merged(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

void require_disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  if (!common.empty()) throw OverlappingVariableSets("variable sets must be disjoint");
}

Bits entropy_at(const JointPMF& pmf, const std::vector<std::size_t>& positions) {
  if (positions.empty()) return 0.0;
  return entropy_of(pmf.marginal(positions));
}

}  // namespace

Bits entropy(const JointPMF& pmf, const VarSet& vars) {
  return entropy_at(pmf, positions_of(pmf, vars));
}

Bits conditional_entropy(const JointPMF& pmf, const VarSet& target, const VarSet& given) {
  const auto t = positions_of(pmf, target);
  const auto g = positions_of(pmf, given);
  require_disjoint(t, g);
  const double h = entropy_at(pmf, merged(t, g)) - entropy_at(pmf, g);
  return std::max(h, 0.0);
}

Bits mutual_information(const JointPMF& pmf, const VarSet& a, const VarSet& b, Slack slack) {
  const auto pa = positions_of(pmf, a);
  const auto pb = positions_of(pmf, b);
  require_disjoint(pa, pb);
  const double i = entropy_at(pmf, pa) + entropy_at(pmf, pb) - entropy_at(pmf, merged(pa, pb));
  return slack == Slack::clamp ? clamp_slack(i) : i;
}

Bits conditional_mutual_information(const JointPMF& pmf, const VarSet& a, const VarSet& b,
                                    const VarSet& given, Slack slack) {
  const auto pa = positions_of(pmf, a);
  const auto pb = positions_of(pmf, b);
  const auto pc = positions_of(pmf, given);
  require_disjoint(pa, pb);
  require_disjoint(pa, pc);
  require_disjoint(pb, pc);
  const double i = entropy_at(pmf, merged(pa, pc)) + entropy_at(pmf, merged(pb, pc)) -
                   entropy_at(pmf, merged(merged(pa, pb), pc)) - entropy_at(pmf, pc);
  return slack == Slack::clamp ? clamp_slack(i) : i;
}

JointPMF uniform_pmf(std::vector<Alphabet> variables) {
  std::size_t n = 1;
  for (const auto& v : variables) n *= v.size();
  return JointPMF(std::move(variables), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

JointPMF product_pmf(const JointPMF& a, const JointPMF& b) {
  std::vector<Alphabet> vars = a.variables();
  vars.insert(vars.end(), b.variables().begin(), b.variables().end());
  std::vector<double> mass;
  mass.reserve(a.size() * b.size());
  for (double pa : a.mass()) {
    for (double pb : b.mass()) mass.push_back(pa * pb);
  }
  return JointPMF(std::move(vars), std::move(mass));
}

}  // namespace icb
