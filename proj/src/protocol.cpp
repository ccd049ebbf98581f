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

#include "icbound/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_map>

#include "icbound/error.hpp"

namespace icb {

namespace {

constexpr const char* kNone = "·";

std::string join_messages(const ProtocolSpec& p, const Prefix& prefix, std::size_t length) {
  if (length == 0) return "-";
  std::string out;
  for (std::size_t i = 0; i < length; ++i) {
    if (i > 0) out += '.';
    out += p.rounds[i].messages.symbol(prefix[i]);
  }
  return out;
}

// Symbols of a composite variable in order of first appearance.
class Interner {
 public:
  std::size_t operator()(const std::string& s) {
    auto [it, fresh] = index_.try_emplace(s, symbols_.size());
    if (fresh) symbols_.push_back(s);
    return it->second;
  }
  const std::vector<std::string>& symbols() const { return symbols_; }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> symbols_;
};

struct Atom {
  std::size_t x, y;
  Prefix path;
  double mass;
};

}  // namespace

void check_structure(const ProtocolSpec& p) {
  if (p.rounds.size() > kMaxRounds) {
    throw DepthExceeded(std::to_string(p.rounds.size()) + " rounds exceed the cap of " +
                        std::to_string(kMaxRounds));
  }
  for (std::size_t i = 0; i < p.rounds.size(); ++i) {
    const Party expected = i % 2 == 0 ? Party::alice : Party::bob;
    if (p.rounds[i].sender != expected) {
      throw InconsistentInputs("round " + std::to_string(i + 1) + " must be sent by " +
                               (expected == Party::alice ? "Alice" : "Bob"));
    }
    if (p.rounds[i].messages.size() > kMaxMessages) {
      throw TooLarge("round " + std::to_string(i + 1) + " has more than " +
                     std::to_string(kMaxMessages) + " messages");
    }
  }
}

TranscriptDistribution transcript_distribution(const ProtocolSpec& p, const JointPMF& pmf_xy,
                                               const FunctionSpec& f) {
  check_structure(p);
  if (pmf_xy.arity() != 2) throw WrongArity("input pmf must be over (X, Y)");
  if (pmf_xy.variable(0).symbols() != p.x.symbols() || pmf_xy.variable(1).symbols() != p.y.symbols()) {
    throw InconsistentInputs("input pmf alphabets differ from the protocol's");
  }
  const auto [xmap, ymap] = align_inputs(pmf_xy, f);
  const std::size_t nx = p.x.size();
  const std::size_t ny = p.y.size();
  const std::size_t depth = p.rounds.size();

  // Depth-first enumeration in canonical order: inputs row-major, messages
  // by index.
  std::vector<Atom> atoms;
  Prefix path;
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      const double pxy = pmf_xy.mass()[x * ny + y];
      if (pxy <= 0.0) continue;
      auto walk = [&](auto&& self, double mass) -> void {
        const std::size_t i = path.size();
        if (i == depth || p.terminal.count(path)) {
          atoms.push_back({x, y, path, mass});
          return;
        }
        const auto& round = p.rounds[i];
        const std::size_t input = round.sender == Party::alice ? x : y;
        auto it = round.table.find({input, path});
        const std::string where = "round " + std::to_string(i + 1) + ", input " +
                                  (round.sender == Party::alice ? p.x : p.y).symbol(input) +
                                  ", prefix " + join_messages(p, path, i);
        if (it == round.table.end()) throw KernelNotStochastic("no distribution at " + where);
        const auto& dist = it->second;
        if (dist.size() != round.messages.size()) {
          throw KernelNotStochastic("distribution size mismatch at " + where);
        }
        double total = 0.0;
        for (double q : dist) {
          if (!(q >= 0.0)) throw KernelNotStochastic("negative probability at " + where);
          total += q;
        }
        if (std::abs(total - 1.0) > tol::kIdentity) {
          throw KernelNotStochastic("probabilities sum to " + std::to_string(total) + " at " + where);
        }
        for (std::size_t m = 0; m < dist.size(); ++m) {
          if (dist[m] <= 0.0) continue;
          path.push_back(m);
          self(self, mass * dist[m]);
          path.pop_back();
        }
      };
      walk(walk, pxy);
    }
  }

  std::vector<Party> senders;
  for (const auto& r : p.rounds) senders.push_back(r.sender);
  const Alphabet xa("X", p.x.symbols());
  const Alphabet ya("Y", p.y.symbols());
  const std::size_t nz = f.z_alphabet().size();

  std::optional<JointPMF> joint;
  {
    Interner m;
    for (const auto& a : atoms) m(join_messages(p, a.path, a.path.size()));
    const std::size_t nm = m.symbols().size();
    std::vector<double> mass(nx * ny * nz * nm, 0.0);
    for (const auto& a : atoms) {
      const auto z = f(xmap[a.x], ymap[a.y]);
      mass[((a.x * ny + a.y) * nz + z) * nm + m(join_messages(p, a.path, a.path.size()))] += a.mass;
    }
    joint.emplace(std::vector<Alphabet>{xa, ya, Alphabet("Z", f.z_alphabet().symbols()), Alphabet("M", m.symbols())},
                        std::move(mass));
  }

  std::vector<JointPMF> prefix_joints;
  for (std::size_t i = 0; i <= depth; ++i) {
    Interner pre;
    for (const auto& a : atoms) pre(join_messages(p, a.path, std::min(i, a.path.size())));
    const std::size_t np = pre.symbols().size();
    std::vector<double> mass(nx * ny * np, 0.0);
    for (const auto& a : atoms) {
      mass[(a.x * ny + a.y) * np + pre(join_messages(p, a.path, std::min(i, a.path.size())))] += a.mass;
    }
    prefix_joints.emplace_back(std::vector<Alphabet>{xa, ya, Alphabet("P", pre.symbols())},
                                  std::move(mass));
  }

  std::vector<JointPMF> round_joints;
  for (std::size_t i = 0; i < depth; ++i) {
    Interner pre;
    for (const auto& a : atoms) pre(join_messages(p, a.path, std::min(i, a.path.size())));
    std::vector<std::string> msgs = p.rounds[i].messages.symbols();
    msgs.emplace_back(kNone);
    const std::size_t np = pre.symbols().size();
    const std::size_t nr = msgs.size();
    std::vector<double> mass(nx * ny * np * nr, 0.0);
    for (const auto& a : atoms) {
      const std::size_t r = a.path.size() > i ? a.path[i] : nr - 1;
      mass[((a.x * ny + a.y) * np + pre(join_messages(p, a.path, std::min(i, a.path.size())))) * nr + r] +=
          a.mass;
    }
    round_joints.emplace_back(
        std::vector<Alphabet>{xa, ya, Alphabet("P", pre.symbols()), Alphabet("R", std::move(msgs))},
        std::move(mass));
  }
  return {std::move(*joint), std::move(prefix_joints), std::move(round_joints), std::move(senders)};
}

CostBreakdown cost_breakdown(const TranscriptDistribution& td) {
  return {conditional_mutual_information(td.joint, {"X"}, {"M"}, {"Y"}, Slack::raw),
          conditional_mutual_information(td.joint, {"Y"}, {"M"}, {"X"}, Slack::raw)};
}

Bits information_cost(const TranscriptDistribution& td) { return cost_breakdown(td).total(); }

std::vector<Bits> verify_round_markov(const TranscriptDistribution& td) {
  std::vector<Bits> out;
  for (std::size_t i = 0; i < td.round_joints.size(); ++i) {
    const auto& j = td.round_joints[i];
    const bool alice = i < td.senders.size() ? td.senders[i] == Party::alice : i % 2 == 0;
    out.push_back(alice ? conditional_mutual_information(j, {"R"}, {"Y"}, {"X", "P"}, Slack::raw)
                        : conditional_mutual_information(j, {"R"}, {"X"}, {"Y", "P"}, Slack::raw));
  }
  return out;
}

std::vector<Bits> verify_monotonicity(const TranscriptDistribution& td) {
  std::vector<Bits> out;
  for (const auto& j : td.prefix_joints) {
    out.push_back(conditional_mutual_information(j, {"X"}, {"Y"}, {"P"}, Slack::raw));
  }
  return out;
}

bool non_increasing(const std::vector<Bits>& values, double slack) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1] + slack) return false;
  }
  return true;
}

std::pair<Bits, Bits> verify_correctness(const TranscriptDistribution& td) {
  return {conditional_entropy(td.joint, {"Z"}, {"X", "M"}),
          conditional_entropy(td.joint, {"Z"}, {"Y", "M"})};
}

Bits verify_appendix_chain(const TranscriptDistribution& td) {
  const Bits i_xy = mutual_information(td.joint, {"X"}, {"Y"}, Slack::raw);
  if (i_xy > tol::kValidation) {
    throw PreconditionUnmet("inputs are dependent: I(X;Y) = " + std::to_string(i_xy));
  }
  const auto [hx, hy] = verify_correctness(td);
  if (hx > tol::kValidation || hy > tol::kValidation) {
    throw PreconditionUnmet("protocol is not correct: H(Z|XM) = " + std::to_string(hx) +
                            ", H(Z|YM) = " + std::to_string(hy));
  }
  // The two sides share Z, so expand through entropies.
  const auto& j = td.joint;
  return entropy(j, {"X", "Z", "M"}) + entropy(j, {"Y", "Z", "M"}) - entropy(j, {"X", "Y", "Z", "M"}) -
         entropy(j, {"M"});
}

ChainReport hm_chain_check(const TranscriptDistribution& td) {
  const auto& j = td.joint;
  ChainReport r;
  r.h_m = entropy(j, {"M"});
  r.i_m_xy = mutual_information(j, {"M"}, {"X", "Y"}, Slack::raw);
  r.cost = information_cost(td);
  r.i_xy = mutual_information(j, {"X"}, {"Y"}, Slack::raw);
  r.i_xy_given_m = conditional_mutual_information(j, {"X"}, {"Y"}, {"M"}, Slack::raw);
  const double e = tol::kIdentity;
  r.holds = r.h_m >= r.i_m_xy - e && std::abs(r.i_m_xy - (r.cost + r.i_xy - r.i_xy_given_m)) <= e &&
            r.i_m_xy >= r.cost - e;
  return r;
}

std::vector<std::string> builtin_names() { return {"ternary_eq", "two_bit_eq_randomized"}; }

ProtocolSpec builtin(const std::string& name) {
  ProtocolSpec p;
  p.name = name;
  if (name == "ternary_eq") {
    // Alice sends X; Bob answers whether it equals Y.
    p.x = Alphabet::range("X", 3);
    p.y = Alphabet::range("Y", 3);
    RoundKernel r1{Party::alice, Alphabet::range("M1", 3), {}};
    for (std::size_t x = 0; x < 3; ++x) {
      std::vector<double> d(3, 0.0);
      d[x] = 1.0;
      r1.table[{x, {}}] = d;
    }
    RoundKernel r2{Party::bob, Alphabet::range("M2", 2), {}};
    for (std::size_t y = 0; y < 3; ++y) {
      for (std::size_t m = 0; m < 3; ++m) r2.table[{y, {m}}] = m == y ? std::vector<double>{0.0, 1.0}
                                                                      : std::vector<double>{1.0, 0.0};
    }
    p.rounds = {std::move(r1), std::move(r2)};
    return p;
  }
  if (name == "two_bit_eq_randomized") {
    // Alice names a random pair containing X; Bob answers 1 when Y is in the
    // pair and a fair coin otherwise; 0 ends the protocol. Then Alice sends X
    // and Bob sends Z.
    p.x = Alphabet::range("X", 4);
    p.y = Alphabet::range("Y", 4);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = a + 1; b < 4; ++b) {
        pairs.emplace_back(a, b);
        labels.push_back(std::to_string(a) + std::to_string(b));
      }
    }
    RoundKernel r1{Party::alice, Alphabet("M1", labels), {}};
    for (std::size_t x = 0; x < 4; ++x) {
      std::vector<double> d(pairs.size(), 0.0);
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (pairs[k].first == x || pairs[k].second == x) d[k] = 1.0 / 3.0;
      }
      r1.table[{x, {}}] = d;
    }
    RoundKernel r2{Party::bob, Alphabet::range("M2", 2), {}};
    RoundKernel r3{Party::alice, Alphabet::range("M3", 4), {}};
    RoundKernel r4{Party::bob, Alphabet::range("M4", 2), {}};
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      for (std::size_t y = 0; y < 4; ++y) {
        const bool in = pairs[k].first == y || pairs[k].second == y;
        r2.table[{y, {k}}] = in ? std::vector<double>{0.0, 1.0} : std::vector<double>{0.5, 0.5};
      }
      p.terminal.insert({k, 0});
      for (std::size_t x = 0; x < 4; ++x) {
        std::vector<double> d(4, 0.0);
        d[x] = 1.0;
        r3.table[{x, {k, 1}}] = d;
      }
      for (std::size_t y = 0; y < 4; ++y) {
        for (std::size_t m = 0; m < 4; ++m) {
          r4.table[{y, {k, 1, m}}] = m == y ? std::vector<double>{0.0, 1.0} : std::vector<double>{1.0, 0.0};
        }
      }
    }
    p.rounds = {std::move(r1), std::move(r2), std::move(r3), std::move(r4)};
    return p;
  }
  throw UnknownProtocol("no built-in protocol named '" + name + "'");
}

}  // namespace icb
