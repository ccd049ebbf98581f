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

// Finite interactive protocols with private randomness, their exact
// transcript distributions and the information-theoretic checks on them.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "icbound/function.hpp"
#include "icbound/pmf.hpp"

namespace icb {

enum class Party { alice, bob };

/// Message prefix as per-round message indices.
using Prefix = std::vector<std::size_t>;

/// One round: the sender draws a message from a distribution that depends
/// only on its own input and the transcript so far.
struct RoundKernel {
  Party sender = Party::alice;
  Alphabet messages = Alphabet("M", {"0"});
  /// (sender input index, prefix) -> distribution over `messages`.
  std::map<std::pair<std::size_t, Prefix>, std::vector<double>> table;
};

struct ProtocolSpec {
  std::string name;
  Alphabet x = Alphabet("X", {"0"});
  Alphabet y = Alphabet("Y", {"0"});
  std::vector<RoundKernel> rounds;
  /// Prefixes after which the protocol stops early.
  std::set<Prefix> terminal;
};

inline constexpr std::size_t kMaxRounds = 16;
inline constexpr std::size_t kMaxMessages = 8;

/// Checks the round structure: senders alternate starting with Alice, at
/// most kMaxRounds rounds (DepthExceeded) and kMaxMessages messages per
/// round (TooLarge).
void check_structure(const ProtocolSpec& p);

struct TranscriptDistribution {
  /// Over (X, Y, Z, M); M atoms are the round messages joined by "." ("-"
  /// for the empty transcript).
  JointPMF joint;
  /// prefix_joints[i] is over (X, Y, P) with P the first i messages, for
  /// i = 0..rounds.
  std::vector<JointPMF> prefix_joints;
  /// round_joints[i] is over (X, Y, P, R): the prefix before round i + 1 and
  /// its message, R = "·" when the transcript already ended.
  std::vector<JointPMF> round_joints;
  std::vector<Party> senders;
};

/// Exact forward enumeration. Throws DepthExceeded, TooLarge,
/// KernelNotStochastic (missing, negative or non-normalized distribution at
/// a reachable state, tolerance 1e-12) and InconsistentInputs when the pmf's
/// alphabets do not match the protocol's.
TranscriptDistribution transcript_distribution(const ProtocolSpec& p, const JointPMF& pmf_xy,
                                               const FunctionSpec& f);

struct CostBreakdown {
  Bits x_given_y = 0.0;  // I(X;M|Y)
  Bits y_given_x = 0.0;  // I(Y;M|X)
  Bits total() const { return x_given_y + y_given_x; }
};

CostBreakdown cost_breakdown(const TranscriptDistribution& td);
/// I(X;M|Y) + I(Y;M|X).
Bits information_cost(const TranscriptDistribution& td);

/// Per round, I(M_i; Y | X, M^{i-1}) for Alice's rounds and
/// I(M_i; X | Y, M^{i-1}) for Bob's.
std::vector<Bits> verify_round_markov(const TranscriptDistribution& td);

/// I(X;Y|M^i) for i = 0..rounds.
std::vector<Bits> verify_monotonicity(const TranscriptDistribution& td);
bool non_increasing(const std::vector<Bits>& values, double slack = tol::kIdentity);

/// (H(Z|X,M), H(Z|Y,M)).
std::pair<Bits, Bits> verify_correctness(const TranscriptDistribution& td);

/// I(XZ; YZ | M). Throws PreconditionUnmet unless I(X;Y) <= 1e-9 and both
/// correctness entropies are <= 1e-9.
Bits verify_appendix_chain(const TranscriptDistribution& td);

struct ChainReport {
  Bits h_m = 0.0;
  Bits i_m_xy = 0.0;        // I(M;XY)
  Bits cost = 0.0;          // I(X;M|Y) + I(Y;M|X)
  Bits i_xy = 0.0;          // I(X;Y)
  Bits i_xy_given_m = 0.0;  // I(X;Y|M)
  /// H(M) >= I(M;XY), I(M;XY) = cost + I(X;Y) - I(X;Y|M), I(M;XY) >= cost,
  /// each within 1e-12.
  bool holds = false;
};
ChainReport hm_chain_check(const TranscriptDistribution& td);

/// "ternary_eq" or "two_bit_eq_randomized"; throws UnknownProtocol.
ProtocolSpec builtin(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace icb
