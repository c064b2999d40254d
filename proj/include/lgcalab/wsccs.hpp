// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lgcalab/matrix.hpp"

namespace lgcalab::wsccs {

/// The only action in this fragment: one tick of the global clock.
inline constexpr const char* kTick = "tick";

struct Branch {
  double probability = 0.0;
  std::string action = kTick;
  std::string next;
};

/// Name = p1 : tick.Next1 + p2 : tick.Next2 + ...
struct AgentDef {
  std::string name;
  std::vector<Branch> branches;
};

/// A closed set of agent definitions. Construction checks that branch
/// probabilities lie in (0, 1] and sum to 1, that only the tick action is
/// used, and that every successor name is defined.
class AgentSystem {
 public:
  explicit AgentSystem(std::vector<AgentDef> defs);

  const AgentDef& get(const std::string& name) const;
  bool defines(const std::string& name) const { return defs_.count(name) != 0; }

 private:
  std::map<std::string, AgentDef> defs_;
};

/// Active = p : tick.Passive + (1 - p) : tick.Active;  Passive = 1 : tick.Passive.
AgentSystem ant_colony(double p);

/// Multiset of agents running in parallel (counts per agent name).
using ProcessState = std::map<std::string, int>;

int population(const ProcessState& state);

inline constexpr int kMaxExactAgents = 16;

/// One synchronous tick of the product of all agents in `state`. Expands
/// every combination of branch choices and multiplies their probabilities,
/// then merges combinations landing on the same multiset.
std::map<ProcessState, double> compose_step(const AgentSystem& system,
                                            const ProcessState& state);

/// Row-stochastic matrix; state k is "k agents active" for colony chains.
struct TransitionMatrix {
  std::vector<int> states;
  Matrix p;

  std::size_t size() const { return states.size(); }
};

/// Validates non-negativity and unit row sums (within 1e-12).
void validate(const TransitionMatrix& chain);

/// P[i -> k] = C(i, k) p^(i-k) (1-p)^k for k <= i, else 0; states 0..n.
TransitionMatrix colony_matrix(int n, double p);

/// Distribution over active counts after one compose_step from i active and
/// n - i passive ants.
std::vector<double> colony_step_by_expansion(int n, int active, double p);

struct Trajectories {
  int trials = 0;
  int steps = 0;
  std::vector<int> states;  // trials x (steps + 1), row-major

  int at(int trial, int t) const {
    return states[static_cast<std::size_t>(trial) * static_cast<std::size_t>(steps + 1) +
                  static_cast<std::size_t>(t)];
  }
};

/// Independent sample paths. Trial r draws its uniforms from (seed, r, t),
/// so the result does not depend on `workers`.
Trajectories simulate(const TransitionMatrix& chain, int start, int steps, int trials,
                      std::uint64_t seed, int workers = 1);

struct ChainAnalysis {
  std::vector<std::vector<double>> distribution;  // t = 0..steps
  std::vector<double> expected_hitting_time;      // per start state, to `target`
};

/// Exact distributions e_start P^t and expected steps to reach `target`
/// from every state (first-step analysis). Throws NumericalError if the
/// hitting-time system is singular.
ChainAnalysis analyze(const TransitionMatrix& chain, int start, int steps, int target = 0);

}  // namespace lgcalab::wsccs
