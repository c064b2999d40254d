// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgcalab/wsccs.hpp"

#include <cmath>
#include <numeric>

#include "lgcalab/detail/parallel.hpp"
#include "lgcalab/errors.hpp"
#include "lgcalab/rng.hpp"

namespace lgcalab::wsccs {

namespace {

// Cap on branch combinations enumerated by compose_step.
constexpr double kMaxCombinations = 1 << 24;

double binomial_term(int i, int k, double p) {
  // C(i, k) p^(i-k) (1-p)^k
  if (i <= 1000) {
    double c = 1.0;
    for (int j = 1; j <= k; ++j) c = c * (i - k + j) / j;
    return c * std::pow(p, i - k) * std::pow(1.0 - p, k);
  }
  const double log_c = std::lgamma(i + 1.0) - std::lgamma(k + 1.0) - std::lgamma(i - k + 1.0);
  return std::exp(log_c + (i - k) * std::log(p) + k * std::log1p(-p));
}

}  // namespace

AgentSystem::AgentSystem(std::vector<AgentDef> defs) {
  for (auto& d : defs) {
    require(!d.name.empty(), "agent definition with empty name");
    require(!d.branches.empty(), "agent " + d.name + " has no branches");
    const std::string name = d.name;
    require(defs_.emplace(name, std::move(d)).second, "agent " + name + " defined twice");
  }
  for (const auto& [name, def] : defs_) {
    double sum = 0.0;
    for (const auto& b : def.branches) {
      require(b.probability > 0.0 && b.probability <= 1.0,
              "agent " + name + ": branch probability outside (0, 1]");
      require(b.action == kTick, "agent " + name + ": only the tick action is supported");
      require(defines(b.next), "agent " + name + ": successor " + b.next + " is undefined");
      sum += b.probability;
    }
    require(std::abs(sum - 1.0) <= 1e-12,
            "agent " + name + ": branch probabilities do not sum to 1");
  }
}

const AgentDef& AgentSystem::get(const std::string& name) const {
  const auto it = defs_.find(name);
  require(it != defs_.end(), "undefined agent name: " + name);
  return it->second;
}

AgentSystem ant_colony(double p) {
  require(p > 0.0 && p < 1.0, "colony: p must lie in (0, 1)");
  return AgentSystem({
      {"Active", {{p, kTick, "Passive"}, {1.0 - p, kTick, "Active"}}},
      {"Passive", {{1.0, kTick, "Passive"}}},
  });
}

int population(const ProcessState& state) {
  int n = 0;
  for (const auto& [name, count] : state) n += count;
  return n;
}

std::map<ProcessState, double> compose_step(const AgentSystem& system,
                                            const ProcessState& state) {
  std::vector<const AgentDef*> agents;
  double combinations = 1.0;
  for (const auto& [name, count] : state) {
    require(count >= 0, "process state: negative agent count");
    const AgentDef& def = system.get(name);
    for (int c = 0; c < count; ++c) {
      agents.push_back(&def);
      combinations *= static_cast<double>(def.branches.size());
    }
  }
  require(static_cast<int>(agents.size()) <= kMaxExactAgents,
          "compose_step: exact expansion is limited to 16 agents");
  require(combinations <= kMaxCombinations, "compose_step: too many branch combinations");

  std::map<ProcessState, double> out;
  std::vector<std::size_t> choice(agents.size(), 0);
  while (true) {
    double prob = 1.0;
    ProcessState next;
    for (std::size_t a = 0; a < agents.size(); ++a) {
      const Branch& b = agents[a]->branches[choice[a]];
      prob *= b.probability;
      ++next[b.next];
    }
    out[next] += prob;
    // Mixed-radix increment over branch indices.
    std::size_t a = 0;
    while (a < agents.size() && ++choice[a] == agents[a]->branches.size()) choice[a++] = 0;
    if (a == agents.size()) break;
  }
  return out;
}

void validate(const TransitionMatrix& chain) {
  require(chain.p.square() && chain.p.rows() == chain.states.size() && !chain.states.empty(),
          "transition matrix: shape does not match the state list");
  for (std::size_t i = 0; i < chain.p.rows(); ++i) {
    double sum = 0.0;
    for (double v : chain.p.row(i)) {
      require(v >= 0.0, "transition matrix: negative entry");
      sum += v;
    }
    require(std::abs(sum - 1.0) <= 1e-12, "transition matrix: row does not sum to 1");
  }
}

TransitionMatrix colony_matrix(int n, double p) {
  require(n >= 1, "colony: n must be >= 1");
  require(p > 0.0 && p < 1.0, "colony: p must lie in (0, 1)");
  const auto size = static_cast<std::size_t>(n) + 1;
  TransitionMatrix chain{std::vector<int>(size), Matrix(size, size)};
  std::iota(chain.states.begin(), chain.states.end(), 0);
  for (int i = 0; i <= n; ++i) {
    auto row = chain.p.row(static_cast<std::size_t>(i));
    double sum = 0.0;
    for (int k = 0; k <= i; ++k) sum += row[static_cast<std::size_t>(k)] = binomial_term(i, k, p);
    // lgamma terms carry ~1e-13 relative error; restore the unit row sum.
    if (i > 1000)
      for (int k = 0; k <= i; ++k) row[static_cast<std::size_t>(k)] /= sum;
  }
  return chain;
}

std::vector<double> colony_step_by_expansion(int n, int active, double p) {
  require(active >= 0 && active <= n, "colony: active count outside [0, n]");
  ProcessState s;
  if (active > 0) s["Active"] = active;
  if (n - active > 0) s["Passive"] = n - active;
  std::vector<double> dist(static_cast<std::size_t>(n) + 1, 0.0);
  for (const auto& [next, prob] : compose_step(ant_colony(p), s)) {
    const auto it = next.find("Active");
    dist[static_cast<std::size_t>(it == next.end() ? 0 : it->second)] += prob;
  }
  return dist;
}

Trajectories simulate(const TransitionMatrix& chain, int start, int steps, int trials,
                      std::uint64_t seed, int workers) {
  validate(chain);
  const auto size = chain.size();
  require(start >= 0 && static_cast<std::size_t>(start) < size, "simulate: start state out of range");
  require(steps >= 0, "simulate: steps must be non-negative");
  require(trials >= 1, "simulate: trials must be >= 1");

  Matrix cdf = chain.p;
  for (std::size_t i = 0; i < size; ++i) {
    auto r = cdf.row(i);
    std::partial_sum(r.begin(), r.end(), r.begin());
  }
  Trajectories out;
  out.trials = trials;
  out.steps = steps;
  out.states.resize(static_cast<std::size_t>(trials) * static_cast<std::size_t>(steps + 1));
  const CounterRng rng(seed);

  detail::parallel_rows(trials, workers, [&](int r0, int r1) {
    for (int r = r0; r < r1; ++r) {
      int* path = out.states.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(steps + 1);
      path[0] = start;
      for (int t = 0; t < steps; ++t) {
        const double u = rng.uniform(Stream::ChainTrajectory, static_cast<std::uint32_t>(r),
                                     static_cast<std::uint32_t>(t), 0);
        const auto row = cdf.row(static_cast<std::size_t>(path[t]));
        std::size_t k = 0;
        while (k + 1 < size && u >= row[k]) ++k;
        // Never land on a zero-probability state through roundoff in the cdf.
        while (k > 0 && chain.p(static_cast<std::size_t>(path[t]), k) == 0.0) --k;
        path[t + 1] = static_cast<int>(k);
      }
    }
  });
  return out;
}

ChainAnalysis analyze(const TransitionMatrix& chain, int start, int steps, int target) {
  validate(chain);
  const std::size_t n = chain.size();
  require(start >= 0 && static_cast<std::size_t>(start) < n, "analyze: start state out of range");
  require(target >= 0 && static_cast<std::size_t>(target) < n, "analyze: target state out of range");
  require(steps >= 0, "analyze: steps must be non-negative");

  ChainAnalysis out;
  std::vector<double> dist(n, 0.0);
  dist[static_cast<std::size_t>(start)] = 1.0;
  out.distribution.push_back(dist);
  for (int t = 0; t < steps; ++t) {
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) next[j] += dist[i] * chain.p(i, j);
    }
    dist = std::move(next);
    out.distribution.push_back(dist);
  }

  // (I - Q) h = 1 over the non-target states, Gaussian elimination with
  // partial pivoting.
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (i != static_cast<std::size_t>(target)) idx.push_back(i);
  const std::size_t m = idx.size();
  Matrix a(m, m + 1);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) a(r, c) = (r == c ? 1.0 : 0.0) - chain.p(idx[r], idx[c]);
    a(r, m) = 1.0;
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) < 1e-13) {
      throw NumericalError("analyze: hitting-time system is singular (target unreachable)");
    }
    if (piv != col)
      for (std::size_t c = 0; c <= m; ++c) std::swap(a(piv, c), a(col, c));
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (std::size_t c = col; c <= m; ++c) a(r, c) -= f * a(col, c);
    }
  }
  out.expected_hitting_time.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) out.expected_hitting_time[idx[r]] = a(r, m) / a(r, r);
  return out;
}

}  // namespace lgcalab::wsccs
