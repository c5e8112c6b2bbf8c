#pragma once

// Fixtures and brute-force oracles shared by the unit and acceptance tests.
// Oracles work from raw rankings and recompute everything from scratch.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "collsched/core.hpp"

namespace testing_support {

using collsched::CostKind;
using collsched::Length;
using collsched::Profile;
using collsched::Schedule;
using collsched::Value;

using Order = std::vector<int>;

inline Schedule S(std::initializer_list<int> one_based) {
  std::vector<int> order;
  for (int j : one_based) order.push_back(j - 1);
  return Schedule(order);
}

// Lengths 20, 5, 1; agent a ranks (J1,J3,J2), agent b ranks (J2,J1,J3).
inline Profile three_jobs_two_agents() {
  return Profile({20, 5, 1}, {S({1, 3, 2}), S({2, 1, 3})});
}

// Three unit jobs; five agents.
inline Profile unit_three_jobs_five_agents() {
  return Profile({1, 1, 1}, {S({1, 2, 3}), S({1, 3, 2}), S({1, 3, 2}),
                             S({2, 3, 1}), S({2, 3, 1})});
}

// Jobs L1, L2 of length ell and a short job Js of length 1.
inline Profile long_long_short(std::int64_t g1, std::int64_t g2, std::int64_t g3,
                               std::int64_t g4, Length ell) {
  return Profile({ell, ell, 1},
                 {S({1, 2, 3}), S({2, 1, 3}), S({3, 1, 2}), S({3, 2, 1})},
                 {g1, g2, g3, g4}, {"L1", "L2", "Js"});
}

// One entry per agent.
struct RawInstance {
  std::vector<Length> lengths;
  std::vector<Order> agents;

  Profile profile() const {
    std::vector<Schedule> pref;
    for (const auto& a : agents) pref.emplace_back(a);
    return Profile(lengths, pref);
  }
};

inline RawInstance random_instance(std::mt19937_64& gen, int m, int n,
                                   Length p_max) {
  RawInstance r;
  std::uniform_int_distribution<Length> len(1, p_max);
  for (int j = 0; j < m; ++j) r.lengths.push_back(len(gen));
  for (int a = 0; a < n; ++a) {
    Order o(m);
    std::iota(o.begin(), o.end(), 0);
    std::shuffle(o.begin(), o.end(), gen);
    r.agents.push_back(o);
  }
  return r;
}

inline std::vector<Length> oracle_completion(const Order& order,
                                             const std::vector<Length>& p) {
  std::vector<Length> c(p.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    Length t = 0;
    for (std::size_t i = 0; i <= k; ++i) t += p[order[i]];
    c[order[k]] = t;
  }
  return c;
}

inline int oracle_pos(const Order& order, int job) {
  return static_cast<int>(std::find(order.begin(), order.end(), job) - order.begin());
}

inline Value oracle_agent_cost(CostKind kind, const Order& tau, const Order& sigma,
                               const std::vector<Length>& p) {
  const int m = static_cast<int>(tau.size());
  Value total = 0;
  if (kind == CostKind::K) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i != j && oracle_pos(tau, i) < oracle_pos(tau, j) &&
            oracle_pos(sigma, i) > oracle_pos(sigma, j)) {
          ++total;
        }
      }
    }
    return total;
  }
  if (kind == CostKind::S) {
    for (int j = 0; j < m; ++j) {
      total += std::abs(oracle_pos(tau, j) - oracle_pos(sigma, j));
    }
    return total;
  }
  const auto c = oracle_completion(tau, p);
  const auto d = oracle_completion(sigma, p);
  for (int j = 0; j < m; ++j) {
    const Value diff = c[j] - d[j];
    switch (kind) {
      case CostKind::T: total += diff > 0 ? diff : 0; break;
      case CostKind::U: total += diff > 0 ? 1 : 0; break;
      case CostKind::L: total += diff; break;
      case CostKind::E: total += diff < 0 ? -diff : 0; break;
      case CostKind::D: total += diff < 0 ? -diff : diff; break;
      case CostKind::SD: total += diff * diff; break;
      default: break;
    }
  }
  return total;
}

enum class Agg { Sum, Max, Lp };

inline Value oracle_objective(const RawInstance& inst, CostKind kind, Agg agg,
                              int p, const Order& tau) {
  Value acc = 0;
  for (const auto& sigma : inst.agents) {
    const Value f = oracle_agent_cost(kind, tau, sigma, inst.lengths);
    if (agg == Agg::Sum) {
      acc += f;
    } else if (agg == Agg::Max) {
      acc = std::max(acc, f);
    } else {
      Value pw = 1;
      for (int i = 0; i < p; ++i) pw *= f;
      acc += pw;
    }
  }
  return acc;
}

struct OracleOptimum {
  Value value = 0;
  Order best;  // lexicographically smallest optimum
  std::int64_t count = 0;
};

inline OracleOptimum oracle_optimum(const RawInstance& inst, CostKind kind,
                                    Agg agg, int p = 2) {
  Order tau(inst.lengths.size());
  std::iota(tau.begin(), tau.end(), 0);
  OracleOptimum o;
  bool first = true;
  do {
    const Value v = oracle_objective(inst, kind, agg, p, tau);
    if (first || v < o.value) {
      o = {v, tau, 1};
      first = false;
    } else if (v == o.value) {
      ++o.count;
    }
  } while (std::next_permutation(tau.begin(), tau.end()));
  return o;
}

// Agents putting k before l, counted directly from the rankings.
inline std::int64_t oracle_support(const RawInstance& inst, int k, int l) {
  std::int64_t s = 0;
  for (const auto& a : inst.agents) s += oracle_pos(a, k) < oracle_pos(a, l);
  return s;
}

// "At least p_k / (p_k + p_l) of the n agents": s / n >= p_k / (p_k + p_l).
inline bool oracle_pta_beats(const RawInstance& inst, int k, int l) {
  const std::int64_t n = static_cast<std::int64_t>(inst.agents.size());
  const std::int64_t s = oracle_support(inst, k, l);
  const Length pk = inst.lengths[k], pl = inst.lengths[l];
  return static_cast<Value>(s) * (pk + pl) >= static_cast<Value>(n) * pk;
}

// Every decided beat relation (k beats l, l does not beat k) is honoured.
inline bool oracle_pta_consistent_on_decided(const RawInstance& inst,
                                             const Order& tau) {
  const int m = static_cast<int>(inst.lengths.size());
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      if (k == l) continue;
      if (oracle_pta_beats(inst, k, l) && !oracle_pta_beats(inst, l, k) &&
          oracle_pos(tau, k) > oracle_pos(tau, l)) {
        return false;
      }
    }
  }
  return true;
}

// Does any order honour all decided pairs? Checked by enumeration.
inline bool oracle_pta_decided_order_exists(const RawInstance& inst) {
  Order tau(inst.lengths.size());
  std::iota(tau.begin(), tau.end(), 0);
  do {
    if (oracle_pta_consistent_on_decided(inst, tau)) return true;
  } while (std::next_permutation(tau.begin(), tau.end()));
  return false;
}

inline Order order_of(const Schedule& s) { return s.order(); }

inline RawInstance raw_of(const Profile& profile) {
  RawInstance r;
  r.lengths = profile.lengths();
  for (int a = 0; a < profile.num_distinct(); ++a) {
    for (std::int64_t c = 0; c < profile.multiplicities()[a]; ++c) {
      r.agents.push_back(profile.preferred()[a].order());
    }
  }
  return r;
}

}  // namespace testing_support
