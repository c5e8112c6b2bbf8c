#pragma once

#include <vector>

#include "collsched/core.hpp"

namespace collsched {

// Number of job pairs ordered differently in the two schedules.
Cost kendall(const Schedule& tau, const Schedule& sigma);
// Sum over jobs of |pos(J, sigma) - pos(J, tau)|.
Cost spearman(const Schedule& tau, const Schedule& sigma);

// Per-job delay penalty for completion time c against due time d.
// Swap kinds (K, S) are not delay costs and raise InvalidSpec.
Cost delay_cost(CostKind kind, Length c, Length d);

// f(tau, sigma_a). Delay kinds use d_i = C_i(sigma_a), c_i = C_i(tau).
Cost agent_cost(CostKind kind, const Schedule& tau, const Schedule& sigma,
                std::span<const Length> lengths);

// Per-distinct-ranking costs of tau; entry a is weighted by
// profile.multiplicities()[a] during aggregation.
struct CostVector {
  CostSpec spec;
  std::vector<Cost> per_ranking;
  std::vector<std::int64_t> weights;

  std::int64_t total_weight() const;
  // One entry per agent.
  std::vector<Cost> expanded() const;
};

CostVector cost_vector(CostKind kind, const Profile& profile,
                       const Schedule& tau);

// Sum: sum_a f; Max: max_a f; Lp: sum_a f^p (the p-th power of the norm).
// Throws UnsupportedCombination for Max/Lp with cost L, CapacityError on
// overflow.
Value aggregate(const CostSpec& spec, const CostVector& costs);
Value aggregate(const CostSpec& spec, const Profile& profile,
                const Schedule& tau);

// Checks that (cost, aggregation) is in the supported capability matrix.
void check_supported(const CostSpec& spec);

// Overflow-checked integer power used by L_p aggregation.
Value checked_pow(Value base, int p);
Value checked_add(Value a, Value b);
Value checked_mul(Value a, Value b);

}  // namespace collsched
