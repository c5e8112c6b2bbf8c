#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "collsched/core.hpp"

namespace collsched {

enum class SolveMethod {
  BruteForce,
  SubsetDP,
  Assignment,
  ClosedForm,
  BranchAndBound
};
std::string_view to_string(SolveMethod method);

inline constexpr int kBruteForceMaxJobs = 10;
inline constexpr int kSubsetDpMaxJobs = 24;
inline constexpr int kBranchAndBoundMaxJobs = 20;

struct SolveReport {
  Schedule schedule;
  CostSpec spec;
  Value objective = 0;
  SolveMethod method = SolveMethod::BruteForce;
  std::int64_t nodes_explored = 0;
  std::chrono::nanoseconds elapsed{0};
  // Number of optimal schedules; only brute_force counts them (-1 otherwise).
  std::int64_t optimal_count = -1;
};

// Enumerates all m! schedules; ties go to the lexicographically smallest
// job-id sequence. m <= kBruteForceMaxJobs.
SolveReport brute_force(const Profile& profile, const CostSpec& spec);

// Sum aggregation of any cost whose per-job term depends only on the job's
// own completion time (T, U, L, E, D, SD) or position (S). Subset DP over
// prefixes; m <= kSubsetDpMaxJobs.
SolveReport solve_sum_delay_dp(const Profile& profile, CostKind kind);

// Sum-L: shortest processing time first, ties by id.
SolveReport solve_sum_lateness(const Profile& profile);

// Sum aggregation with all lengths equal: jobs are assigned to start slots by
// a minimum-cost perfect matching. Supports T, U, L, E, D, SD and S.
SolveReport solve_equal_size_assignment(const Profile& profile, CostKind kind);

// Sum-K (Kemeny) via subset DP. m <= kSubsetDpMaxJobs.
SolveReport solve_kemeny_dp(const Profile& profile);

// Max or L_p aggregation by depth-first branch-and-bound.
// m <= kBranchAndBoundMaxJobs; cost L is rejected.
SolveReport solve_minmax_bb(const Profile& profile, const CostSpec& spec);

// Picks the exact method for `spec` and re-verifies the objective. Sum-T on
// equal-length jobs additionally gets the Pareto swap pass.
SolveReport solve(const Profile& profile, const CostSpec& spec);

// Repeatedly swaps pairs ordered against a unanimous preference until none
// remain. Does not increase Sum-T when all lengths are equal.
Schedule pareto_swap_pass(Schedule schedule, const Profile& profile);

// Minimum-cost perfect matching on a square matrix (Hungarian method).
// Returns the column assigned to each row.
std::vector<int> min_cost_assignment(
    const std::vector<std::vector<Cost>>& cost, Cost* total = nullptr);

// Precedence-variable ILP in CPLEX LP text format. Sum aggregation only;
// costs K, S, T, U, L, E, D. SD and Max/L_p raise UnsupportedCombination.
std::string export_ilp(const Profile& profile, const CostSpec& spec);

}  // namespace collsched
