#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "collsched/core.hpp"
#include "collsched/rule.hpp"

namespace collsched {

enum class Axiom { Pareto, Reinforcement, PtaCondorcet };
std::string_view to_string(Axiom axiom);

struct AxiomReport {
  Axiom axiom = Axiom::Pareto;
  bool holds = true;
  // Violated pairs (k, l): k should precede l but does not.
  std::vector<std::pair<JobId, JobId>> pairs;
  // Human-readable counterexamples; nonempty iff !holds.
  std::vector<std::string> witnesses;

  // Randomized harness counters.
  std::int64_t trials = 0;
  std::int64_t checked = 0;  // trials where the premise held
  std::int64_t skipped = 0;  // trials with tied optima
};

// Every pair all agents order one way must be ordered that way in `schedule`.
AxiomReport check_pareto(const Schedule& schedule, const Profile& profile);

// Strict PTA Condorcet consistency; mutual pairs count as witnesses.
AxiomReport check_pta_condorcet(const Schedule& schedule, const Profile& profile);

// Decided pairs scheduled against the beat relation, over C(m, 2).
Rational paradox_rate(const Schedule& schedule, const Profile& profile);

// Samples pairs of electorates over shared jobs (2..max_jobs jobs). Whenever
// the rule picks the same schedule for both, the union must get it too.
// Cost rules are only judged when all three optima are unique (checked by
// brute force, so max_jobs <= 6 is enforced for them).
AxiomReport test_reinforcement(const Rule& rule, int max_jobs,
                               std::int64_t trials, std::uint64_t seed);

enum class ReinforcementOutcome { Holds, Violated, Disagree, Tied };

// One reinforcement check on a concrete pair of electorates. Disagree: the
// rule picks different schedules for the two electorates, so nothing is
// asserted.
ReinforcementOutcome check_reinforcement(const Rule& rule, const Profile& first,
                                         const Profile& second);

}  // namespace collsched
