#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "collsched/core.hpp"

namespace collsched {

// Pairwise support counts with the processing-time-aware majority threshold:
// J_k beats J_l iff support(k, l) * (p_k + p_l) >= n * p_k, i.e. at least a
// p_k / (p_k + p_l) share of the agents put J_k first. Exact integers only.
class PtaTournament {
 public:
  explicit PtaTournament(const Profile& profile);

  int num_jobs() const { return static_cast<int>(lengths_.size()); }
  std::int64_t num_agents() const { return n_; }
  std::int64_t support(JobId k, JobId l) const { return support_[k][l]; }
  Length length(JobId j) const { return lengths_[j]; }

  bool beats(JobId k, JobId l) const;
  // Both beat each other: the split sits exactly on the threshold.
  bool mutual(JobId k, JobId l) const { return beats(k, l) && beats(l, k); }
  // k beats l and l does not beat k.
  bool decided(JobId k, JobId l) const { return beats(k, l) && !beats(l, k); }

  // Number of jobs k beats.
  int copeland_score(JobId k) const;

  // Defeat of k against l is max(0, n p_k - n_k (p_k + p_l)) / (p_k + p_l).
  struct Defeat {
    Value num = 0;
    Value den = 1;
    friend bool operator<(const Defeat& a, const Defeat& b) {
      return a.num * b.den < b.num * a.den;
    }
    friend bool operator==(const Defeat& a, const Defeat& b) {
      return a.num * b.den == b.num * a.den;
    }
  };
  Defeat defeat(JobId k, JobId l) const;

 private:
  std::vector<std::vector<std::int64_t>> support_;
  std::vector<Length> lengths_;
  std::int64_t n_ = 0;
};

PtaTournament build_tournament(const Profile& profile);

// Descending Copeland score; ties by ascending length, then id.
Schedule pta_copeland(const Profile& profile);
std::vector<int> pta_copeland_scores(const Profile& profile);

// Repeatedly schedules the remaining job whose worst defeat against the other
// remaining jobs is smallest; ties by ascending length, then id.
Schedule pta_iterative_minimax(const Profile& profile);

struct ConsistencyReport {
  // True iff every beat relation is honoured; impossible when a mutual pair
  // exists.
  bool consistent = false;
  // Decided pairs (k, l) with l scheduled before k.
  std::vector<std::pair<JobId, JobId>> violated;
  // Mutually beaten pairs (k < l); no schedule can satisfy these.
  std::vector<std::pair<JobId, JobId>> mutual;

  bool consistent_on_decided() const { return violated.empty(); }
};

ConsistencyReport is_pta_condorcet_consistent(const Schedule& schedule,
                                              const Profile& profile);

// Topological order of the decided beat relation (smallest length, then id,
// first among available jobs), or nullopt when it is cyclic.
std::optional<Schedule> pta_consistent_schedule_exists(const Profile& profile);

}  // namespace collsched
