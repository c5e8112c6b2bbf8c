#include "collsched/rules_condorcet.hpp"

#include <algorithm>
#include <numeric>

namespace collsched {
namespace {

bool before_by_length_then_id(const Profile& profile, JobId a, JobId b) {
  if (profile.length(a) != profile.length(b)) {
    return profile.length(a) < profile.length(b);
  }
  return a < b;
}

}  // namespace

PtaTournament::PtaTournament(const Profile& profile)
    : support_(profile.num_jobs(),
               std::vector<std::int64_t>(profile.num_jobs(), 0)),
      lengths_(profile.lengths()),
      n_(profile.num_agents()) {
  const int m = profile.num_jobs();
  for (int a = 0; a < profile.num_distinct(); ++a) {
    const auto& order = profile.preferred()[a].order();
    const auto w = profile.multiplicities()[a];
    for (int x = 0; x < m; ++x) {
      auto& row = support_[order[x]];
      for (int y = x + 1; y < m; ++y) row[order[y]] += w;
    }
  }
}

bool PtaTournament::beats(JobId k, JobId l) const {
  if (k == l) return false;
  return static_cast<Value>(support_[k][l]) * (lengths_[k] + lengths_[l]) >=
         static_cast<Value>(n_) * lengths_[k];
}

int PtaTournament::copeland_score(JobId k) const {
  int score = 0;
  for (int l = 0; l < num_jobs(); ++l) score += beats(k, l) ? 1 : 0;
  return score;
}

PtaTournament::Defeat PtaTournament::defeat(JobId k, JobId l) const {
  const Value den = lengths_[k] + lengths_[l];
  const Value num = static_cast<Value>(n_) * lengths_[k] -
                    static_cast<Value>(support_[k][l]) * den;
  return {std::max<Value>(0, num), den};
}

PtaTournament build_tournament(const Profile& profile) {
  return PtaTournament(profile);
}

std::vector<int> pta_copeland_scores(const Profile& profile) {
  const PtaTournament t(profile);
  std::vector<int> score(profile.num_jobs());
  for (int k = 0; k < profile.num_jobs(); ++k) score[k] = t.copeland_score(k);
  return score;
}

Schedule pta_copeland(const Profile& profile) {
  const auto score = pta_copeland_scores(profile);
  std::vector<JobId> order(profile.num_jobs());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](JobId a, JobId b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return before_by_length_then_id(profile, a, b);
  });
  return Schedule(std::move(order));
}

Schedule pta_iterative_minimax(const Profile& profile) {
  const PtaTournament t(profile);
  const int m = profile.num_jobs();
  // Pairwise counts are unaffected by deleting other jobs from the rankings,
  // so each round only restricts the opponents to the remaining jobs.
  std::vector<JobId> remaining(m);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<JobId> order;
  while (!remaining.empty()) {
    std::size_t pick = 0;
    PtaTournament::Defeat pick_defeat;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      const JobId k = remaining[i];
      PtaTournament::Defeat worst{0, 1};
      for (JobId l : remaining) {
        if (l == k) continue;
        const auto d = t.defeat(k, l);
        if (worst < d) worst = d;
      }
      if (i == 0 || worst < pick_defeat ||
          (worst == pick_defeat &&
           before_by_length_then_id(profile, k, remaining[pick]))) {
        pick = i;
        pick_defeat = worst;
      }
    }
    order.push_back(remaining[pick]);
    remaining.erase(remaining.begin() + pick);
  }
  return Schedule(std::move(order));
}

ConsistencyReport is_pta_condorcet_consistent(const Schedule& schedule,
                                              const Profile& profile) {
  if (schedule.size() != profile.num_jobs()) {
    throw InvalidInstance("schedule does not match the instance's job set");
  }
  const PtaTournament t(profile);
  ConsistencyReport r;
  const int m = profile.num_jobs();
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      if (k == l) continue;
      if (t.mutual(k, l)) {
        if (k < l) r.mutual.emplace_back(k, l);
      } else if (t.beats(k, l) && schedule.precedes(l, k)) {
        r.violated.emplace_back(k, l);
      }
    }
  }
  r.consistent = r.violated.empty() && r.mutual.empty();
  return r;
}

std::optional<Schedule> pta_consistent_schedule_exists(const Profile& profile) {
  const PtaTournament t(profile);
  const int m = profile.num_jobs();
  std::vector<int> indegree(m, 0);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      if (t.decided(k, l)) ++indegree[l];
    }
  }
  std::vector<bool> placed(m, false);
  std::vector<JobId> order;
  for (int step = 0; step < m; ++step) {
    int next = -1;
    for (int j = 0; j < m; ++j) {
      if (placed[j] || indegree[j] != 0) continue;
      if (next < 0 || before_by_length_then_id(profile, j, next)) next = j;
    }
    if (next < 0) return std::nullopt;
    placed[next] = true;
    order.push_back(next);
    for (int l = 0; l < m; ++l) {
      if (t.decided(next, l)) --indegree[l];
    }
  }
  return Schedule(std::move(order));
}

}  // namespace collsched
