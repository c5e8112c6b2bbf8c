#include "collsched/rules_psf.hpp"

#include <algorithm>
#include <numeric>

namespace collsched {

ScoreTransform ScoreTransform::table(std::vector<Value> values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw InvalidSpec("score table must be strictly increasing");
    }
  }
  return ScoreTransform(Kind::Table, std::move(values));
}

Value ScoreTransform::operator()(Length x) const {
  switch (kind_) {
    case Kind::Identity:
      return x;
    case Kind::Square:
      return static_cast<Value>(x) * x;
    case Kind::Table:
      if (x < 0 || static_cast<std::size_t>(x) >= table_.size()) {
        throw InvalidSpec("score table undefined at " + std::to_string(x));
      }
      return table_[x];
  }
  return 0;
}

void ScoreTransform::validate(Length max_arg) const {
  if (kind_ == Kind::Table &&
      table_.size() <= static_cast<std::size_t>(max_arg)) {
    throw InvalidSpec("score table covers 0.." +
                      std::to_string(table_.size() - 1) + " but needs 0.." +
                      std::to_string(max_arg));
  }
}

std::string ScoreTransform::name() const {
  switch (kind_) {
    case Kind::Identity:
      return "identity";
    case Kind::Square:
      return "square";
    case Kind::Table:
      return "table";
  }
  return "?";
}

std::vector<Value> h_scores(const Profile& profile, const ScoreTransform& h) {
  h.validate(profile.total_length());
  std::vector<Value> score(profile.num_jobs(), 0);
  for (int a = 0; a < profile.num_distinct(); ++a) {
    const auto& due = profile.due_dates()[a];
    const auto weight = profile.multiplicities()[a];
    for (int j = 0; j < profile.num_jobs(); ++j) {
      // Work remaining after j completes.
      score[j] += h(profile.total_length() - due[j]) * weight;
    }
  }
  return score;
}

Value h_score(JobId job, const Profile& profile, const ScoreTransform& h) {
  if (job < 0 || job >= profile.num_jobs()) {
    throw InvalidInstance("unknown job id " + std::to_string(job));
  }
  return h_scores(profile, h)[job];
}

Schedule psf_rule(const Profile& profile, const ScoreTransform& h) {
  const auto score = h_scores(profile, h);
  std::vector<JobId> order(profile.num_jobs());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](JobId a, JobId b) {
    if (score[a] != score[b]) return score[a] > score[b];
    if (profile.length(a) != profile.length(b)) {
      return profile.length(a) < profile.length(b);
    }
    return a < b;
  });
  return Schedule(std::move(order));
}

}  // namespace collsched
