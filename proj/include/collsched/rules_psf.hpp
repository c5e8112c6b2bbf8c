#pragma once

#include <string>
#include <vector>

#include "collsched/core.hpp"

namespace collsched {

// Strictly increasing integer transform applied to the total length of the
// jobs an agent places after a job.
class ScoreTransform {
 public:
  enum class Kind { Identity, Square, Table };

  static ScoreTransform identity() { return ScoreTransform(Kind::Identity, {}); }
  static ScoreTransform square() { return ScoreTransform(Kind::Square, {}); }
  // h(x) = table[x]; must be strictly increasing.
  static ScoreTransform table(std::vector<Value> values);

  Value operator()(Length x) const;
  // Throws InvalidSpec unless h is defined and strictly increasing on
  // [0, max_arg].
  void validate(Length max_arg) const;
  std::string name() const;

 private:
  ScoreTransform(Kind kind, std::vector<Value> table)
      : kind_(kind), table_(std::move(table)) {}
  Kind kind_;
  std::vector<Value> table_;
};

// sum_a h(total length scheduled after `job` in sigma_a), weighted by
// multiplicity.
Value h_score(JobId job, const Profile& profile, const ScoreTransform& h);
std::vector<Value> h_scores(const Profile& profile, const ScoreTransform& h);

// Descending h-score; ties by ascending length, then ascending id.
Schedule psf_rule(const Profile& profile, const ScoreTransform& h);

}  // namespace collsched
