#pragma once

#include <string>
#include <string_view>

#include "collsched/core.hpp"
#include "collsched/rules_psf.hpp"

namespace collsched {

// A named, deterministic scheduling rule.
//   "<agg>-<cost>"  cost-minimizing rule, agg in {sum, max, l2, l3, ...}
//   "psf-identity", "psf-square"
//   "pta-copeland", "pta-minimax"
struct Rule {
  enum class Kind { Cost, Psf, PtaCopeland, PtaMinimax };
  Kind kind = Kind::Cost;
  CostSpec cost;
  ScoreTransform h = ScoreTransform::identity();

  static Rule parse(std::string_view name);
  static Rule from_cost(const CostSpec& spec) { return {Kind::Cost, spec}; }
  std::string name() const;
};

Schedule apply_rule(const Rule& rule, const Profile& profile);

}  // namespace collsched
