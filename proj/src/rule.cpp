#include "collsched/rule.hpp"

#include <charconv>

#include "collsched/rules_condorcet.hpp"
#include "collsched/rules_cost.hpp"

namespace collsched {

Rule Rule::parse(std::string_view name) {
  if (name == "pta-copeland") return {Kind::PtaCopeland, {}};
  if (name == "pta-minimax") return {Kind::PtaMinimax, {}};
  if (name == "psf-identity" || name == "psf") {
    return {Kind::Psf, {}, ScoreTransform::identity()};
  }
  if (name == "psf-square") return {Kind::Psf, {}, ScoreTransform::square()};

  const auto dash = name.find('-');
  if (dash == std::string_view::npos) {
    throw InvalidSpec("unknown rule '" + std::string(name) + "'");
  }
  const std::string_view agg = name.substr(0, dash);
  const auto cost = parse_cost_kind(name.substr(dash + 1));
  if (!cost) throw InvalidSpec("unknown cost in rule '" + std::string(name) + "'");
  CostSpec spec{*cost, Aggregation::Sum, 2};
  if (agg == "sum") {
    spec.aggregation = Aggregation::Sum;
  } else if (agg == "max") {
    spec.aggregation = Aggregation::Max;
  } else if (agg.size() > 1 && agg.front() == 'l') {
    spec.aggregation = Aggregation::Lp;
    const auto digits = agg.substr(1);
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), spec.p);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw InvalidSpec("malformed L_p rule '" + std::string(name) + "'");
    }
    spec.validate();
  } else {
    throw InvalidSpec("unknown aggregation in rule '" + std::string(name) + "'");
  }
  return from_cost(spec);
}

std::string Rule::name() const {
  switch (kind) {
    case Kind::Cost:
      return cost.name();
    case Kind::Psf:
      return "psf-" + h.name();
    case Kind::PtaCopeland:
      return "pta-copeland";
    case Kind::PtaMinimax:
      return "pta-minimax";
  }
  return "?";
}

Schedule apply_rule(const Rule& rule, const Profile& profile) {
  switch (rule.kind) {
    case Rule::Kind::Cost:
      return solve(profile, rule.cost).schedule;
    case Rule::Kind::Psf:
      return psf_rule(profile, rule.h);
    case Rule::Kind::PtaCopeland:
      return pta_copeland(profile);
    case Rule::Kind::PtaMinimax:
      return pta_iterative_minimax(profile);
  }
  throw InvalidSpec("unknown rule kind");
}

}  // namespace collsched
