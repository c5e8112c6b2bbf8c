#include "collsched/costs.hpp"

#include <algorithm>
#include <cstdlib>

namespace collsched {
namespace {

void require_same_jobs(const Schedule& tau, const Schedule& sigma) {
  if (tau.size() != sigma.size()) {
    throw InvalidInstance("schedules cover different job sets (" +
                          std::to_string(tau.size()) + " vs " +
                          std::to_string(sigma.size()) + " jobs)");
  }
}

}  // namespace

Cost kendall(const Schedule& tau, const Schedule& sigma) {
  require_same_jobs(tau, sigma);
  // Inversions of sigma's positions read in tau's order.
  const auto& pos = sigma.positions();
  const int m = tau.size();
  Cost inversions = 0;
  for (int i = 0; i < m; ++i) {
    const int pi = pos[tau[i]];
    for (int j = i + 1; j < m; ++j) {
      if (pos[tau[j]] < pi) ++inversions;
    }
  }
  return inversions;
}

Cost spearman(const Schedule& tau, const Schedule& sigma) {
  require_same_jobs(tau, sigma);
  Cost total = 0;
  for (int j = 0; j < tau.size(); ++j) {
    total += std::abs(tau.positions()[j] - sigma.positions()[j]);
  }
  return total;
}

Cost delay_cost(CostKind kind, Length c, Length d) {
  const Cost diff = c - d;
  switch (kind) {
    case CostKind::T:
      return std::max<Cost>(0, diff);
    case CostKind::U:
      return diff > 0 ? 1 : 0;
    case CostKind::L:
      return diff;
    case CostKind::E:
      return std::max<Cost>(0, -diff);
    case CostKind::D:
      return diff < 0 ? -diff : diff;
    case CostKind::SD:
      return diff * diff;
    case CostKind::K:
    case CostKind::S:
      break;
  }
  throw InvalidSpec(std::string(to_string(kind)) + " is not a delay cost");
}

Cost agent_cost(CostKind kind, const Schedule& tau, const Schedule& sigma,
                std::span<const Length> lengths) {
  if (kind == CostKind::K) return kendall(tau, sigma);
  if (kind == CostKind::S) return spearman(tau, sigma);
  require_same_jobs(tau, sigma);
  const auto c = completion_times(tau, lengths);
  const auto d = completion_times(sigma, lengths);
  Cost total = 0;
  for (std::size_t j = 0; j < c.size(); ++j) total += delay_cost(kind, c[j], d[j]);
  return total;
}

std::int64_t CostVector::total_weight() const {
  std::int64_t n = 0;
  for (auto w : weights) n += w;
  return n;
}

std::vector<Cost> CostVector::expanded() const {
  std::vector<Cost> out;
  out.reserve(total_weight());
  for (std::size_t a = 0; a < per_ranking.size(); ++a) {
    out.insert(out.end(), weights[a], per_ranking[a]);
  }
  return out;
}

CostVector cost_vector(CostKind kind, const Profile& profile,
                       const Schedule& tau) {
  if (tau.size() != profile.num_jobs()) {
    throw InvalidInstance("schedule does not match the instance's job set");
  }
  CostVector v;
  v.spec.cost = kind;
  v.weights = profile.multiplicities();
  v.per_ranking.reserve(profile.num_distinct());
  if (is_swap_cost(kind)) {
    for (const Schedule& sigma : profile.preferred()) {
      v.per_ranking.push_back(kind == CostKind::K ? kendall(tau, sigma)
                                                  : spearman(tau, sigma));
    }
    return v;
  }
  const auto c = completion_times(tau, profile.lengths());
  for (const auto& d : profile.due_dates()) {
    Cost total = 0;
    for (std::size_t j = 0; j < c.size(); ++j) total += delay_cost(kind, c[j], d[j]);
    v.per_ranking.push_back(total);
  }
  return v;
}

Value checked_add(Value a, Value b) {
  Value r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw CapacityError("objective overflows 128-bit arithmetic");
  }
  return r;
}

Value checked_mul(Value a, Value b) {
  Value r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw CapacityError("objective overflows 128-bit arithmetic");
  }
  return r;
}

Value checked_pow(Value base, int p) {
  Value r = 1;
  for (int i = 0; i < p; ++i) r = checked_mul(r, base);
  return r;
}

void check_supported(const CostSpec& spec) {
  spec.validate();
  if (spec.cost == CostKind::L && spec.aggregation != Aggregation::Sum) {
    throw UnsupportedCombination(
        "cost L can be negative; only the sum aggregation is supported for it");
  }
}

Value aggregate(const CostSpec& spec, const CostVector& costs) {
  check_supported(spec);
  switch (spec.aggregation) {
    case Aggregation::Sum: {
      Value total = 0;
      for (std::size_t a = 0; a < costs.per_ranking.size(); ++a) {
        total += static_cast<Value>(costs.per_ranking[a]) * costs.weights[a];
      }
      return total;
    }
    case Aggregation::Max: {
      Cost best = 0;
      for (Cost c : costs.per_ranking) best = std::max(best, c);
      return best;
    }
    case Aggregation::Lp: {
      Value total = 0;
      for (std::size_t a = 0; a < costs.per_ranking.size(); ++a) {
        total = checked_add(
            total, checked_mul(checked_pow(costs.per_ranking[a], spec.p),
                               costs.weights[a]));
      }
      return total;
    }
  }
  return 0;
}

Value aggregate(const CostSpec& spec, const Profile& profile,
                const Schedule& tau) {
  check_supported(spec);
  return aggregate(spec, cost_vector(spec.cost, profile, tau));
}

}  // namespace collsched
