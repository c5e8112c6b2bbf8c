#include "collsched/rules_cost.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <sstream>

#include "collsched/costs.hpp"

namespace collsched {
namespace {

using Clock = std::chrono::steady_clock;
using Mask = std::uint32_t;

void require_jobs_at_most(const Profile& profile, int limit,
                          std::string_view method) {
  if (profile.num_jobs() > limit) {
    throw CapacityError(std::string(method) + " supports at most " +
                        std::to_string(limit) + " jobs, instance has " +
                        std::to_string(profile.num_jobs()));
  }
}

SolveReport finish(const Profile& profile, const CostSpec& spec,
                   std::vector<JobId> order, SolveMethod method,
                   std::int64_t nodes, Clock::time_point start) {
  SolveReport r;
  r.schedule = Schedule(std::move(order));
  r.spec = spec;
  r.objective = aggregate(spec, profile, r.schedule);
  r.method = method;
  r.nodes_explored = nodes;
  r.elapsed = Clock::now() - start;
  return r;
}

// Weighted per-job cost sum_a w_a f(C, d_aj) as a function of C, evaluated
// from sorted due dates and prefix sums.
class DueDateTable {
 public:
  DueDateTable(const Profile& profile, JobId job) {
    std::vector<std::pair<Length, std::int64_t>> dw;
    for (int a = 0; a < profile.num_distinct(); ++a) {
      dw.emplace_back(profile.due_dates()[a][job], profile.multiplicities()[a]);
    }
    std::sort(dw.begin(), dw.end());
    due_.reserve(dw.size());
    w_.assign(dw.size() + 1, 0);
    wd_.assign(dw.size() + 1, 0);
    for (std::size_t i = 0; i < dw.size(); ++i) {
      due_.push_back(dw[i].first);
      w_[i + 1] = w_[i] + dw[i].second;
      wd_[i + 1] = wd_[i] + dw[i].second * dw[i].first;
      wdd_ += dw[i].second * dw[i].first * dw[i].first;
    }
  }

  Cost operator()(CostKind kind, Length c) const {
    // Rankings with d < c are late.
    const std::size_t late =
        std::lower_bound(due_.begin(), due_.end(), c) - due_.begin();
    const Cost w_late = w_[late], wd_late = wd_[late];
    const Cost w_all = w_.back(), wd_all = wd_.back();
    const Cost tardy = w_late * c - wd_late;
    const Cost early = (wd_all - wd_late) - (w_all - w_late) * c;
    switch (kind) {
      case CostKind::T:
        return tardy;
      case CostKind::U:
        return w_late;
      case CostKind::L:
        return w_all * c - wd_all;
      case CostKind::E:
        return early;
      case CostKind::D:
        return tardy + early;
      case CostKind::SD:
        return w_all * c * c - 2 * c * wd_all + wdd_;
      default:
        throw InvalidSpec("not a delay cost");
    }
  }

 private:
  std::vector<Length> due_;
  std::vector<Cost> w_, wd_;
  Cost wdd_ = 0;
};

// weight[j][key]: key is the completion time for delay kinds, the position
// for S.
std::vector<std::vector<Cost>> per_job_weights(const Profile& profile,
                                               CostKind kind) {
  const int m = profile.num_jobs();
  std::vector<std::vector<Cost>> weight(m);
  if (kind == CostKind::S) {
    for (int j = 0; j < m; ++j) {
      weight[j].assign(m, 0);
      for (int a = 0; a < profile.num_distinct(); ++a) {
        const int pa = profile.preferred()[a].positions()[j];
        const auto w = profile.multiplicities()[a];
        for (int k = 0; k < m; ++k) weight[j][k] += w * std::abs(k - pa);
      }
    }
    return weight;
  }
  const Length total = profile.total_length();
  for (int j = 0; j < m; ++j) {
    DueDateTable table(profile, j);
    weight[j].assign(total + 1, 0);
    for (Length c = profile.length(j); c <= total; ++c) {
      weight[j][c] = table(kind, c);
    }
  }
  return weight;
}

// Suffix-value DP over the set of already scheduled jobs. step(j, mask, start)
// is the cost of running j next when `mask` is done and the clock is at
// `start`. Forward reconstruction in id order yields the lexicographically
// smallest optimal sequence.
template <class Step>
std::vector<JobId> subset_dp(const Profile& profile, Step&& step,
                             std::int64_t& nodes) {
  const int m = profile.num_jobs();
  const Mask full = m == 32 ? ~Mask{0} : (Mask{1} << m) - 1;
  std::vector<Cost> best(std::size_t{full} + 1, 0);
  const auto& p = profile.lengths();
  auto start_of = [&](Mask mask) {
    Length t = 0;
    for (Mask rest = mask; rest; rest &= rest - 1) t += p[std::countr_zero(rest)];
    return t;
  };
  for (Mask mask = full; mask-- > 0;) {
    const Length t = start_of(mask);
    Cost value = std::numeric_limits<Cost>::max();
    for (Mask rest = full & ~mask; rest; rest &= rest - 1) {
      const int j = std::countr_zero(rest);
      value = std::min(value, step(j, mask, t) + best[mask | (Mask{1} << j)]);
    }
    best[mask] = value;
  }
  nodes = static_cast<std::int64_t>(full) + 1;

  std::vector<JobId> order;
  Mask mask = 0;
  Length t = 0;
  while (mask != full) {
    for (int j = 0; j < m; ++j) {
      const Mask bit = Mask{1} << j;
      if (mask & bit) continue;
      if (step(j, mask, t) + best[mask | bit] == best[mask]) {
        order.push_back(j);
        mask |= bit;
        t += p[j];
        break;
      }
    }
  }
  return order;
}

// support[k][l]: agents placing k before l.
std::vector<std::vector<std::int64_t>> pairwise_support(const Profile& profile) {
  const int m = profile.num_jobs();
  std::vector<std::vector<std::int64_t>> support(m, std::vector<std::int64_t>(m, 0));
  for (int a = 0; a < profile.num_distinct(); ++a) {
    const auto& order = profile.preferred()[a].order();
    const auto w = profile.multiplicities()[a];
    for (int x = 0; x < m; ++x) {
      for (int y = x + 1; y < m; ++y) support[order[x]][order[y]] += w;
    }
  }
  return support;
}

}  // namespace

std::string_view to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::BruteForce:
      return "brute-force";
    case SolveMethod::SubsetDP:
      return "subset-dp";
    case SolveMethod::Assignment:
      return "assignment";
    case SolveMethod::ClosedForm:
      return "closed-form";
    case SolveMethod::BranchAndBound:
      return "branch-and-bound";
  }
  return "?";
}

SolveReport brute_force(const Profile& profile, const CostSpec& spec) {
  const auto start = Clock::now();
  check_supported(spec);
  require_jobs_at_most(profile, kBruteForceMaxJobs, "brute force");
  std::vector<JobId> order(profile.num_jobs());
  std::iota(order.begin(), order.end(), 0);
  std::vector<JobId> best_order = order;
  Value best = 0;
  std::int64_t count = 0, nodes = 0;
  bool first = true;
  do {
    ++nodes;
    const Value v = aggregate(spec, profile, Schedule(order));
    if (first || v < best) {
      best = v;
      best_order = order;
      count = 1;
      first = false;
    } else if (v == best) {
      ++count;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  auto r = finish(profile, spec, std::move(best_order), SolveMethod::BruteForce,
                  nodes, start);
  r.optimal_count = count;
  return r;
}

SolveReport solve_sum_delay_dp(const Profile& profile, CostKind kind) {
  const auto start = Clock::now();
  if (kind == CostKind::K) {
    throw InvalidSpec("K is not decomposable per job; use solve_kemeny_dp");
  }
  require_jobs_at_most(profile, kSubsetDpMaxJobs, "subset DP");
  const auto weight = per_job_weights(profile, kind);
  const auto& p = profile.lengths();
  std::int64_t nodes = 0;
  std::vector<JobId> order;
  if (kind == CostKind::S) {
    order = subset_dp(
        profile,
        [&](int j, Mask mask, Length) { return weight[j][std::popcount(mask)]; },
        nodes);
  } else {
    order = subset_dp(
        profile, [&](int j, Mask, Length t) { return weight[j][t + p[j]]; },
        nodes);
  }
  return finish(profile, {kind, Aggregation::Sum, 2}, std::move(order),
                SolveMethod::SubsetDP, nodes, start);
}

SolveReport solve_sum_lateness(const Profile& profile) {
  const auto start = Clock::now();
  std::vector<JobId> order(profile.num_jobs());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](JobId a, JobId b) {
    return profile.length(a) < profile.length(b);
  });
  return finish(profile, {CostKind::L, Aggregation::Sum, 2}, std::move(order),
                SolveMethod::ClosedForm, 1, start);
}

std::vector<int> min_cost_assignment(const std::vector<std::vector<Cost>>& cost,
                                     Cost* total) {
  const int n = static_cast<int>(cost.size());
  constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;
  // Potentials u (rows), v (columns); match[col] = row, 1-based with a
  // virtual column 0.
  std::vector<Cost> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<Cost> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      Cost delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Cost cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  Cost sum = 0;
  for (int j = 1; j <= n; ++j) {
    row_to_col[match[j] - 1] = j - 1;
    sum += cost[match[j] - 1][j - 1];
  }
  if (total) *total = sum;
  return row_to_col;
}

SolveReport solve_equal_size_assignment(const Profile& profile, CostKind kind) {
  const auto start = Clock::now();
  if (!profile.equal_lengths()) {
    throw PreconditionError("assignment solver requires equal job lengths");
  }
  if (kind == CostKind::K) {
    throw PreconditionError("K is not decomposable per job and slot");
  }
  const int m = profile.num_jobs();
  const Length p = profile.length(0);
  const auto weight = per_job_weights(profile, kind);
  // cost[job][slot]; slot l completes at l*p + p.
  std::vector<std::vector<Cost>> cost(m, std::vector<Cost>(m));
  for (int j = 0; j < m; ++j) {
    for (int slot = 0; slot < m; ++slot) {
      cost[j][slot] = kind == CostKind::S ? weight[j][slot]
                                          : weight[j][slot * p + p];
    }
  }

  auto optimum = [&](const std::vector<int>& jobs, int first_slot) {
    const int k = static_cast<int>(jobs.size());
    if (k == 0) return Cost{0};
    std::vector<std::vector<Cost>> sub(k, std::vector<Cost>(k));
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) sub[r][c] = cost[jobs[r]][first_slot + c];
    }
    Cost total = 0;
    min_cost_assignment(sub, &total);
    return total;
  };

  // Fix slots left to right with the smallest job id that keeps the
  // remaining optimum intact.
  std::vector<int> remaining(m);
  std::iota(remaining.begin(), remaining.end(), 0);
  Cost target = optimum(remaining, 0);
  std::int64_t nodes = 1;
  std::vector<JobId> order;
  for (int slot = 0; slot < m; ++slot) {
    for (std::size_t idx = 0; idx < remaining.size(); ++idx) {
      const int j = remaining[idx];
      std::vector<int> rest = remaining;
      rest.erase(rest.begin() + idx);
      ++nodes;
      const Cost sub = optimum(rest, slot + 1);
      if (cost[j][slot] + sub == target) {
        order.push_back(j);
        remaining = std::move(rest);
        target = sub;
        break;
      }
    }
  }
  return finish(profile, {kind, Aggregation::Sum, 2}, std::move(order),
                SolveMethod::Assignment, nodes, start);
}

SolveReport solve_kemeny_dp(const Profile& profile) {
  const auto start = Clock::now();
  require_jobs_at_most(profile, kSubsetDpMaxJobs, "Kemeny DP");
  const int m = profile.num_jobs();
  const auto support = pairwise_support(profile);
  // Running j now disappoints every agent placing a still-unscheduled k
  // before j.
  std::vector<Cost> column(m, 0);
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < m; ++j) column[j] += support[k][j];
  }
  std::int64_t nodes = 0;
  auto order = subset_dp(
      profile,
      [&](int j, Mask mask, Length) {
        Cost c = column[j];
        for (Mask rest = mask; rest; rest &= rest - 1) {
          c -= support[std::countr_zero(rest)][j];
        }
        return c;
      },
      nodes);
  return finish(profile, {CostKind::K, Aggregation::Sum, 2}, std::move(order),
                SolveMethod::SubsetDP, nodes, start);
}

namespace {

// Depth-first branch-and-bound over schedule prefixes for Max / L_p.
// Every per-job, per-agent term is nonnegative, so the aggregation of the
// costs accrued so far (plus a per-agent lower bound for the unscheduled
// jobs) never overestimates any completion.
class MinMaxSearch {
 public:
  MinMaxSearch(const Profile& profile, const CostSpec& spec)
      : profile_(profile),
        spec_(spec),
        m_(profile.num_jobs()),
        agents_(profile.num_distinct()) {
    for (int a = 0; a < agents_; ++a) agent_order_.push_back(a);
    if (spec_.cost == CostKind::K) {
      before_.assign(agents_, std::vector<Mask>(m_, 0));
      for (int a = 0; a < agents_; ++a) {
        const auto& order = profile.preferred()[a].order();
        Mask seen = 0;
        for (JobId j : order) {
          before_[a][j] = seen;
          seen |= Mask{1} << j;
        }
      }
    }
    spt_.resize(m_);
    std::iota(spt_.begin(), spt_.end(), 0);
    std::stable_sort(spt_.begin(), spt_.end(), [&](JobId a, JobId b) {
      return profile.length(a) < profile.length(b);
    });
    acc_.assign(m_ + 1, std::vector<Cost>(agents_, 0));
    prefix_.resize(m_);
  }

  void seed_incumbent(const Schedule& s) {
    const Value v = aggregate(spec_, profile_, s);
    if (!has_incumbent_ || v < incumbent_value_) {
      incumbent_value_ = v;
      has_incumbent_ = true;
    }
  }

  std::vector<JobId> run(std::int64_t& nodes) {
    // Accept ties with the seeded incumbent so the search itself reaches the
    // lexicographically first optimal leaf; afterwards ties are pruned.
    cutoff_ = incumbent_value_ + 1;
    dfs(0, 0, 0);
    nodes = nodes_;
    return best_;
  }

 private:
  Cost increment(int a, JobId j, Mask mask, int depth, Length finish) const {
    switch (spec_.cost) {
      case CostKind::K: {
        const int pa = profile_.preferred()[a].positions()[j];
        return pa - std::popcount(before_[a][j] & mask);
      }
      case CostKind::S:
        return std::abs(depth - profile_.preferred()[a].positions()[j]);
      default:
        return delay_cost(spec_.cost, finish, profile_.due_dates()[a][j]);
    }
  }

  // Lower bound on what agent a accrues from jobs outside `mask` when the
  // clock stands at `t` and `depth` jobs are placed.
  Cost lower_bound(int a, Mask mask, int depth, Length t) const {
    const auto& due = profile_.due_dates()[a];
    switch (spec_.cost) {
      case CostKind::T:
      case CostKind::D:
      case CostKind::SD: {
        // Pair the earliest possible completion times (SPT from t) with the
        // due dates in ascending order; optimal for any convex nondecreasing
        // penalty of lateness, and D, SD dominate T / T^2.
        const auto& order = profile_.preferred()[a].order();
        Cost lb = 0;
        int s = 0;
        Length c = t;
        for (JobId j : order) {
          if (mask & (Mask{1} << j)) continue;
          while (mask & (Mask{1} << spt_[s])) ++s;
          c += profile_.length(spt_[s++]);
          const Cost late = std::max<Cost>(0, c - due[j]);
          lb += spec_.cost == CostKind::SD ? late * late : late;
        }
        return lb;
      }
      case CostKind::U: {
        Cost lb = 0;
        for (int j = 0; j < m_; ++j) {
          if (!(mask & (Mask{1} << j)) && t + profile_.length(j) > due[j]) ++lb;
        }
        return lb;
      }
      case CostKind::S: {
        const auto& pos = profile_.preferred()[a].positions();
        Cost lb = 0;
        for (int j = 0; j < m_; ++j) {
          if (!(mask & (Mask{1} << j))) lb += std::max(0, depth - pos[j]);
        }
        return lb;
      }
      default:
        return 0;
    }
  }

  // Returns true when the child must be pruned. For Max, agents are scanned
  // in move-to-front order so a recently binding agent is tried first.
  bool prune(const std::vector<Cost>& acc, Mask mask, int depth, Length t) {
    if (spec_.aggregation == Aggregation::Max) {
      for (int idx = 0; idx < agents_; ++idx) {
        const int a = agent_order_[idx];
        if (acc[a] >= cutoff_ ||
            acc[a] + lower_bound(a, mask, depth, t) >= cutoff_) {
          std::rotate(agent_order_.begin(), agent_order_.begin() + idx,
                      agent_order_.begin() + idx + 1);
          return true;
        }
      }
      return false;
    }
    Value total = 0;
    for (int a = 0; a < agents_; ++a) {
      const Cost bound = acc[a] + lower_bound(a, mask, depth, t);
      total = checked_add(total, checked_mul(checked_pow(bound, spec_.p),
                                             profile_.multiplicities()[a]));
      if (total >= cutoff_) return true;
    }
    return false;
  }

  Value leaf_value(const std::vector<Cost>& acc) const {
    CostVector v;
    v.spec = spec_;
    v.per_ranking = acc;
    v.weights = profile_.multiplicities();
    return aggregate(spec_, v);
  }

  void dfs(int depth, Mask mask, Length t) {
    ++nodes_;
    if (depth == m_) {
      const Value v = leaf_value(acc_[depth]);
      if (v < cutoff_) {
        cutoff_ = v;
        best_ = prefix_;
      }
      return;
    }
    auto& next = acc_[depth + 1];
    const auto& cur = acc_[depth];
    for (int j = 0; j < m_; ++j) {
      const Mask bit = Mask{1} << j;
      if (mask & bit) continue;
      const Length finish = t + profile_.length(j);
      for (int a = 0; a < agents_; ++a) {
        next[a] = cur[a] + increment(a, j, mask, depth, finish);
      }
      if (prune(next, mask | bit, depth + 1, finish)) continue;
      prefix_[depth] = j;
      dfs(depth + 1, mask | bit, finish);
    }
  }

  const Profile& profile_;
  CostSpec spec_;
  int m_;
  int agents_;
  std::vector<std::vector<Mask>> before_;
  std::vector<JobId> spt_;
  std::vector<std::vector<Cost>> acc_;
  std::vector<int> agent_order_;
  std::vector<JobId> prefix_, best_;
  Value incumbent_value_ = 0;
  bool has_incumbent_ = false;
  Value cutoff_ = 0;
  std::int64_t nodes_ = 0;
};

}  // namespace

SolveReport solve_minmax_bb(const Profile& profile, const CostSpec& spec) {
  const auto start = Clock::now();
  check_supported(spec);
  if (spec.aggregation == Aggregation::Sum) {
    throw InvalidSpec("branch-and-bound handles max and L_p aggregations");
  }
  require_jobs_at_most(profile, kBranchAndBoundMaxJobs, "branch-and-bound");

  MinMaxSearch search(profile, spec);
  // Incumbents: the utilitarian optimum for the same cost, and every
  // preferred schedule.
  const SolveReport sum = spec.cost == CostKind::K
                              ? solve_kemeny_dp(profile)
                              : solve_sum_delay_dp(profile, spec.cost);
  search.seed_incumbent(sum.schedule);
  for (const Schedule& s : profile.preferred()) search.seed_incumbent(s);

  std::int64_t nodes = 0;
  auto order = search.run(nodes);
  return finish(profile, spec, std::move(order), SolveMethod::BranchAndBound,
                nodes + sum.nodes_explored, start);
}

Schedule pareto_swap_pass(Schedule schedule, const Profile& profile) {
  const int m = profile.num_jobs();
  // unanimous[k][l]: every agent places k before l.
  std::vector<std::vector<bool>> unanimous(m, std::vector<bool>(m, true));
  for (int k = 0; k < m; ++k) unanimous[k][k] = false;
  for (const Schedule& s : profile.preferred()) {
    for (int k = 0; k < m; ++k) {
      for (int l = 0; l < m; ++l) {
        if (k != l && !s.precedes(k, l)) unanimous[k][l] = false;
      }
    }
  }
  std::vector<JobId> order = schedule.order();
  // Each swap strictly reduces the number of violated unanimous pairs.
  for (bool changed = true; changed;) {
    changed = false;
    for (int x = 0; x < m && !changed; ++x) {
      for (int y = x + 1; y < m && !changed; ++y) {
        if (unanimous[order[y]][order[x]]) {
          std::swap(order[x], order[y]);
          changed = true;
        }
      }
    }
  }
  return Schedule(std::move(order));
}

SolveReport solve(const Profile& profile, const CostSpec& spec) {
  check_supported(spec);
  SolveReport r;
  if (spec.aggregation != Aggregation::Sum) {
    r = solve_minmax_bb(profile, spec);
  } else if (spec.cost == CostKind::L) {
    r = solve_sum_lateness(profile);
  } else if (spec.cost == CostKind::K) {
    r = solve_kemeny_dp(profile);
  } else if (profile.equal_lengths() && profile.num_jobs() > 12) {
    r = solve_equal_size_assignment(profile, spec.cost);
  } else {
    r = solve_sum_delay_dp(profile, spec.cost);
  }
  r.spec = spec;
  if (spec.aggregation == Aggregation::Sum && spec.cost == CostKind::T &&
      profile.equal_lengths()) {
    r.schedule = pareto_swap_pass(r.schedule, profile);
  }
  const Value check = aggregate(spec, profile, r.schedule);
  if (check != r.objective) {
    throw std::logic_error("solver objective " + to_string(r.objective) +
                           " disagrees with re-evaluation " + to_string(check));
  }
  return r;
}

std::string export_ilp(const Profile& profile, const CostSpec& spec) {
  check_supported(spec);
  if (spec.aggregation != Aggregation::Sum) {
    throw UnsupportedCombination("ILP export supports the sum aggregation only");
  }
  if (spec.cost == CostKind::SD) {
    throw UnsupportedCombination("squared deviation is not linear");
  }
  const int m = profile.num_jobs();
  const Length total = profile.total_length();
  auto prec = [](int i, int j) {
    return "prec_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  };
  auto term = [](Cost coef, const std::string& var) {
    std::string s = coef < 0 ? " - " : " + ";
    const Cost mag = coef < 0 ? -coef : coef;
    if (mag != 1) s += std::to_string(mag) + " ";
    return s + var;
  };

  std::ostringstream obj, cons, bounds, binaries;
  Cost constant = 0;
  int row = 0;
  auto constraint = [&]() { return " c" + std::to_string(++row) + ":"; };
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      cons << constraint() << term(1, prec(i, j)) << term(1, prec(j, i))
           << " = 1\n";
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        if (i == j || j == k || i == k) continue;
        cons << constraint() << term(1, prec(i, j)) << term(1, prec(j, k))
             << term(-1, prec(i, k)) << " <= 1\n";
      }
    }
  }

  const auto& weights = profile.multiplicities();
  const std::int64_t n = profile.num_agents();
  switch (spec.cost) {
    case CostKind::K: {
      // Agents preferring j before i pay when prec_i_j = 1.
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          if (i == j) continue;
          Cost against = 0;
          for (int a = 0; a < profile.num_distinct(); ++a) {
            if (profile.preferred()[a].precedes(j, i)) against += weights[a];
          }
          if (against) obj << term(against, prec(i, j));
        }
      }
      break;
    }
    case CostKind::L: {
      // sum_a w_a (C_j - d_aj), expanded.
      for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
          if (i != j) obj << term(n * profile.length(i), prec(i, j));
        }
        constant += n * profile.length(j);
        for (int a = 0; a < profile.num_distinct(); ++a) {
          constant -= weights[a] * profile.due_dates()[a][j];
        }
      }
      break;
    }
    default: {
      for (int a = 0; a < profile.num_distinct(); ++a) {
        const auto& due = profile.due_dates()[a];
        const auto& pos = profile.preferred()[a].positions();
        for (int j = 0; j < m; ++j) {
          const std::string tag =
              std::to_string(a + 1) + "_" + std::to_string(j + 1);
          // S compares the position sum_i prec_i_j with pos_a(j); the delay
          // kinds compare the start sum_i p_i prec_i_j with d_aj - p_j.
          const bool by_position = spec.cost == CostKind::S;
          const Cost target = by_position ? pos[j] : due[j] - profile.length(j);
          auto linear = [&](Cost sign) {
            std::string s;
            for (int i = 0; i < m; ++i) {
              if (i != j) {
                s += term(sign * (by_position ? 1 : profile.length(i)), prec(i, j));
              }
            }
            return s;
          };
          const std::string expr_pos = linear(1), expr_neg = linear(-1);
          const bool want_late = spec.cost == CostKind::T ||
                                 spec.cost == CostKind::D ||
                                 spec.cost == CostKind::S;
          const bool want_early = spec.cost == CostKind::E ||
                                  spec.cost == CostKind::D ||
                                  spec.cost == CostKind::S;
          if (want_late) {
            // t >= start - target
            const std::string t = "t_" + tag;
            obj << term(weights[a], t);
            cons << constraint() << term(1, t) << expr_neg
                 << " >= " << -target << "\n";
          }
          if (want_early) {
            // e >= target - start
            const std::string e = "e_" + tag;
            obj << term(weights[a], e);
            cons << constraint() << term(1, e) << expr_pos << " >= " << target
                 << "\n";
          }
          if (spec.cost == CostKind::U) {
            // start - M u <= target
            const std::string u = "u_" + tag;
            obj << term(weights[a], u);
            cons << constraint() << expr_pos << term(-total, u)
                 << " <= " << target << "\n";
            binaries << " " << u << "\n";
          }
        }
      }
    }
  }

  std::ostringstream out;
  out << "\\ collective schedule, " << spec.name() << ", " << m << " jobs, "
      << n << " agents\n";
  out << "Minimize\n obj:";
  out << obj.str();
  if (constant != 0) out << (constant < 0 ? " - " : " + ") << (constant < 0 ? -constant : constant);
  out << "\nSubject To\n" << cons.str();
  out << "Binaries\n";
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j) out << " " << prec(i, j) << "\n";
    }
  }
  out << binaries.str();
  out << "End\n";
  return out.str();
}

}  // namespace collsched
