#include <doctest.h>

#include <random>
#include <sstream>

#include "collsched/costs.hpp"
#include "collsched/profiles.hpp"
#include "collsched/rules_cost.hpp"
#include "lp_oracle.hpp"
#include "support.hpp"

using namespace collsched;
using testing_support::Agg;
using testing_support::S;

namespace {

constexpr CostKind kDelayKinds[] = {CostKind::T, CostKind::U, CostKind::L,
                                    CostKind::E, CostKind::D, CostKind::SD};
constexpr CostKind kMinMaxKinds[] = {CostKind::T, CostKind::U, CostKind::E,
                                     CostKind::D, CostKind::SD, CostKind::K,
                                     CostKind::S};

CostSpec sum(CostKind k) { return {k, Aggregation::Sum, 2}; }

}  // namespace

TEST_CASE("brute force on the fixtures") {
  const auto r = brute_force(testing_support::three_jobs_two_agents(), sum(CostKind::T));
  CHECK(r.schedule == S({2, 3, 1}));
  CHECK(r.objective == 7);
  CHECK(r.optimal_count == 1);

  const auto u = brute_force(testing_support::unit_three_jobs_five_agents(),
                             sum(CostKind::T));
  CHECK(u.schedule == S({1, 3, 2}));
  CHECK(u.objective == 5);

  const auto one = brute_force(Profile({4}, {S({1})}), sum(CostKind::T));
  CHECK(one.schedule == S({1}));
  CHECK(one.objective == 0);

  CHECK_THROWS_AS(brute_force(generate_impartial(11, 3, 1), sum(CostKind::T)),
                  CapacityError);
}

TEST_CASE("subset DP") {
  const auto r = solve_sum_delay_dp(testing_support::three_jobs_two_agents(), CostKind::T);
  CHECK(r.schedule == S({2, 3, 1}));
  CHECK(r.objective == 7);
  CHECK(r.method == SolveMethod::SubsetDP);
  CHECK_THROWS_AS(solve_sum_delay_dp(generate_impartial(25, 3, 1), CostKind::T),
                  CapacityError);
  CHECK_THROWS_AS(solve_sum_delay_dp(generate_impartial(3, 3, 1), CostKind::K),
                  InvalidSpec);
}

TEST_CASE("sum-L is shortest first") {
  const Profile p({20, 5, 1}, {S({1, 2, 3})});
  CHECK(solve_sum_lateness(p).schedule == S({3, 2, 1}));

  const Profile eq = generate_impartial(5, 6, 4);
  CHECK(solve_sum_lateness(eq).schedule == Schedule::identity(5));
  const auto raw = testing_support::raw_of(eq);
  std::vector<int> o{0, 1, 2, 3, 4};
  const Value first = testing_support::oracle_objective(raw, CostKind::L, Agg::Sum, 2, o);
  do {
    CHECK(testing_support::oracle_objective(raw, CostKind::L, Agg::Sum, 2, o) == first);
  } while (std::next_permutation(o.begin(), o.end()));
}

TEST_CASE("equal-size assignment") {
  const auto r = solve_equal_size_assignment(
      testing_support::unit_three_jobs_five_agents(), CostKind::T);
  CHECK(r.objective == 5);
  CHECK(r.method == SolveMethod::Assignment);

  const Profile single({3, 3, 3, 3}, {S({3, 1, 4, 2})});
  for (auto k : kDelayKinds) {
    const auto s = solve_equal_size_assignment(single, k);
    CHECK(s.objective == 0);
    // Every order has the same total lateness.
    if (k != CostKind::L) CHECK(s.schedule == S({3, 1, 4, 2}));
  }
  CHECK_THROWS_AS(solve_equal_size_assignment(
                      testing_support::three_jobs_two_agents(), CostKind::T),
                  PreconditionError);
}

TEST_CASE("Hungarian assignment") {
  const std::vector<std::vector<Cost>> c{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  Cost total = 0;
  const auto a = min_cost_assignment(c, &total);
  CHECK(total == 5);
  CHECK(a == std::vector<int>{1, 0, 2});
}

TEST_CASE("Kemeny DP") {
  const Profile unanimous({1, 2, 3, 4}, {S({2, 4, 1, 3})}, {5});
  const auto u = solve_kemeny_dp(unanimous);
  CHECK(u.schedule == S({2, 4, 1, 3}));
  CHECK(u.objective == 0);

  const Profile maj({1, 1}, {S({1, 2}), S({1, 2}), S({2, 1})});
  const auto r = solve_kemeny_dp(maj);
  CHECK(r.schedule == S({1, 2}));
  CHECK(r.objective == 1);
}

TEST_CASE("min-max branch and bound") {
  const Profile single({2, 7, 1}, {S({3, 1, 2})});
  const auto s = solve_minmax_bb(single, {CostKind::T, Aggregation::Max, 2});
  CHECK(s.schedule == S({3, 1, 2}));
  CHECK(s.objective == 0);

  const Profile split({1, 1}, {S({1, 2}), S({2, 1})});
  const auto r = solve_minmax_bb(split, {CostKind::T, Aggregation::Max, 2});
  CHECK(r.objective == 1);
  CHECK(r.schedule == S({1, 2}));

  CHECK_THROWS_AS(solve_minmax_bb(split, {CostKind::L, Aggregation::Max, 2}),
                  UnsupportedCombination);
  CHECK_THROWS_AS(solve_minmax_bb(generate_impartial(21, 2, 1),
                                  {CostKind::T, Aggregation::Max, 2}),
                  CapacityError);
}

TEST_CASE("exact solvers agree with the enumeration oracle") {
  std::mt19937_64 gen(1234);
  for (int t = 0; t < 60; ++t) {
    const int m = 2 + static_cast<int>(gen() % 6);
    const int n = 1 + static_cast<int>(gen() % 6);
    const Length pmax = std::vector<Length>{1, 5, 10}[gen() % 3];
    const auto inst = testing_support::random_instance(gen, m, n, pmax);
    const Profile p = inst.profile();
    CAPTURE(t);

    for (auto k : kDelayKinds) {
      const auto o = testing_support::oracle_optimum(inst, k, Agg::Sum);
      const auto dp = solve_sum_delay_dp(p, k);
      CHECK(dp.objective == o.value);
      CHECK(dp.schedule.order() == o.best);
      if (p.equal_lengths()) {
        CHECK(solve_equal_size_assignment(p, k).objective == o.value);
      }
      const auto bf = brute_force(p, sum(k));
      CHECK(bf.objective == o.value);
      CHECK(bf.optimal_count == o.count);
    }
    const auto ok = testing_support::oracle_optimum(inst, CostKind::K, Agg::Sum);
    CHECK(solve_kemeny_dp(p).objective == ok.value);
    CHECK(solve_kemeny_dp(p).schedule.order() == ok.best);

    for (auto k : kMinMaxKinds) {
      const auto om = testing_support::oracle_optimum(inst, k, Agg::Max);
      const auto bb = solve_minmax_bb(p, {k, Aggregation::Max, 2});
      CHECK(bb.objective == om.value);
      CHECK(bb.schedule.order() == om.best);
      const int pw = 2 + static_cast<int>(gen() % 2);
      const auto ol = testing_support::oracle_optimum(inst, k, Agg::Lp, pw);
      const auto bl = solve_minmax_bb(p, {k, Aggregation::Lp, pw});
      CHECK(bl.objective == ol.value);
      CHECK(bl.schedule.order() == ol.best);
    }
  }
}

TEST_CASE("dispatcher picks a method and verifies it") {
  const Profile p = testing_support::three_jobs_two_agents();
  CHECK(solve(p, sum(CostKind::T)).method == SolveMethod::SubsetDP);
  CHECK(solve(p, sum(CostKind::L)).method == SolveMethod::ClosedForm);
  CHECK(solve(p, sum(CostKind::K)).method == SolveMethod::SubsetDP);
  CHECK(solve(p, {CostKind::T, Aggregation::Max, 2}).method ==
        SolveMethod::BranchAndBound);
  CHECK(solve(p, {CostKind::T, Aggregation::Max, 2}).objective == 6);
  CHECK(solve(assign_lengths(generate_impartial(14, 9, 3), LengthSpec::unit(), 0),
              sum(CostKind::T))
            .method == SolveMethod::Assignment);
  CHECK_THROWS_AS(solve(p, {CostKind::L, Aggregation::Lp, 2}), UnsupportedCombination);
}

TEST_CASE("larger equal-size instances: assignment matches the DP") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Profile p = generate_impartial(13, 40, seed);
    for (auto k : kDelayKinds) {
      CHECK(solve_equal_size_assignment(p, k).objective ==
            solve_sum_delay_dp(p, k).objective);
    }
  }
}

TEST_CASE("Pareto swap pass") {
  const Profile p({1, 1, 1}, {S({1, 2, 3}), S({1, 3, 2})});
  const Schedule fixed = pareto_swap_pass(S({2, 3, 1}), p);
  CHECK(fixed.position(0) == 0);
  const CostSpec st = sum(CostKind::T);
  CHECK(aggregate(st, p, fixed) <= aggregate(st, p, S({2, 3, 1})));
}

namespace {

int count_lines_starting(const std::string& text, const std::string& prefix,
                         const std::string& contains) {
  std::istringstream in(text);
  int c = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(prefix, 0) == 0 && line.find(contains) != std::string::npos) ++c;
  }
  return c;
}

}  // namespace

TEST_CASE("ILP export sizes") {
  const std::string two = export_ilp(Profile({1, 2}, {S({1, 2})}), sum(CostKind::T));
  CHECK(count_lines_starting(two, " prec_", "") == 2);
  CHECK(count_lines_starting(two, " c", "= 1") - count_lines_starting(two, " c", "<= 1") == 1);
  CHECK(count_lines_starting(two, " c", "<= 1") == 0);

  const std::string three =
      export_ilp(testing_support::three_jobs_two_agents(), sum(CostKind::T));
  CHECK(count_lines_starting(three, " prec_", "") == 6);
  CHECK(count_lines_starting(three, " c", "<= 1") == 6);
  const auto model = lp_oracle::parse(three);
  int equalities = 0;
  for (const auto& r : model.rows) equalities += r.op == "=";
  CHECK(equalities == 3);
}

TEST_CASE("ILP export optimum on the three-job instance") {
  const auto model =
      lp_oracle::parse(export_ilp(testing_support::three_jobs_two_agents(), sum(CostKind::T)));
  CHECK(lp_oracle::minimise(model) == 7);
}

TEST_CASE("ILP export optimum matches brute force for every linear cost") {
  std::mt19937_64 gen(77);
  for (int t = 0; t < 12; ++t) {
    const auto inst = testing_support::random_instance(gen, 3, 1 + gen() % 4, 6);
    const Profile p = inst.profile();
    for (auto k : {CostKind::K, CostKind::S, CostKind::T, CostKind::U, CostKind::L,
                   CostKind::E, CostKind::D}) {
      CAPTURE(to_string(k));
      const auto best = lp_oracle::minimise(lp_oracle::parse(export_ilp(p, sum(k))));
      REQUIRE(best.has_value());
      CHECK(Value(*best) == brute_force(p, sum(k)).objective);
    }
  }
}

TEST_CASE("ILP export rejects non-linear specs") {
  const Profile p = testing_support::three_jobs_two_agents();
  CHECK_THROWS_AS(export_ilp(p, sum(CostKind::SD)), UnsupportedCombination);
  CHECK_THROWS_AS(export_ilp(p, {CostKind::T, Aggregation::Lp, 2}), UnsupportedCombination);
  CHECK_THROWS_AS(export_ilp(p, {CostKind::T, Aggregation::Max, 2}), UnsupportedCombination);
}
