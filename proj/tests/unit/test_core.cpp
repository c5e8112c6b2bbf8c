#include <doctest.h>

#include "collsched/core.hpp"
#include "support.hpp"

using namespace collsched;
using testing_support::S;

TEST_CASE("completion times are prefix sums along the schedule") {
  const std::vector<Length> p{20, 5, 1};
  const auto c = completion_times(S({1, 3, 2}), p);
  CHECK(c[0] == 20);
  CHECK(c[2] == 21);
  CHECK(c[1] == 26);

  CHECK(completion_times(S({1}), std::vector<Length>{7})[0] == 7);

  const auto c2 = completion_times(S({2, 1}), std::vector<Length>{2, 3});
  CHECK(c2[1] == 3);
  CHECK(c2[0] == 5);
}

TEST_CASE("completion times reject a schedule over a different job set") {
  CHECK_THROWS_AS(completion_times(S({1, 2}), std::vector<Length>{1, 2, 3}),
                  InvalidInstance);
  const std::vector<Job> jobs{{0, 4}, {1, 6}};
  CHECK(completion_times(S({2, 1}), jobs)[0] == 10);
}

TEST_CASE("position and precedes") {
  const Schedule s = S({1, 3, 2});
  CHECK(position(2, s) == 1);
  CHECK(position(0, S({1})) == 0);
  CHECK(position(0, S({2, 1})) == 1);
  CHECK(precedes(0, 1, s));
  CHECK_FALSE(precedes(1, 0, s));
  CHECK(precedes(2, 1, s));
  CHECK_THROWS_AS(position(5, s), InvalidInstance);
  CHECK_THROWS_AS(precedes(0, 7, s), InvalidInstance);
}

TEST_CASE("schedules must be permutations") {
  CHECK_THROWS_AS(Schedule(std::vector<JobId>{0, 0}), InvalidInstance);
  CHECK_THROWS_AS(Schedule(std::vector<JobId>{0, 2}), InvalidInstance);
  const Schedule s = S({3, 1, 2});
  for (int j = 0; j < 3; ++j) CHECK(s[s.position(j)] == j);
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(Profile({}, {}), InvalidInstance);
  CHECK_THROWS_AS(Profile({1, 0}, {S({1, 2})}), InvalidInstance);
  CHECK_THROWS_AS(Profile({1, 1}, {}), InvalidInstance);
  CHECK_THROWS_AS(Profile({1, 1, 1}, {S({1, 2})}), InvalidInstance);
  CHECK_THROWS_AS(Profile({1, 1}, {S({1, 2})}, {0}), InvalidInstance);
  CHECK_THROWS_AS(Profile({1, 1}, {S({1, 2})}, {1, 2}), InvalidInstance);
}

TEST_CASE("profile merges identical rankings and computes due dates") {
  const Profile p({2, 3}, {S({1, 2}), S({2, 1}), S({1, 2})}, {3, 1, 2});
  CHECK(p.num_agents() == 6);
  CHECK(p.num_distinct() == 2);
  CHECK(p.multiplicities()[0] == 5);
  CHECK(p.multiplicities()[1] == 1);
  CHECK(p.due_dates()[0][0] == 2);
  CHECK(p.due_dates()[0][1] == 5);
  CHECK(p.due_dates()[1][1] == 3);
  CHECK(p.due_dates()[1][0] == 5);
  CHECK(p.total_length() == 5);
  CHECK(p.label(1) == "J2");
  CHECK_FALSE(p.equal_lengths());
  CHECK(p.with_unit_lengths().equal_lengths());

  const Profile q = p.merged_with(Profile({2, 3}, {S({2, 1})}));
  CHECK(q.num_agents() == 7);
  CHECK(q.multiplicities()[1] == 2);
}

TEST_CASE("schedule formatting uses labels") {
  const auto p = testing_support::long_long_short(1, 1, 1, 1, 10);
  CHECK(format_schedule(S({3, 1, 2}), p) == "Js,L1,L2");
  CHECK(format_schedule(S({2, 1})) == "J2,J1");
}

TEST_CASE("rationals normalise") {
  const auto r = Rational::make(6, 8);
  CHECK(r.num == 3);
  CHECK(r.den == 4);
  CHECK(Rational::make(0, 5) == Rational::make(0, 1));
  CHECK(Rational::make(1, 3) < Rational::make(1, 2));
  CHECK(to_string(Value(-12345678901234567)) == "-12345678901234567");
  CHECK(to_string(Value(1) << 100) == "1267650600228229401496703205376");
}

TEST_CASE("cost specs") {
  CHECK(parse_cost_kind("SD") == CostKind::SD);
  CHECK_FALSE(parse_cost_kind("X").has_value());
  CHECK(parse_aggregation("lp") == Aggregation::Lp);
  CHECK_THROWS_AS((CostSpec{CostKind::T, Aggregation::Lp, 1}.validate()), InvalidSpec);
  CHECK(CostSpec{CostKind::SD, Aggregation::Lp, 3}.name() == "l3-SD");
  CHECK(CostSpec{CostKind::T, Aggregation::Max, 2}.name() == "max-T");
}
