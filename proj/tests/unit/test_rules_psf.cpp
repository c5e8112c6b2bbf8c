#include <doctest.h>

#include <random>

#include "collsched/rules_psf.hpp"
#include "support.hpp"

using namespace collsched;
using testing_support::S;

namespace {

// Sum over agents of h(total length after the job), from raw rankings.
Value tally(const testing_support::RawInstance& inst, int job,
            Value (*h)(Length)) {
  Value total = 0;
  for (const auto& order : inst.agents) {
    Length after = 0;
    bool seen = false;
    for (int j : order) {
      if (seen) after += inst.lengths[j];
      if (j == job) seen = true;
    }
    total += h(after);
  }
  return total;
}

Value id_h(Length x) { return x; }
Value sq_h(Length x) { return Value(x) * x; }

}  // namespace

TEST_CASE("long jobs outscore the short one on the long-long-short instance") {
  const Profile p = testing_support::long_long_short(151, 151, 49, 49, 10);
  const auto raw = testing_support::raw_of(p);
  const auto scores = h_scores(p, ScoreTransform::identity());
  for (int j = 0; j < 3; ++j) CHECK(scores[j] == tally(raw, j, id_h));
  CHECK(scores[2] < scores[0]);
  CHECK(scores[2] < scores[1]);
  const Schedule s = psf_rule(p, ScoreTransform::identity());
  CHECK(s[2] == 2);
}

TEST_CASE("single agent scores") {
  const Profile p({3, 4, 5}, {S({2, 3, 1})});
  CHECK(h_score(0, p, ScoreTransform::identity()) == 0);
  CHECK(h_score(0, p, ScoreTransform::square()) == 0);
  CHECK(h_score(1, p, ScoreTransform::identity()) == 8);
  CHECK(h_score(1, p, ScoreTransform::square()) == 64);
  CHECK(psf_rule(p, ScoreTransform::identity()) == S({2, 3, 1}));
  CHECK(psf_rule(p, ScoreTransform::square()) == S({2, 3, 1}));
}

TEST_CASE("single agent always gets her own schedule") {
  std::mt19937_64 gen(8);
  for (int t = 0; t < 50; ++t) {
    const auto inst = testing_support::random_instance(gen, 1 + gen() % 7, 1, 9);
    const Profile p = inst.profile();
    CHECK(psf_rule(p, ScoreTransform::identity()) == Schedule(inst.agents[0]));
  }
}

TEST_CASE("unit lengths with identity h give the Borda order") {
  std::mt19937_64 gen(314);
  for (int t = 0; t < 20; ++t) {
    const auto inst = testing_support::random_instance(gen, 5, 20, 1);
    std::vector<int> borda(5, 0);
    for (const auto& order : inst.agents) {
      for (int k = 0; k < 5; ++k) borda[order[k]] += 4 - k;
    }
    std::vector<int> expect{0, 1, 2, 3, 4};
    std::stable_sort(expect.begin(), expect.end(),
                     [&](int a, int b) { return borda[a] > borda[b]; });
    CHECK(psf_rule(inst.profile(), ScoreTransform::identity()).order() == expect);
  }
}

TEST_CASE("scores match the tally oracle on random instances") {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 50; ++t) {
    const auto inst = testing_support::random_instance(gen, 2 + gen() % 6, 7, 10);
    const Profile p = inst.profile();
    for (int j = 0; j < p.num_jobs(); ++j) {
      CHECK(h_score(j, p, ScoreTransform::identity()) == tally(inst, j, id_h));
      CHECK(h_score(j, p, ScoreTransform::square()) == tally(inst, j, sq_h));
    }
  }
}

TEST_CASE("ties go to the shorter job") {
  const Profile p({5, 2}, {S({1, 2}), S({2, 1})});
  // Scores: J1 gets 2, J2 gets 5; not a tie, J2 first.
  CHECK(psf_rule(p, ScoreTransform::identity()) == S({2, 1}));
  const Profile q({3, 3, 1}, {S({1, 2, 3}), S({2, 1, 3})});
  CHECK(psf_rule(q, ScoreTransform::identity()) == S({1, 2, 3}));
}

TEST_CASE("table transforms must be strictly increasing") {
  const auto h = ScoreTransform::table({0, 1, 5, 6, 20});
  CHECK(h(2) == 5);
  CHECK_NOTHROW(h.validate(4));
  CHECK_THROWS_AS(h.validate(5), InvalidSpec);
  CHECK_THROWS_AS(ScoreTransform::table({0, 2, 2}).validate(2), InvalidSpec);
  const Profile p({1, 1, 1}, {S({3, 1, 2})});
  CHECK(psf_rule(p, ScoreTransform::table({0, 1, 5, 9})) == S({3, 1, 2}));
}
