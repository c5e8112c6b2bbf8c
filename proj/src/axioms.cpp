#include "collsched/axioms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "collsched/profiles.hpp"
#include "collsched/rng.hpp"
#include "collsched/rules_condorcet.hpp"
#include "collsched/rules_cost.hpp"

namespace collsched {
namespace {

std::string pair_text(const Profile& profile, JobId k, JobId l) {
  return "(" + profile.label(k) + "," + profile.label(l) + ")";
}

std::string describe(const Profile& profile) {
  std::ostringstream out;
  out << "lengths=";
  for (int j = 0; j < profile.num_jobs(); ++j) {
    out << (j ? "," : "") << profile.length(j);
  }
  out << " prefs=";
  for (int a = 0; a < profile.num_distinct(); ++a) {
    out << (a ? " " : "") << profile.multiplicities()[a] << "x["
        << format_schedule(profile.preferred()[a], profile) << "]";
  }
  return out.str();
}

}  // namespace

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::Pareto:
      return "pareto";
    case Axiom::Reinforcement:
      return "reinforcement";
    case Axiom::PtaCondorcet:
      return "pta";
  }
  return "?";
}

AxiomReport check_pareto(const Schedule& schedule, const Profile& profile) {
  if (schedule.size() != profile.num_jobs()) {
    throw InvalidInstance("schedule does not match the instance's job set");
  }
  AxiomReport r;
  r.axiom = Axiom::Pareto;
  const int m = profile.num_jobs();
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      if (k == l || !schedule.precedes(l, k)) continue;
      const bool unanimous = std::all_of(
          profile.preferred().begin(), profile.preferred().end(),
          [&](const Schedule& s) { return s.precedes(k, l); });
      if (unanimous) {
        r.pairs.emplace_back(k, l);
        r.witnesses.push_back("all agents prefer " + profile.label(k) +
                              " before " + profile.label(l));
      }
    }
  }
  r.holds = r.pairs.empty();
  return r;
}

AxiomReport check_pta_condorcet(const Schedule& schedule,
                                const Profile& profile) {
  const auto c = is_pta_condorcet_consistent(schedule, profile);
  AxiomReport r;
  r.axiom = Axiom::PtaCondorcet;
  for (auto [k, l] : c.violated) {
    r.pairs.emplace_back(k, l);
    r.witnesses.push_back(profile.label(k) + " PTA-beats " + profile.label(l) +
                          " but runs after it");
  }
  for (auto [k, l] : c.mutual) {
    r.witnesses.push_back(pair_text(profile, k, l) +
                          " beat each other exactly at the threshold");
  }
  r.holds = c.consistent;
  return r;
}

Rational paradox_rate(const Schedule& schedule, const Profile& profile) {
  const std::int64_t m = profile.num_jobs();
  if (m < 2) throw InvalidSpec("paradox rate needs at least two jobs");
  const auto c = is_pta_condorcet_consistent(schedule, profile);
  return Rational::make(static_cast<Value>(c.violated.size()), m * (m - 1) / 2);
}

ReinforcementOutcome check_reinforcement(const Rule& rule, const Profile& first,
                                         const Profile& second) {
  const Profile joint = first.merged_with(second);
  if (rule.kind == Rule::Kind::Cost) {
    const auto a = brute_force(first, rule.cost);
    const auto b = brute_force(second, rule.cost);
    if (a.optimal_count != 1 || b.optimal_count != 1) {
      return ReinforcementOutcome::Tied;
    }
    if (!(a.schedule == b.schedule)) return ReinforcementOutcome::Disagree;
    const auto u = brute_force(joint, rule.cost);
    if (u.optimal_count != 1) return ReinforcementOutcome::Tied;
    return u.schedule == a.schedule ? ReinforcementOutcome::Holds
                                    : ReinforcementOutcome::Violated;
  }
  const Schedule a = apply_rule(rule, first);
  const Schedule b = apply_rule(rule, second);
  if (!(a == b)) return ReinforcementOutcome::Disagree;
  return apply_rule(rule, joint) == a ? ReinforcementOutcome::Holds
                                      : ReinforcementOutcome::Violated;
}

AxiomReport test_reinforcement(const Rule& rule, int max_jobs,
                               std::int64_t trials, std::uint64_t seed) {
  if (max_jobs < 2) throw InvalidSpec("reinforcement trials need >= 2 jobs");
  if (rule.kind == Rule::Kind::Cost && max_jobs > 6) {
    throw CapacityError("tie detection by brute force is limited to 6 jobs");
  }
  AxiomReport r;
  r.axiom = Axiom::Reinforcement;
  Rng rng(seed);
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    ++r.trials;
    const int m = static_cast<int>(rng.uniform_int(2, max_jobs));
    // Both electorates are drawn around a shared reference; unit lengths in a
    // third of the trials.
    std::vector<JobId> reference(m);
    std::iota(reference.begin(), reference.end(), 0);
    for (int i = m - 1; i > 0; --i) {
      std::swap(reference[i], reference[rng.below(i + 1)]);
    }
    const double phi = 0.2 + 0.7 * rng.uniform01();
    const Length p_max = rng.below(3) == 0 ? 1 : rng.uniform_int(2, 8);
    const auto n1 = rng.uniform_int(1, 7), n2 = rng.uniform_int(1, 7);
    const auto lengths =
        assign_lengths(generate_impartial(m, 1, 0), LengthSpec::uniform(p_max),
                       rng.next())
            .lengths();
    const Profile first =
        generate_mallows(m, n1, phi, reference, rng.next()).with_lengths(lengths);
    const Profile second =
        generate_mallows(m, n2, phi, reference, rng.next()).with_lengths(lengths);

    switch (check_reinforcement(rule, first, second)) {
      case ReinforcementOutcome::Tied:
        ++r.skipped;
        break;
      case ReinforcementOutcome::Disagree:
        break;
      case ReinforcementOutcome::Holds:
        ++r.checked;
        break;
      case ReinforcementOutcome::Violated: {
        ++r.checked;
        const Schedule common = apply_rule(rule, first);
        const Schedule joint = apply_rule(rule, first.merged_with(second));
        r.witnesses.push_back(
            "trial " + std::to_string(trial) + ": N1 {" + describe(first) +
            "} and N2 {" + describe(second) + "} both get [" +
            format_schedule(common, first) + "], union gets [" +
            format_schedule(joint, first) + "]");
        break;
      }
    }
  }
  r.holds = r.witnesses.empty();
  return r;
}

}  // namespace collsched
