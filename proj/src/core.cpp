#include "collsched/core.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#ifndef COLLSCHED_VERSION
#define COLLSCHED_VERSION "unknown"
#endif

namespace collsched {

std::string_view version() { return COLLSCHED_VERSION; }

std::string to_string(Value v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work with the negative magnitude so INT128_MIN does not overflow.
  Value x = negative ? v : -v;
  std::string out;
  while (x != 0) {
    const int digit = -static_cast<int>(x % 10);
    out.push_back(static_cast<char>('0' + digit));
    x /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

Rational Rational::make(Value num, Value den) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Value a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    const Value t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return {num, den};
}

std::string to_string(const Rational& r) {
  return to_string(r.num) + "/" + to_string(r.den);
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

Schedule::Schedule(std::vector<JobId> order) : order_(std::move(order)) {
  const int m = static_cast<int>(order_.size());
  pos_.assign(m, -1);
  for (int k = 0; k < m; ++k) {
    const JobId j = order_[k];
    if (j < 0 || j >= m) {
      throw InvalidInstance("schedule refers to unknown job id " +
                            std::to_string(j));
    }
    if (pos_[j] != -1) {
      throw InvalidInstance("schedule lists job id " + std::to_string(j) +
                            " twice");
    }
    pos_[j] = k;
  }
}

Schedule Schedule::identity(int m) {
  std::vector<JobId> order(m);
  std::iota(order.begin(), order.end(), 0);
  return Schedule(std::move(order));
}

int Schedule::position(JobId job) const {
  if (job < 0 || job >= size()) {
    throw InvalidInstance("unknown job id " + std::to_string(job));
  }
  return pos_[job];
}

bool Schedule::precedes(JobId a, JobId b) const {
  return position(a) < position(b);
}

std::vector<Length> completion_times(const Schedule& schedule,
                                     std::span<const Length> lengths) {
  if (static_cast<std::size_t>(schedule.size()) != lengths.size()) {
    throw InvalidInstance("schedule has " + std::to_string(schedule.size()) +
                          " jobs but the instance has " +
                          std::to_string(lengths.size()));
  }
  std::vector<Length> c(lengths.size());
  Length t = 0;
  for (JobId j : schedule.order()) {
    t += lengths[j];
    c[j] = t;
  }
  return c;
}

std::vector<Length> completion_times(const Schedule& schedule,
                                     std::span<const Job> jobs) {
  std::vector<Length> lengths(jobs.size(), 0);
  for (const Job& job : jobs) {
    if (job.id < 0 || static_cast<std::size_t>(job.id) >= jobs.size() ||
        lengths[job.id] != 0) {
      throw InvalidInstance("job ids must be dense and unique");
    }
    if (job.processing_time < 1) {
      throw InvalidInstance("processing times must be positive");
    }
    lengths[job.id] = job.processing_time;
  }
  return completion_times(schedule, lengths);
}

int position(JobId job, const Schedule& schedule) {
  return schedule.position(job);
}

bool precedes(JobId a, JobId b, const Schedule& schedule) {
  return schedule.precedes(a, b);
}

Profile::Profile(std::vector<Length> lengths, std::vector<Schedule> preferred,
                 std::vector<std::int64_t> multiplicities,
                 std::vector<std::string> labels)
    : lengths_(std::move(lengths)) {
  const int m = num_jobs();
  if (m < 1) throw InvalidInstance("an instance needs at least one job");
  for (Length p : lengths_) {
    if (p < 1) throw InvalidInstance("processing times must be positive");
    total_length_ += p;
  }
  if (multiplicities.empty()) multiplicities.assign(preferred.size(), 1);
  if (multiplicities.size() != preferred.size()) {
    throw InvalidInstance("one multiplicity per preferred schedule required");
  }
  std::map<std::vector<JobId>, std::size_t> seen;
  for (std::size_t a = 0; a < preferred.size(); ++a) {
    if (preferred[a].size() != m) {
      throw InvalidInstance("preferred schedule " + std::to_string(a) +
                            " is not a permutation of the job set");
    }
    if (multiplicities[a] < 1) {
      throw InvalidInstance("multiplicities must be positive");
    }
    auto [it, inserted] = seen.emplace(preferred[a].order(), preferred_.size());
    if (inserted) {
      preferred_.push_back(preferred[a]);
      multiplicities_.push_back(multiplicities[a]);
    } else {
      multiplicities_[it->second] += multiplicities[a];
    }
    num_agents_ += multiplicities[a];
  }
  if (num_agents_ < 1) throw InvalidInstance("a profile needs at least one agent");

  if (labels.empty()) {
    for (int j = 0; j < m; ++j) labels.push_back("J" + std::to_string(j + 1));
  }
  if (static_cast<int>(labels.size()) != m) {
    throw InvalidInstance("one label per job required");
  }
  labels_ = std::move(labels);

  due_.reserve(preferred_.size());
  for (const Schedule& s : preferred_) {
    due_.push_back(completion_times(s, lengths_));
  }
}

std::vector<Job> Profile::jobs() const {
  std::vector<Job> out;
  out.reserve(lengths_.size());
  for (int j = 0; j < num_jobs(); ++j) out.push_back({j, lengths_[j]});
  return out;
}

bool Profile::equal_lengths() const {
  return std::all_of(lengths_.begin(), lengths_.end(),
                     [&](Length p) { return p == lengths_.front(); });
}

Profile Profile::with_lengths(std::vector<Length> lengths) const {
  if (static_cast<int>(lengths.size()) != num_jobs()) {
    throw InvalidSpec("expected " + std::to_string(num_jobs()) +
                      " lengths, got " + std::to_string(lengths.size()));
  }
  return Profile(std::move(lengths), preferred_, multiplicities_, labels_);
}

Profile Profile::with_unit_lengths() const {
  return with_lengths(std::vector<Length>(lengths_.size(), 1));
}

Profile Profile::merged_with(const Profile& other) const {
  if (other.lengths_ != lengths_) {
    throw InvalidInstance("profiles must share the same jobs to be merged");
  }
  std::vector<Schedule> pref = preferred_;
  std::vector<std::int64_t> mult = multiplicities_;
  pref.insert(pref.end(), other.preferred_.begin(), other.preferred_.end());
  mult.insert(mult.end(), other.multiplicities_.begin(),
              other.multiplicities_.end());
  return Profile(lengths_, std::move(pref), std::move(mult), labels_);
}

bool operator==(const Profile& a, const Profile& b) {
  return a.lengths_ == b.lengths_ && a.preferred_ == b.preferred_ &&
         a.multiplicities_ == b.multiplicities_ && a.labels_ == b.labels_;
}

std::string format_schedule(const Schedule& schedule, const Profile& profile) {
  std::string out;
  for (int k = 0; k < schedule.size(); ++k) {
    if (k) out += ',';
    out += profile.label(schedule[k]);
  }
  return out;
}

std::string format_schedule(const Schedule& schedule) {
  std::string out;
  for (int k = 0; k < schedule.size(); ++k) {
    if (k) out += ',';
    out += 'J' + std::to_string(schedule[k] + 1);
  }
  return out;
}

namespace {
constexpr std::string_view kCostNames[] = {"K", "S", "T", "U",
                                           "L", "E", "D", "SD"};
}

std::string_view to_string(CostKind kind) {
  return kCostNames[static_cast<int>(kind)];
}

std::string_view to_string(Aggregation agg) {
  switch (agg) {
    case Aggregation::Sum:
      return "sum";
    case Aggregation::Max:
      return "max";
    case Aggregation::Lp:
      return "lp";
  }
  return "?";
}

std::optional<CostKind> parse_cost_kind(std::string_view s) {
  for (int k = 0; k < 8; ++k) {
    if (kCostNames[k] == s) return static_cast<CostKind>(k);
  }
  return std::nullopt;
}

std::optional<Aggregation> parse_aggregation(std::string_view s) {
  if (s == "sum") return Aggregation::Sum;
  if (s == "max") return Aggregation::Max;
  if (s == "lp") return Aggregation::Lp;
  return std::nullopt;
}

void CostSpec::validate() const {
  if (aggregation == Aggregation::Lp && p < 2) {
    throw InvalidSpec("L_p aggregation needs p >= 2 (p = 1 is the sum)");
  }
}

std::string CostSpec::name() const {
  std::string agg = aggregation == Aggregation::Lp
                        ? "l" + std::to_string(p)
                        : std::string(to_string(aggregation));
  return agg + "-" + std::string(to_string(cost));
}

}  // namespace collsched
