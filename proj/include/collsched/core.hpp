#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace collsched {

using JobId = int;
using Length = std::int64_t;
// Per-agent cost. Bounded by m * total_length^2 which fits comfortably for the
// documented capacity (n <= 1e4, m <= 32, p_max <= 1e3).
using Cost = std::int64_t;
// Aggregated objective; L_p powers need more than 64 bits.
using Value = __int128;

std::string to_string(Value v);

// Library version string, e.g. "0.1.0".
std::string_view version();

// Error hierarchy. Every error raised by the library derives from Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InvalidInstance : public Error {
 public:
  using Error::Error;
};
class InvalidSpec : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};
class CapacityError : public Error {
 public:
  using Error::Error;
};
class UnsupportedCombination : public Error {
 public:
  using Error::Error;
};
class PreconditionError : public Error {
 public:
  using Error::Error;
};

struct Job {
  JobId id = 0;
  Length processing_time = 1;
};

// A gap-free ordering of jobs; position 0 executes first.
class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(std::vector<JobId> order);

  static Schedule identity(int m);

  const std::vector<JobId>& order() const { return order_; }
  int size() const { return static_cast<int>(order_.size()); }
  JobId operator[](int k) const { return order_[k]; }

  // Number of jobs scheduled before `job`.
  int position(JobId job) const;
  bool precedes(JobId a, JobId b) const;
  // pos[j] for every job j.
  const std::vector<int>& positions() const { return pos_; }

  friend bool operator==(const Schedule& a, const Schedule& b) {
    return a.order_ == b.order_;
  }
  friend bool operator<(const Schedule& a, const Schedule& b) {
    return a.order_ < b.order_;
  }

 private:
  std::vector<JobId> order_;
  std::vector<int> pos_;
};

// Completion times C_j indexed by job id.
std::vector<Length> completion_times(const Schedule& schedule,
                                     std::span<const Length> lengths);
std::vector<Length> completion_times(const Schedule& schedule,
                                     std::span<const Job> jobs);

int position(JobId job, const Schedule& schedule);
bool precedes(JobId a, JobId b, const Schedule& schedule);

// Jobs with lengths, plus one preferred schedule per distinct ranking and the
// number of agents holding it. Immutable after construction.
class Profile {
 public:
  Profile() = default;
  // Identical rankings are merged; first-occurrence order is kept.
  Profile(std::vector<Length> lengths, std::vector<Schedule> preferred,
          std::vector<std::int64_t> multiplicities = {},
          std::vector<std::string> labels = {});

  int num_jobs() const { return static_cast<int>(lengths_.size()); }
  // Total number of agents n.
  std::int64_t num_agents() const { return num_agents_; }
  int num_distinct() const { return static_cast<int>(preferred_.size()); }

  const std::vector<Length>& lengths() const { return lengths_; }
  Length length(JobId j) const { return lengths_[j]; }
  Length total_length() const { return total_length_; }
  std::vector<Job> jobs() const;
  bool equal_lengths() const;

  const std::vector<Schedule>& preferred() const { return preferred_; }
  const std::vector<std::int64_t>& multiplicities() const {
    return multiplicities_;
  }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(JobId j) const { return labels_[j]; }

  // Due dates d_aj = C_j(sigma_a), row per distinct ranking.
  const std::vector<std::vector<Length>>& due_dates() const { return due_; }

  // Same rankings, different lengths.
  Profile with_lengths(std::vector<Length> lengths) const;
  Profile with_unit_lengths() const;
  // Agents of both profiles over the same job set.
  Profile merged_with(const Profile& other) const;

  friend bool operator==(const Profile& a, const Profile& b);

 private:
  std::vector<Length> lengths_;
  std::vector<Schedule> preferred_;
  std::vector<std::int64_t> multiplicities_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Length>> due_;
  std::int64_t num_agents_ = 0;
  Length total_length_ = 0;
};

// "J1,J3,J2" style rendering using the profile's labels.
std::string format_schedule(const Schedule& schedule, const Profile& profile);
std::string format_schedule(const Schedule& schedule);

// Exact nonnegative fraction; used for rates and Gini indices.
struct Rational {
  Value num = 0;
  Value den = 1;

  static Rational make(Value num, Value den);
  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num * b.den == b.num * a.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
};
std::string to_string(const Rational& r);

enum class CostKind { K, S, T, U, L, E, D, SD };
enum class Aggregation { Sum, Max, Lp };

std::string_view to_string(CostKind kind);
std::string_view to_string(Aggregation agg);
std::optional<CostKind> parse_cost_kind(std::string_view s);
std::optional<Aggregation> parse_aggregation(std::string_view s);

inline bool is_swap_cost(CostKind k) {
  return k == CostKind::K || k == CostKind::S;
}

struct CostSpec {
  CostKind cost = CostKind::T;
  Aggregation aggregation = Aggregation::Sum;
  int p = 2;

  // Throws InvalidSpec when aggregation is Lp with p < 2.
  void validate() const;
  std::string name() const;  // e.g. "sum-T", "max-T", "l3-SD"
};

}  // namespace collsched
