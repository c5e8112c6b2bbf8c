#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "collsched/core.hpp"
#include "collsched/profiles.hpp"
#include "collsched/rule.hpp"

namespace collsched {

// sum_i sum_j w_i w_j |x_i - x_j| / (2 W sum_i w_i x_i); 0 when all x are 0.
// Throws InvalidSpec on an empty list or a negative entry.
Rational gini(std::span<const Cost> values);
Rational gini(std::span<const Cost> values, std::span<const std::int64_t> weights);

struct PositionStats {
  double sum = 0;
  double sum_sq = 0;
  std::int64_t count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  void merge(const PositionStats& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    count += o.count;
  }
  double mean() const { return count ? sum / count : 0.0; }
  double stddev() const;
};

// For each job: position under `rule` minus position under the same rule on
// the same rankings with all lengths set to 1, grouped by job length.
std::map<Length, PositionStats> position_change_profile(const Profile& profile,
                                                        const Rule& rule);

struct ExperimentSpec {
  ProfileSource source;  // lengths are taken from p_max below
  Length p_max = 10;
  int instances = 100;
  std::vector<std::string> rules = {"sum-T", "max-T", "pta-copeland"};
  std::uint64_t seed = 1;
  int workers = 1;

  void validate() const;
  std::string describe() const;  // key = value lines
};

struct ExperimentRow {
  int instance = 0;
  std::string rule;
  Value sum_t = 0;
  Value max_t = 0;
  Rational paradox;
  Rational gini;
  std::string error;  // nonempty when the instance failed
};

struct InstanceSummary {
  int instance = 0;
  bool ok = false;
  std::string error;
  double paradox_sum_t = 0, paradox_max_t = 0;
  double copeland_ratio_sum = 0, copeland_ratio_max = 0;
  double delta_gini = 0;
};

struct MeanStd {
  double mean = 0;
  double stddev = 0;
  std::int64_t count = 0;
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<ExperimentRow> rows;              // by instance, then rule
  std::vector<InstanceSummary> per_instance;    // by instance
  std::map<std::string, std::map<Length, PositionStats>> positions;  // rule
  MeanStd paradox_sum_t, paradox_max_t;
  MeanStd copeland_ratio_sum, copeland_ratio_max;
  MeanStd delta_gini;
  int failed = 0;
};

// Runs `spec.instances` independent instances on a pool of spec.workers
// threads. Output order is by instance id; results depend only on the spec.
ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_rows_csv(std::ostream& out, const ExperimentResult& result);
void write_summary_csv(std::ostream& out, const ExperimentResult& result);
void write_positions_csv(std::ostream& out, const ExperimentResult& result);
void write_metadata(std::ostream& out, const ExperimentResult& result);

// Flat "key = value" spec file; unknown keys are errors, missing keys keep
// their defaults.
ExperimentSpec parse_experiment_spec(std::istream& in);

}  // namespace collsched
