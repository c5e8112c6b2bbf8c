#include "collsched/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "collsched/axioms.hpp"
#include "collsched/costs.hpp"
#include "collsched/rng.hpp"
#include "collsched/rules_condorcet.hpp"
#include "collsched/rules_cost.hpp"


namespace collsched {
namespace {

std::string fixed6(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << x;
  return s.str();
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd r;
  r.count = static_cast<std::int64_t>(xs.size());
  if (xs.empty()) return r;
  double sum = 0;
  for (double x : xs) sum += x;
  r.mean = sum / xs.size();
  double ss = 0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.stddev = xs.size() > 1 ? std::sqrt(ss / (xs.size() - 1)) : 0.0;
  return r;
}

double ratio(Value num, Value den) {
  if (den == 0) return num == 0 ? 1.0 : INFINITY;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string_view source_name(ProfileSource::Kind kind) {
  switch (kind) {
    case ProfileSource::Kind::PreflibFile:
      return "preflib";
    case ProfileSource::Kind::Mallows:
      return "mallows";
    case ProfileSource::Kind::ImpartialCulture:
      return "impartial";
  }
  return "?";
}

struct InstanceOutput {
  std::vector<ExperimentRow> rows;
  InstanceSummary summary;
  std::map<std::string, std::map<Length, PositionStats>> positions;
};

InstanceOutput run_instance(const ExperimentSpec& spec, const Profile* base,
                            int instance) {
  InstanceOutput out;
  out.summary.instance = instance;
  try {
    Profile profile;
    const LengthSpec lengths = LengthSpec::uniform(spec.p_max);
    if (base) {
      profile = assign_lengths(*base, lengths, derive_seed(spec.seed, instance));
    } else {
      ProfileSource source = spec.source;
      source.lengths = lengths;
      source.seed = derive_seed(spec.seed, instance);
      profile = make_profile(source);
    }

    const CostSpec sum_t{CostKind::T, Aggregation::Sum, 2};
    const CostSpec max_t{CostKind::T, Aggregation::Max, 2};
    const auto sum_opt = solve(profile, sum_t);
    const auto max_opt = solve(profile, max_t);
    const Schedule copeland = pta_copeland(profile);

    auto evaluate = [&](const std::string& name, const Schedule& s) {
      ExperimentRow row;
      row.instance = instance;
      row.rule = name;
      const auto costs = cost_vector(CostKind::T, profile, s);
      row.sum_t = aggregate(sum_t, costs);
      row.max_t = aggregate(max_t, costs);
      row.paradox = paradox_rate(s, profile);
      row.gini = gini(costs.per_ranking, costs.weights);
      return row;
    };

    for (const std::string& name : spec.rules) {
      const Rule rule = Rule::parse(name);
      Schedule s;
      if (rule.kind == Rule::Kind::Cost && rule.cost.name() == "sum-T") {
        s = sum_opt.schedule;
      } else if (rule.kind == Rule::Kind::Cost && rule.cost.name() == "max-T") {
        s = max_opt.schedule;
      } else if (rule.kind == Rule::Kind::PtaCopeland) {
        s = copeland;
      } else {
        s = apply_rule(rule, profile);
      }
      out.rows.push_back(evaluate(name, s));
      const Schedule unit = apply_rule(rule, profile.with_unit_lengths());
      auto& per_length = out.positions[name];
      for (int j = 0; j < profile.num_jobs(); ++j) {
        per_length[profile.length(j)].add(s.position(j) - unit.position(j));
      }
    }

    const auto sum_row = evaluate("sum-T", sum_opt.schedule);
    const auto max_row = evaluate("max-T", max_opt.schedule);
    const auto cope_row = evaluate("pta-copeland", copeland);
    auto& sm = out.summary;
    sm.paradox_sum_t = sum_row.paradox.to_double();
    sm.paradox_max_t = max_row.paradox.to_double();
    sm.copeland_ratio_sum = ratio(cope_row.sum_t, sum_row.sum_t);
    sm.copeland_ratio_max = ratio(cope_row.max_t, max_row.max_t);
    sm.delta_gini = max_row.gini.to_double() - sum_row.gini.to_double();
    sm.ok = true;
  } catch (const Error& e) {
    out.summary.ok = false;
    out.summary.error = e.what();
    out.rows.clear();
    out.positions.clear();
    ExperimentRow row;
    row.instance = instance;
    row.rule = "-";
    row.error = e.what();
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace

double PositionStats::stddev() const {
  if (count < 2) return 0.0;
  const double m = mean();
  return std::sqrt(std::max(0.0, (sum_sq - count * m * m) / (count - 1)));
}

Rational gini(std::span<const Cost> values,
              std::span<const std::int64_t> weights) {
  if (values.empty()) throw InvalidSpec("Gini index of an empty vector");
  if (weights.size() != values.size()) {
    throw InvalidSpec("one weight per value required");
  }
  std::vector<std::pair<Cost, std::int64_t>> xs;
  Value total_w = 0, total = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0) throw InvalidSpec("Gini index needs nonnegative values");
    if (weights[i] < 1) throw InvalidSpec("weights must be positive");
    xs.emplace_back(values[i], weights[i]);
    total_w += weights[i];
    total += static_cast<Value>(values[i]) * weights[i];
  }
  if (total == 0) return {0, 1};
  std::sort(xs.begin(), xs.end());
  // sum_{i,j} w_i w_j |x_i - x_j| = 2 sum_i w_i x_i (W_below_i - W_above_i)
  // over the sorted order.
  Value pair_sum = 0, below_w = 0;
  for (const auto& [x, w] : xs) {
    const Value above_w = total_w - below_w - w;
    pair_sum += static_cast<Value>(w) * x * (below_w - above_w);
    below_w += w;
  }
  pair_sum *= 2;
  return Rational::make(pair_sum, 2 * total_w * total);
}

Rational gini(std::span<const Cost> values) {
  const std::vector<std::int64_t> ones(values.size(), 1);
  return gini(values, ones);
}

std::map<Length, PositionStats> position_change_profile(const Profile& profile,
                                                        const Rule& rule) {
  const Schedule s = apply_rule(rule, profile);
  const Schedule unit = apply_rule(rule, profile.with_unit_lengths());
  std::map<Length, PositionStats> out;
  for (int j = 0; j < profile.num_jobs(); ++j) {
    out[profile.length(j)].add(s.position(j) - unit.position(j));
  }
  return out;
}

void ExperimentSpec::validate() const {
  if (instances < 1) throw InvalidSpec("instances must be at least 1");
  if (p_max < 1) throw InvalidSpec("p_max must be at least 1");
  if (workers < 1) throw InvalidSpec("workers must be at least 1");
  if (rules.empty()) throw InvalidSpec("at least one rule required");
  for (const auto& r : rules) Rule::parse(r);
  ProfileSource s = source;
  s.lengths = LengthSpec::uniform(p_max);
  s.validate();
}

std::string ExperimentSpec::describe() const {
  std::ostringstream out;
  out << "model = " << source_name(source.kind) << '\n';
  if (source.kind == ProfileSource::Kind::PreflibFile) {
    out << "preflib = " << source.path << '\n';
  } else {
    out << "m = " << source.m << '\n' << "n = " << source.n << '\n';
  }
  if (source.kind == ProfileSource::Kind::Mallows) {
    out << "phi = " << source.dispersion << '\n';
  }
  out << "pmax = " << p_max << '\n';
  out << "instances = " << instances << '\n';
  out << "seed = " << seed << '\n';
  out << "rules = ";
  for (std::size_t i = 0; i < rules.size(); ++i) out << (i ? "," : "") << rules[i];
  out << '\n' << "jobs = " << workers << '\n';
  return out.str();
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::optional<Profile> base;
  if (spec.source.kind == ProfileSource::Kind::PreflibFile) {
    base = load_instance_file(spec.source.path);
  }

  std::vector<InstanceOutput> outputs(spec.instances);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < spec.instances; i = next++) {
      outputs[i] = run_instance(spec, base ? &*base : nullptr, i);
    }
  };
  const int threads = std::min(spec.workers, spec.instances);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ExperimentResult result;
  result.spec = spec;
  std::vector<double> ps, pm, rs, rm, dg;
  for (auto& o : outputs) {
    result.rows.insert(result.rows.end(), o.rows.begin(), o.rows.end());
    result.per_instance.push_back(o.summary);
    for (auto& [rule, per_length] : o.positions) {
      for (auto& [len, stats] : per_length) result.positions[rule][len].merge(stats);
    }
    if (!o.summary.ok) {
      ++result.failed;
      continue;
    }
    ps.push_back(o.summary.paradox_sum_t);
    pm.push_back(o.summary.paradox_max_t);
    rs.push_back(o.summary.copeland_ratio_sum);
    rm.push_back(o.summary.copeland_ratio_max);
    dg.push_back(o.summary.delta_gini);
  }
  result.paradox_sum_t = mean_std(ps);
  result.paradox_max_t = mean_std(pm);
  result.copeland_ratio_sum = mean_std(rs);
  result.copeland_ratio_max = mean_std(rm);
  result.delta_gini = mean_std(dg);
  return result;
}

void write_rows_csv(std::ostream& out, const ExperimentResult& result) {
  out << "instance,rule,sum_T,max_T,paradox_rate,gini,error\n";
  for (const auto& r : result.rows) {
    out << r.instance << ',' << quoted(r.rule) << ',';
    if (r.error.empty()) {
      out << to_string(r.sum_t) << ',' << to_string(r.max_t) << ','
          << fixed6(r.paradox.to_double()) << ',' << fixed6(r.gini.to_double())
          << ",\"\"\n";
    } else {
      out << ",,,," << quoted(r.error) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const ExperimentResult& result) {
  const auto& s = result.spec;
  out << "source,m,n,p_max,instances,failed,"
         "paradox_sum_T_mean,paradox_sum_T_std,"
         "paradox_max_T_mean,paradox_max_T_std,"
         "copeland_ratio_sum_T_mean,copeland_ratio_sum_T_std,"
         "copeland_ratio_max_T_mean,copeland_ratio_max_T_std,"
         "delta_gini_mean,delta_gini_std\n";
  out << quoted(std::string(source_name(s.source.kind))) << ',' << s.source.m
      << ',' << s.source.n << ',' << s.p_max << ',' << s.instances << ','
      << result.failed;
  for (const MeanStd* ms :
       {&result.paradox_sum_t, &result.paradox_max_t, &result.copeland_ratio_sum,
        &result.copeland_ratio_max, &result.delta_gini}) {
    out << ',' << fixed6(ms->mean) << ',' << fixed6(ms->stddev);
  }
  out << '\n';
}

void write_positions_csv(std::ostream& out, const ExperimentResult& result) {
  out << "rule,length,mean_delta,std_delta,count\n";
  for (const auto& [rule, per_length] : result.positions) {
    for (const auto& [len, stats] : per_length) {
      out << quoted(rule) << ',' << len << ',' << fixed6(stats.mean()) << ','
          << fixed6(stats.stddev()) << ',' << stats.count << '\n';
    }
  }
}

void write_metadata(std::ostream& out, const ExperimentResult& result) {
  out << "version = " << version() << '\n';
  out << result.spec.describe();
  out << "length_distribution = uniform(1.." << result.spec.p_max << ")\n";
  out << "rng = xoshiro256** seeded via splitmix64\n";
  out << "failed_instances = " << result.failed << '\n';
}

ExperimentSpec parse_experiment_spec(std::istream& in) {
  ExperimentSpec spec;
  std::string raw;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "model") {
        if (value == "impartial") {
          spec.source.kind = ProfileSource::Kind::ImpartialCulture;
        } else if (value == "mallows") {
          spec.source.kind = ProfileSource::Kind::Mallows;
        } else if (value == "preflib") {
          spec.source.kind = ProfileSource::Kind::PreflibFile;
        } else {
          throw ParseError(line_no, "unknown model '" + value + "'");
        }
      } else if (key == "preflib") {
        spec.source.kind = ProfileSource::Kind::PreflibFile;
        spec.source.path = value;
      } else if (key == "m") {
        spec.source.m = std::stoi(value);
      } else if (key == "n") {
        spec.source.n = std::stoll(value);
      } else if (key == "phi") {
        spec.source.dispersion = std::stod(value);
      } else if (key == "pmax") {
        spec.p_max = std::stoll(value);
      } else if (key == "instances") {
        spec.instances = std::stoi(value);
      } else if (key == "seed") {
        spec.seed = std::stoull(value);
      } else if (key == "jobs") {
        spec.workers = std::stoi(value);
      } else if (key == "rules") {
        spec.rules.clear();
        std::stringstream list(value);
        std::string item;
        while (std::getline(list, item, ',')) {
          item = trim(item);
          if (!item.empty()) spec.rules.push_back(item);
        }
      } else {
        throw ParseError(line_no, "unknown key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw ParseError(line_no, "malformed value for '" + key + "'");
    }
  }
  return spec;
}

}  // namespace collsched
