#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "collsched/axioms.hpp"
#include "collsched/core.hpp"
#include "collsched/costs.hpp"
#include "collsched/experiments.hpp"
#include "collsched/profiles.hpp"
#include "collsched/rule.hpp"
#include "collsched/rules_condorcet.hpp"
#include "collsched/rules_cost.hpp"

namespace cs = collsched;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kCapacity = 2, kViolated = 3 };

enum class Format { Plain, Csv };

struct Common {
  std::string format = "plain";
  Format fmt() const { return format == "csv" ? Format::Csv : Format::Plain; }
};

void config_line(std::ostream& out, const std::string& key,
                 const std::string& value) {
  out << "# " << key << " = " << value << '\n';
}

std::string csv_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

// Accepts job labels or 1-based ids separated by commas or spaces.
cs::Schedule parse_schedule(const std::string& text, const cs::Profile& profile) {
  std::vector<cs::JobId> order;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    cs::JobId id = -1;
    for (int j = 0; j < profile.num_jobs(); ++j) {
      if (profile.label(j) == token) id = j;
    }
    if (id < 0) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(token, &used);
        if (used == token.size() && v >= 1 && v <= profile.num_jobs()) id = v - 1;
      } catch (const std::exception&) {
      }
    }
    if (id < 0) throw cs::InvalidSpec("unknown job '" + token + "' in schedule");
    order.push_back(id);
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  if (static_cast<int>(order.size()) != profile.num_jobs()) {
    throw cs::InvalidSpec("schedule must list every job exactly once");
  }
  try {
    return cs::Schedule(std::move(order));
  } catch (const cs::Error&) {
    throw cs::InvalidSpec("schedule must list every job exactly once");
  }
}

struct RuleOptions {
  std::string rule;
  std::string cost = "T";
  std::string agg = "sum";
  int p = 2;

  void add_to(CLI::App* app) {
    app->add_option("--rule", rule,
                    "Rule name: sum-T, max-T, l2-SD, psf-identity, psf-square, "
                    "pta-copeland, pta-minimax");
    app->add_option("--cost", cost, "Cost: K, S, T, U, L, E, D, SD")
        ->capture_default_str();
    app->add_option("--agg", agg, "Aggregation: sum, max, lp")
        ->capture_default_str();
    app->add_option("--p", p, "Exponent for lp aggregation")
        ->capture_default_str();
  }

  cs::CostSpec cost_spec() const {
    const auto kind = cs::parse_cost_kind(cost);
    if (!kind) throw cs::InvalidSpec("unknown cost '" + cost + "'");
    const auto a = cs::parse_aggregation(agg);
    if (!a) throw cs::InvalidSpec("unknown aggregation '" + agg + "'");
    cs::CostSpec spec{*kind, *a, p};
    spec.validate();
    cs::check_supported(spec);
    return spec;
  }

  cs::Rule resolve() const {
    if (!rule.empty()) {
      auto r = cs::Rule::parse(rule);
      if (r.kind == cs::Rule::Kind::Cost) cs::check_supported(r.cost);
      return r;
    }
    return cs::Rule::from_cost(cost_spec());
  }
};

void print_cost_table(std::ostream& out, Format fmt, const cs::Profile& profile,
                      const cs::CostSpec& spec, const cs::Schedule& tau) {
  const auto costs = cs::cost_vector(spec.cost, profile, tau);
  if (fmt == Format::Csv) {
    out << "ranking,agents,cost\n";
    for (int a = 0; a < profile.num_distinct(); ++a) {
      out << csv_quote(cs::format_schedule(profile.preferred()[a], profile))
          << ',' << profile.multiplicities()[a] << ',' << costs.per_ranking[a]
          << '\n';
    }
    return;
  }
  out << "per-agent " << cs::to_string(spec.cost) << " costs:\n";
  for (int a = 0; a < profile.num_distinct(); ++a) {
    out << "  " << profile.multiplicities()[a] << " x ["
        << cs::format_schedule(profile.preferred()[a], profile)
        << "]: " << costs.per_ranking[a] << '\n';
  }
}

// ---------------------------------------------------------------- generate

struct GenerateCmd {
  std::string model = "impartial";
  int m = 10;
  std::int64_t n = 500;
  double phi = 0.8;
  cs::Length pmax = 1;
  std::uint64_t seed = 1;
  std::string out = "-";
  std::string file_format = "native";

  int run() const {
    cs::ProfileSource src;
    if (model == "impartial") {
      src.kind = cs::ProfileSource::Kind::ImpartialCulture;
    } else if (model == "mallows") {
      src.kind = cs::ProfileSource::Kind::Mallows;
    } else {
      throw cs::InvalidSpec("unknown model '" + model + "'");
    }
    src.m = m;
    src.n = n;
    src.dispersion = phi;
    src.seed = seed;
    if (pmax < 1) throw cs::InvalidSpec("pmax must be at least 1");
    src.lengths = pmax == 1 ? cs::LengthSpec::unit() : cs::LengthSpec::uniform(pmax);
    src.validate();
    const cs::Profile profile = cs::make_profile(src);

    std::ostream& log = out == "-" ? std::cerr : std::cout;
    config_line(log, "command", "generate");
    config_line(log, "model", model);
    config_line(log, "m", std::to_string(m));
    config_line(log, "n", std::to_string(n));
    if (src.kind == cs::ProfileSource::Kind::Mallows) {
      std::ostringstream s;
      s << phi;
      config_line(log, "phi", s.str());
    }
    config_line(log, "pmax", std::to_string(pmax));
    config_line(log, "seed", std::to_string(seed));
    config_line(log, "file-format", file_format);
    config_line(log, "out", out);

    auto write = [&](std::ostream& os) {
      if (file_format == "preflib") {
        cs::write_preflib(os, profile);
      } else {
        cs::write_instance(os, profile);
      }
    };
    if (out == "-") {
      write(std::cout);
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) throw cs::InvalidSpec("cannot write '" + out + "'");
      write(f);
    }
    return kOk;
  }
};

// ---------------------------------------------------------------- solve

struct SolveCmd {
  std::string file;
  RuleOptions rule;
  Common common;

  int run() const {
    const cs::Rule r = rule.resolve();
    const cs::Profile profile = cs::load_instance_file(file);
    const Format fmt = common.fmt();
    auto& out = std::cout;
    config_line(out, "command", "solve");
    config_line(out, "instance", file);
    config_line(out, "rule", r.name());
    config_line(out, "format", common.format);

    if (r.kind == cs::Rule::Kind::Cost) {
      const auto rep = cs::solve(profile, r.cost);
      if (fmt == Format::Csv) {
        out << "schedule,objective,method,nodes\n"
            << csv_quote(cs::format_schedule(rep.schedule, profile)) << ','
            << cs::to_string(rep.objective) << ',' << cs::to_string(rep.method)
            << ',' << rep.nodes_explored << '\n';
      } else {
        out << "schedule: " << cs::format_schedule(rep.schedule, profile) << '\n'
            << "objective: " << cs::to_string(rep.objective) << '\n'
            << "method: " << cs::to_string(rep.method) << '\n';
      }
      print_cost_table(out, fmt, profile, r.cost, rep.schedule);
      return kOk;
    }

    const cs::Schedule s = cs::apply_rule(r, profile);
    const cs::CostSpec sum_t{cs::CostKind::T, cs::Aggregation::Sum, 2};
    const auto obj = cs::aggregate(sum_t, profile, s);
    if (fmt == Format::Csv) {
      out << "schedule,sum_T\n"
          << csv_quote(cs::format_schedule(s, profile)) << ','
          << cs::to_string(obj) << '\n';
    } else {
      out << "schedule: " << cs::format_schedule(s, profile) << '\n'
          << "sum-T: " << cs::to_string(obj) << '\n';
    }
    print_cost_table(out, fmt, profile, sum_t, s);
    return kOk;
  }
};

// ---------------------------------------------------------------- evaluate

struct EvaluateCmd {
  std::string file;
  std::string schedule;
  RuleOptions rule;
  Common common;

  int run() const {
    const cs::CostSpec spec = rule.cost_spec();
    const cs::Profile profile = cs::load_instance_file(file);
    const cs::Schedule s = parse_schedule(schedule, profile);
    auto& out = std::cout;
    config_line(out, "command", "evaluate");
    config_line(out, "instance", file);
    config_line(out, "schedule", cs::format_schedule(s, profile));
    config_line(out, "objective", spec.name());
    config_line(out, "format", common.format);
    const auto value = cs::aggregate(spec, profile, s);
    if (common.fmt() == Format::Csv) {
      out << "schedule,objective,value\n"
          << csv_quote(cs::format_schedule(s, profile)) << ',' << spec.name()
          << ',' << cs::to_string(value) << '\n';
    } else {
      out << spec.name() << ": " << cs::to_string(value) << '\n';
    }
    print_cost_table(out, common.fmt(), profile, spec, s);
    return kOk;
  }
};

// ---------------------------------------------------------------- check

struct CheckCmd {
  std::string file;
  std::string axiom;
  std::string rule_name = "sum-T";
  std::string schedule;
  std::int64_t trials = 500;
  int max_jobs = 5;
  std::uint64_t seed = 1;
  Common common;

  int run() const {
    const cs::Rule r = cs::Rule::parse(rule_name);
    auto& out = std::cout;
    config_line(out, "command", "check");
    config_line(out, "axiom", axiom);
    config_line(out, "rule", r.name());

    cs::AxiomReport report;
    if (axiom == "reinforcement") {
      config_line(out, "trials", std::to_string(trials));
      config_line(out, "max-jobs", std::to_string(max_jobs));
      config_line(out, "seed", std::to_string(seed));
      report = cs::test_reinforcement(r, max_jobs, trials, seed);
    } else if (axiom == "pareto" || axiom == "pta") {
      if (file.empty()) throw cs::InvalidSpec(axiom + " check needs an instance file");
      const cs::Profile profile = cs::load_instance_file(file);
      config_line(out, "instance", file);
      const cs::Schedule s = schedule.empty() ? cs::apply_rule(r, profile)
                                              : parse_schedule(schedule, profile);
      config_line(out, "schedule", cs::format_schedule(s, profile));
      report = axiom == "pareto" ? cs::check_pareto(s, profile)
                                 : cs::check_pta_condorcet(s, profile);
    } else {
      throw cs::InvalidSpec("unknown axiom '" + axiom + "'");
    }
    config_line(out, "format", common.format);

    if (common.fmt() == Format::Csv) {
      out << "axiom,holds,trials,checked,skipped,witness\n";
      const std::string head = std::string(cs::to_string(report.axiom)) + ',' +
                               (report.holds ? "true" : "false") + ',' +
                               std::to_string(report.trials) + ',' +
                               std::to_string(report.checked) + ',' +
                               std::to_string(report.skipped) + ',';
      if (report.witnesses.empty()) out << head << "\"\"\n";
      for (const auto& w : report.witnesses) out << head << csv_quote(w) << '\n';
    } else {
      out << cs::to_string(report.axiom) << ": "
          << (report.holds ? "holds" : "violated") << '\n';
      if (report.axiom == cs::Axiom::Reinforcement) {
        out << "trials: " << report.trials << "  premise met: " << report.checked
            << "  skipped (ties): " << report.skipped << '\n';
      }
      for (const auto& w : report.witnesses) out << "  " << w << '\n';
    }
    return report.holds ? kOk : kViolated;
  }
};

// ---------------------------------------------------------------- experiment

struct ExperimentCmd {
  std::string spec_file;
  std::string out_dir;
  int jobs = 0;
  Common common;

  int run() const {
    std::ifstream in(spec_file);
    if (!in) throw cs::InvalidSpec("cannot read '" + spec_file + "'");
    cs::ExperimentSpec spec = cs::parse_experiment_spec(in);
    if (jobs > 0) spec.workers = jobs;
    spec.validate();

    std::string dir = out_dir;
    if (dir.empty()) {
      const char* env = std::getenv("COLLSCHED_OUTPUT_DIR");
      dir = env && *env ? env : ".";
    }
    std::filesystem::create_directories(dir);

    auto& out = std::cout;
    config_line(out, "command", "experiment");
    config_line(out, "spec-file", spec_file);
    config_line(out, "out-dir", dir);
    std::istringstream described(spec.describe());
    for (std::string line; std::getline(described, line);) out << "# " << line << '\n';

    const auto result = cs::run_experiment(spec);
    const std::filesystem::path base(dir);
    auto open = [&](const char* name) {
      std::ofstream f(base / name, std::ios::binary);
      if (!f) throw cs::InvalidSpec("cannot write into '" + dir + "'");
      return f;
    };
    {
      auto f = open("rows.csv");
      cs::write_rows_csv(f, result);
    }
    {
      auto f = open("summary.csv");
      cs::write_summary_csv(f, result);
    }
    {
      auto f = open("positions.csv");
      cs::write_positions_csv(f, result);
    }
    {
      auto f = open("metadata.txt");
      cs::write_metadata(f, result);
    }

    if (common.fmt() == Format::Csv) {
      cs::write_summary_csv(out, result);
    } else {
      auto ms = [](const cs::MeanStd& v) {
        std::ostringstream s;
        s.setf(std::ios::fixed);
        s.precision(4);
        s << v.mean << " (sd " << v.stddev << ", n=" << v.count << ")";
        return s.str();
      };
      out << "paradox frequency sum-T: " << ms(result.paradox_sum_t) << '\n'
          << "paradox frequency max-T: " << ms(result.paradox_max_t) << '\n'
          << "copeland / sum-T optimum: " << ms(result.copeland_ratio_sum) << '\n'
          << "copeland / max-T optimum: " << ms(result.copeland_ratio_max) << '\n'
          << "delta gini (max-T - sum-T): " << ms(result.delta_gini) << '\n'
          << "failed instances: " << result.failed << '\n'
          << "outputs: " << (base / "rows.csv").string() << ", "
          << (base / "summary.csv").string() << ", "
          << (base / "positions.csv").string() << ", "
          << (base / "metadata.txt").string() << '\n';
    }
    bool capacity = false;
    for (const auto& s : result.per_instance) {
      if (!s.ok) {
        std::cerr << "instance " << s.instance << ": " << s.error << '\n';
        capacity = true;
      }
    }
    return capacity ? kCapacity : kOk;
  }
};

// ---------------------------------------------------------------- export-ilp

struct ExportIlpCmd {
  std::string file;
  RuleOptions rule;
  std::string out = "-";

  int run() const {
    const cs::CostSpec spec = rule.cost_spec();
    const cs::Profile profile = cs::load_instance_file(file);
    const std::string lp = cs::export_ilp(profile, spec);
    std::ostream& log = out == "-" ? std::cerr : std::cout;
    config_line(log, "command", "export-ilp");
    config_line(log, "instance", file);
    config_line(log, "objective", spec.name());
    config_line(log, "out", out);
    if (out == "-") {
      std::cout << lp;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) throw cs::InvalidSpec("cannot write '" + out + "'");
      f << lp;
    }
    return kOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collective scheduling: rules, axioms and experiments"};
  app.set_version_flag("--version", std::string(cs::version()));
  app.require_subcommand(1);

  GenerateCmd gen;
  auto* g = app.add_subcommand("generate", "Sample a random instance");
  g->add_option("--model", gen.model, "impartial or mallows")->capture_default_str();
  g->add_option("--m", gen.m, "Number of jobs")->capture_default_str();
  g->add_option("--n", gen.n, "Number of agents")->capture_default_str();
  g->add_option("--phi", gen.phi, "Mallows dispersion in (0, 1]")->capture_default_str();
  g->add_option("--pmax", gen.pmax, "Lengths drawn uniformly from 1..pmax")
      ->capture_default_str();
  g->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  g->add_option("--out,-o", gen.out, "Output path, - for stdout")->capture_default_str();
  g->add_option("--file-format", gen.file_format, "native or preflib")
      ->check(CLI::IsMember({"native", "preflib"}))
      ->capture_default_str();

  SolveCmd solve;
  auto* s = app.add_subcommand("solve", "Compute the schedule picked by a rule");
  s->add_option("instance", solve.file, "Instance file (native or PrefLib)")->required();
  solve.rule.add_to(s);
  s->add_option("--format", solve.common.format)
      ->check(CLI::IsMember({"plain", "csv"}))
      ->capture_default_str();

  EvaluateCmd eval;
  auto* e = app.add_subcommand("evaluate", "Evaluate a given schedule");
  e->add_option("instance", eval.file, "Instance file")->required();
  e->add_option("--schedule", eval.schedule, "Job labels or 1-based ids, comma separated")
      ->required();
  e->add_option("--cost", eval.rule.cost)->capture_default_str();
  e->add_option("--agg", eval.rule.agg)->capture_default_str();
  e->add_option("--p", eval.rule.p)->capture_default_str();
  e->add_option("--format", eval.common.format)
      ->check(CLI::IsMember({"plain", "csv"}))
      ->capture_default_str();

  CheckCmd check;
  auto* c = app.add_subcommand("check", "Check an axiom");
  c->add_option("instance", check.file, "Instance file (pareto, pta)");
  c->add_option("--axiom", check.axiom, "pareto, pta or reinforcement")->required();
  c->add_option("--rule", check.rule_name, "Rule under test")->capture_default_str();
  c->add_option("--schedule", check.schedule, "Check this schedule instead of the rule's");
  c->add_option("--trials", check.trials, "Reinforcement trials")->capture_default_str();
  c->add_option("--max-jobs", check.max_jobs, "Reinforcement job count bound")
      ->capture_default_str();
  c->add_option("--seed", check.seed, "Reinforcement seed")->capture_default_str();
  c->add_option("--format", check.common.format)
      ->check(CLI::IsMember({"plain", "csv"}))
      ->capture_default_str();

  ExperimentCmd exp;
  auto* x = app.add_subcommand("experiment", "Run a batch experiment from a spec file");
  x->add_option("spec", exp.spec_file, "key = value spec file")->required();
  x->add_option("--out-dir", exp.out_dir,
                "Output directory (default: $COLLSCHED_OUTPUT_DIR or .)");
  x->add_option("--jobs,-j", exp.jobs, "Worker threads; overrides the spec");
  x->add_option("--format", exp.common.format)
      ->check(CLI::IsMember({"plain", "csv"}))
      ->capture_default_str();

  ExportIlpCmd ilp;
  auto* i = app.add_subcommand("export-ilp", "Write the ILP model in LP format");
  i->add_option("instance", ilp.file, "Instance file")->required();
  i->add_option("--cost", ilp.rule.cost)->capture_default_str();
  i->add_option("--agg", ilp.rule.agg)->capture_default_str();
  i->add_option("--p", ilp.rule.p)->capture_default_str();
  i->add_option("--out,-o", ilp.out, "Output path, - for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return gen.run();
    if (*s) return solve.run();
    if (*e) return eval.run();
    if (*c) return check.run();
    if (*x) return exp.run();
    if (*i) return ilp.run();
  } catch (const cs::CapacityError& err) {
    std::cerr << "error: capacity: " << err.what() << '\n';
    return kCapacity;
  } catch (const cs::ParseError& err) {
    std::cerr << "error: line " << err.line() << ": " << err.what() << '\n';
    return kUsage;
  } catch (const cs::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
