#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "collsched/axioms.hpp"
#include "collsched/core.hpp"
#include "collsched/costs.hpp"
#include "collsched/experiments.hpp"
#include "collsched/profiles.hpp"
#include "collsched/rule.hpp"
#include "collsched/rules_condorcet.hpp"
#include "collsched/rules_cost.hpp"
#include "collsched/rules_psf.hpp"

namespace py = pybind11;
namespace cs = collsched;

namespace {

py::object to_py(cs::Value v) {
  return py::module_::import("builtins").attr("int")(cs::to_string(v));
}

py::object to_py(const cs::Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(to_py(r.num), to_py(r.den));
}

cs::CostSpec make_spec(const std::string& cost, const std::string& agg, int p) {
  const auto k = cs::parse_cost_kind(cost);
  if (!k) throw cs::InvalidSpec("unknown cost '" + cost + "'");
  const auto a = cs::parse_aggregation(agg);
  if (!a) throw cs::InvalidSpec("unknown aggregation '" + agg + "'");
  cs::CostSpec spec{*k, *a, p};
  spec.validate();
  return spec;
}

py::dict report_dict(const cs::SolveReport& r) {
  py::dict d;
  d["schedule"] = r.schedule.order();
  d["objective"] = to_py(r.objective);
  d["method"] = std::string(cs::to_string(r.method));
  d["spec"] = r.spec.name();
  d["nodes"] = r.nodes_explored;
  d["seconds"] = std::chrono::duration<double>(r.elapsed).count();
  if (r.optimal_count >= 0) d["optimal_count"] = r.optimal_count;
  return d;
}

py::dict axiom_dict(const cs::AxiomReport& r) {
  py::dict d;
  d["axiom"] = std::string(cs::to_string(r.axiom));
  d["holds"] = r.holds;
  d["pairs"] = r.pairs;
  d["witnesses"] = r.witnesses;
  d["trials"] = r.trials;
  d["checked"] = r.checked;
  d["skipped"] = r.skipped;
  return d;
}

py::dict mean_std(const cs::MeanStd& m) {
  py::dict d;
  d["mean"] = m.mean;
  d["std"] = m.stddev;
  d["count"] = m.count;
  return d;
}

template <typename Writer>
std::string render(const cs::ExperimentResult& r, Writer w) {
  std::ostringstream out;
  w(out, r);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Collective scheduling rules, axioms and experiments";
  m.attr("__version__") = std::string(cs::version());

  auto base = py::register_exception<cs::Error>(m, "Error", PyExc_ValueError);
  py::register_exception<cs::InvalidInstance>(m, "InvalidInstance", base.ptr());
  py::register_exception<cs::InvalidSpec>(m, "InvalidSpec", base.ptr());
  py::register_exception<cs::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<cs::CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<cs::UnsupportedCombination>(m, "UnsupportedCombination",
                                                     base.ptr());
  py::register_exception<cs::PreconditionError>(m, "PreconditionError", base.ptr());

  py::class_<cs::Profile>(m, "Profile",
                          "Jobs with lengths plus the agents' preferred schedules. "
                          "Job ids are 0-based.")
      .def(py::init([](std::vector<cs::Length> lengths,
                       std::vector<std::vector<cs::JobId>> rankings,
                       std::vector<std::int64_t> counts,
                       std::vector<std::string> labels) {
             std::vector<cs::Schedule> pref;
             for (auto& r : rankings) pref.emplace_back(std::move(r));
             return cs::Profile(std::move(lengths), std::move(pref),
                                std::move(counts), std::move(labels));
           }),
           py::arg("lengths"), py::arg("rankings"),
           py::arg("counts") = std::vector<std::int64_t>{},
           py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("num_jobs", &cs::Profile::num_jobs)
      .def_property_readonly("num_agents", &cs::Profile::num_agents)
      .def_property_readonly("lengths", &cs::Profile::lengths)
      .def_property_readonly("labels", &cs::Profile::labels)
      .def_property_readonly("counts", &cs::Profile::multiplicities)
      .def_property_readonly("rankings",
                             [](const cs::Profile& p) {
                               std::vector<std::vector<cs::JobId>> out;
                               for (const auto& s : p.preferred()) out.push_back(s.order());
                               return out;
                             })
      .def("with_lengths", &cs::Profile::with_lengths)
      .def("with_unit_lengths", &cs::Profile::with_unit_lengths)
      .def("merged_with", &cs::Profile::merged_with)
      .def("format", [](const cs::Profile& p, std::vector<cs::JobId> order) {
        return cs::format_schedule(cs::Schedule(std::move(order)), p);
      })
      .def("to_text",
           [](const cs::Profile& p) {
             std::ostringstream out;
             cs::write_instance(out, p);
             return out.str();
           })
      .def("__eq__", [](const cs::Profile& a, const cs::Profile& b) { return a == b; })
      .def("__repr__", [](const cs::Profile& p) {
        return "<Profile m=" + std::to_string(p.num_jobs()) +
               " n=" + std::to_string(p.num_agents()) + ">";
      });

  m.def("read_instance", [](const std::string& text) { return cs::read_instance(text); },
        py::arg("text"));
  m.def("parse_preflib", [](const std::string& text) { return cs::parse_preflib(text); },
        py::arg("text"));
  m.def("load_instance", &cs::load_instance_file, py::arg("path"));

  m.def("generate_impartial",
        [](int jobs, std::int64_t agents, cs::Length p_max, std::uint64_t seed) {
          cs::ProfileSource s;
          s.kind = cs::ProfileSource::Kind::ImpartialCulture;
          s.m = jobs;
          s.n = agents;
          s.lengths = p_max == 1 ? cs::LengthSpec::unit() : cs::LengthSpec::uniform(p_max);
          s.seed = seed;
          return cs::make_profile(s);
        },
        py::arg("m"), py::arg("n"), py::arg("p_max") = 1, py::arg("seed") = 1);
  m.def("generate_mallows",
        [](int jobs, std::int64_t agents, double phi, cs::Length p_max,
           std::uint64_t seed, std::vector<cs::JobId> reference) {
          cs::ProfileSource s;
          s.kind = cs::ProfileSource::Kind::Mallows;
          s.m = jobs;
          s.n = agents;
          s.dispersion = phi;
          s.reference = std::move(reference);
          s.lengths = p_max == 1 ? cs::LengthSpec::unit() : cs::LengthSpec::uniform(p_max);
          s.seed = seed;
          return cs::make_profile(s);
        },
        py::arg("m"), py::arg("n"), py::arg("phi") = 0.8, py::arg("p_max") = 1,
        py::arg("seed") = 1, py::arg("reference") = std::vector<cs::JobId>{});

  m.def("agent_cost",
        [](const std::string& cost, std::vector<cs::JobId> tau,
           std::vector<cs::JobId> sigma, std::vector<cs::Length> lengths) {
          return cs::agent_cost(make_spec(cost, "sum", 2).cost, cs::Schedule(std::move(tau)),
                                cs::Schedule(std::move(sigma)), lengths);
        },
        py::arg("cost"), py::arg("tau"), py::arg("sigma"), py::arg("lengths"));
  m.def("objective",
        [](const cs::Profile& p, std::vector<cs::JobId> schedule, const std::string& cost,
           const std::string& agg, int power) {
          return to_py(cs::aggregate(make_spec(cost, agg, power), p,
                                     cs::Schedule(std::move(schedule))));
        },
        py::arg("profile"), py::arg("schedule"), py::arg("cost") = "T",
        py::arg("agg") = "sum", py::arg("p") = 2);

  m.def("solve",
        [](const cs::Profile& p, const std::string& cost, const std::string& agg,
           int power) { return report_dict(cs::solve(p, make_spec(cost, agg, power))); },
        py::arg("profile"), py::arg("cost") = "T", py::arg("agg") = "sum",
        py::arg("p") = 2);
  m.def("brute_force",
        [](const cs::Profile& p, const std::string& cost, const std::string& agg,
           int power) {
          return report_dict(cs::brute_force(p, make_spec(cost, agg, power)));
        },
        py::arg("profile"), py::arg("cost") = "T", py::arg("agg") = "sum",
        py::arg("p") = 2);
  m.def("apply_rule",
        [](const cs::Profile& p, const std::string& rule) {
          return cs::apply_rule(cs::Rule::parse(rule), p).order();
        },
        py::arg("profile"), py::arg("rule"));
  m.def("export_ilp",
        [](const cs::Profile& p, const std::string& cost) {
          return cs::export_ilp(p, make_spec(cost, "sum", 2));
        },
        py::arg("profile"), py::arg("cost") = "T");

  m.def("h_scores",
        [](const cs::Profile& p, const std::string& h) {
          const auto t = h == "square" ? cs::ScoreTransform::square()
                                       : cs::ScoreTransform::identity();
          py::list out;
          for (auto v : cs::h_scores(p, t)) out.append(to_py(v));
          return out;
        },
        py::arg("profile"), py::arg("h") = "identity");

  m.def("pta_copeland", [](const cs::Profile& p) { return cs::pta_copeland(p).order(); });
  m.def("pta_minimax",
        [](const cs::Profile& p) { return cs::pta_iterative_minimax(p).order(); });
  m.def("pta_beats",
        [](const cs::Profile& p, cs::JobId k, cs::JobId l) {
          return cs::PtaTournament(p).beats(k, l);
        },
        py::arg("profile"), py::arg("k"), py::arg("l"));
  m.def("pta_consistent_schedule",
        [](const cs::Profile& p) -> std::optional<std::vector<cs::JobId>> {
          const auto s = cs::pta_consistent_schedule_exists(p);
          if (!s) return std::nullopt;
          return s->order();
        });

  m.def("check_pareto",
        [](const cs::Profile& p, std::vector<cs::JobId> s) {
          return axiom_dict(cs::check_pareto(cs::Schedule(std::move(s)), p));
        },
        py::arg("profile"), py::arg("schedule"));
  m.def("check_pta",
        [](const cs::Profile& p, std::vector<cs::JobId> s) {
          return axiom_dict(cs::check_pta_condorcet(cs::Schedule(std::move(s)), p));
        },
        py::arg("profile"), py::arg("schedule"));
  m.def("paradox_rate",
        [](const cs::Profile& p, std::vector<cs::JobId> s) {
          return to_py(cs::paradox_rate(cs::Schedule(std::move(s)), p));
        },
        py::arg("profile"), py::arg("schedule"));
  m.def("test_reinforcement",
        [](const std::string& rule, int max_jobs, std::int64_t trials, std::uint64_t seed) {
          return axiom_dict(cs::test_reinforcement(cs::Rule::parse(rule), max_jobs,
                                                   trials, seed));
        },
        py::arg("rule"), py::arg("max_jobs") = 5, py::arg("trials") = 500,
        py::arg("seed") = 1);

  m.def("gini",
        [](std::vector<cs::Cost> values) { return to_py(cs::gini(values)); },
        py::arg("values"));

  m.def("run_experiment",
        [](const std::string& spec_text, int jobs) {
          std::istringstream in(spec_text);
          auto spec = cs::parse_experiment_spec(in);
          if (jobs > 0) spec.workers = jobs;
          cs::ExperimentResult r;
          {
            py::gil_scoped_release release;
            r = cs::run_experiment(spec);
          }
          py::dict d;
          d["spec"] = spec.describe();
          d["failed"] = r.failed;
          d["paradox_sum_t"] = mean_std(r.paradox_sum_t);
          d["paradox_max_t"] = mean_std(r.paradox_max_t);
          d["copeland_ratio_sum"] = mean_std(r.copeland_ratio_sum);
          d["copeland_ratio_max"] = mean_std(r.copeland_ratio_max);
          d["delta_gini"] = mean_std(r.delta_gini);
          d["rows_csv"] = render(r, cs::write_rows_csv);
          d["summary_csv"] = render(r, cs::write_summary_csv);
          d["positions_csv"] = render(r, cs::write_positions_csv);
          d["metadata"] = render(r, cs::write_metadata);
          return d;
        },
        py::arg("spec"), py::arg("jobs") = 0);
}
