#include "collsched/profiles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "collsched/rng.hpp"

namespace collsched {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_int(std::string_view s, std::int64_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto at = s.find(sep, start);
    out.push_back(trim(s.substr(start, at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

struct RankingLine {
  std::int64_t count;
  std::vector<JobId> order;
};

// Candidate numbers are 1-based on disk.
std::vector<JobId> parse_order(std::span<const std::string_view> fields,
                               int m, std::size_t line) {
  if (static_cast<int>(fields.size()) != m) {
    throw ParseError(line, "incomplete ranking: expected " +
                               std::to_string(m) + " candidates, got " +
                               std::to_string(fields.size()));
  }
  std::vector<JobId> order;
  std::vector<bool> seen(m, false);
  for (std::string_view f : fields) {
    std::int64_t c = 0;
    if (!parse_int(f, c)) {
      throw ParseError(line, "malformed candidate '" + std::string(f) + "'");
    }
    if (c < 1 || c > m) {
      throw ParseError(line, "candidate " + std::to_string(c) +
                                 " out of range 1.." + std::to_string(m));
    }
    if (seen[c - 1]) {
      throw ParseError(line,
                       "duplicate candidate " + std::to_string(c) +
                           " in ranking");
    }
    seen[c - 1] = true;
    order.push_back(static_cast<JobId>(c - 1));
  }
  return order;
}

std::int64_t parse_count(std::string_view field, std::size_t line) {
  std::int64_t count = 0;
  if (!parse_int(field, count)) {
    throw ParseError(line, "malformed count '" + std::string(field) + "'");
  }
  if (count < 1) {
    throw ParseError(line, "count must be positive, got " +
                               std::to_string(count));
  }
  return count;
}

// "count: c1,c2,..." with m possibly unknown (-1) until the first ranking.
RankingLine parse_ranking(std::string_view body, int& m, std::size_t line) {
  const auto colon = body.find(':');
  RankingLine r;
  r.count = parse_count(body.substr(0, colon), line);
  const auto fields = split(body.substr(colon + 1), ',');
  if (m < 0) m = static_cast<int>(fields.size());
  r.order = parse_order(fields, m, line);
  return r;
}

Profile build_profile(std::vector<Length> lengths,
                      const std::vector<RankingLine>& rankings,
                      std::vector<std::string> labels, std::size_t line) {
  if (rankings.empty()) throw ParseError(line, "no rankings found");
  std::vector<Schedule> pref;
  std::vector<std::int64_t> mult;
  for (const auto& r : rankings) {
    pref.emplace_back(r.order);
    mult.push_back(r.count);
  }
  return Profile(std::move(lengths), std::move(pref), std::move(mult),
                 std::move(labels));
}

}  // namespace

std::string LengthSpec::describe() const {
  switch (kind) {
    case Kind::Unit:
      return "unit";
    case Kind::UniformRandom:
      return "uniform(1.." + std::to_string(p_max) + ")";
    case Kind::Explicit: {
      std::string s = "explicit(";
      for (std::size_t i = 0; i < explicit_lengths.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(explicit_lengths[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

void ProfileSource::validate() const {
  if (kind != Kind::PreflibFile) {
    if (m < 1) throw InvalidSpec("m must be at least 1");
    if (n < 1) throw InvalidSpec("n must be at least 1");
  }
  if (kind == Kind::Mallows && !(dispersion > 0.0 && dispersion <= 1.0)) {
    throw InvalidSpec("Mallows dispersion must lie in (0, 1]");
  }
  if (lengths.kind == LengthSpec::Kind::UniformRandom && lengths.p_max < 1) {
    throw InvalidSpec("p_max must be at least 1");
  }
}

Profile parse_preflib(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  int m = -1;
  std::map<int, std::string> names;
  std::vector<RankingLine> rankings;

  // Legacy header state: -1 = undecided, otherwise number of name lines left,
  // then the "n,sum,distinct" line.
  enum class Legacy { Undecided, Names, Totals, Body, None };
  Legacy legacy = Legacy::Undecided;
  int names_left = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view meta = trim(line.substr(1));
      constexpr std::string_view kAlt = "ALTERNATIVE NAME ";
      constexpr std::string_view kNum = "NUMBER ALTERNATIVES:";
      if (meta.starts_with(kAlt)) {
        const auto colon = meta.find(':');
        std::int64_t idx = 0;
        if (colon != std::string_view::npos &&
            parse_int(meta.substr(kAlt.size(), colon - kAlt.size()), idx)) {
          names[static_cast<int>(idx)] = std::string(trim(meta.substr(colon + 1)));
        }
      } else if (meta.starts_with(kNum)) {
        std::int64_t count = 0;
        if (!parse_int(meta.substr(kNum.size()), count) || count < 1) {
          throw ParseError(line_no, "malformed NUMBER ALTERNATIVES");
        }
        m = static_cast<int>(count);
      }
      continue;
    }

    if (legacy == Legacy::Undecided) {
      std::int64_t count = 0;
      if (line.find(':') == std::string_view::npos && parse_int(line, count)) {
        if (count < 1) throw ParseError(line_no, "candidate count must be positive");
        m = static_cast<int>(count);
        names_left = m;
        legacy = Legacy::Names;
        continue;
      }
      legacy = Legacy::None;
    }

    switch (legacy) {
      case Legacy::Names: {
        const auto comma = line.find(',');
        std::int64_t idx = 0;
        if (comma == std::string_view::npos ||
            !parse_int(line.substr(0, comma), idx)) {
          throw ParseError(line_no, "expected 'index,name'");
        }
        names[static_cast<int>(idx)] = std::string(trim(line.substr(comma + 1)));
        if (--names_left == 0) legacy = Legacy::Totals;
        break;
      }
      case Legacy::Totals:
        legacy = Legacy::Body;
        break;
      case Legacy::Body: {
        const auto fields = split(line, ',');
        RankingLine r;
        r.count = parse_count(fields.front(), line_no);
        r.order = parse_order(std::span(fields).subspan(1), m, line_no);
        rankings.push_back(std::move(r));
        break;
      }
      default:
        if (line.find(':') == std::string_view::npos) {
          throw ParseError(line_no, "expected 'count: c1,c2,...'");
        }
        rankings.push_back(parse_ranking(line, m, line_no));
    }
  }
  if (rankings.empty()) throw ParseError(line_no, "no rankings found");

  std::vector<std::string> labels;
  for (int j = 1; j <= m; ++j) {
    auto it = names.find(j);
    labels.push_back(it != names.end() && !it->second.empty()
                         ? it->second
                         : "J" + std::to_string(j));
  }
  return build_profile(std::vector<Length>(m, 1), rankings, std::move(labels),
                       line_no);
}

Profile parse_preflib(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_preflib(in);
}

void write_preflib(std::ostream& out, const Profile& profile) {
  out << "# NUMBER ALTERNATIVES: " << profile.num_jobs() << '\n';
  for (int j = 0; j < profile.num_jobs(); ++j) {
    out << "# ALTERNATIVE NAME " << j + 1 << ": " << profile.label(j) << '\n';
  }
  out << "# NUMBER VOTERS: " << profile.num_agents() << '\n';
  out << "# NUMBER UNIQUE ORDERS: " << profile.num_distinct() << '\n';
  for (int a = 0; a < profile.num_distinct(); ++a) {
    out << profile.multiplicities()[a] << ':';
    const auto& order = profile.preferred()[a].order();
    for (std::size_t k = 0; k < order.size(); ++k) {
      out << (k ? "," : " ") << order[k] + 1;
    }
    out << '\n';
  }
}

Profile read_instance(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  enum class Section { None, Jobs, Prefs } section = Section::None;
  std::map<int, std::pair<Length, std::string>> jobs;
  std::vector<RankingLine> rankings;
  int m = -1;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line == "jobs" || line.starts_with("jobs ")) {
      section = Section::Jobs;
      continue;
    }
    if (line == "prefs") {
      if (jobs.empty()) throw ParseError(line_no, "prefs section before any jobs");
      m = static_cast<int>(jobs.size());
      for (int j = 1; j <= m; ++j) {
        if (!jobs.count(j)) {
          throw ParseError(line_no, "job ids must be 1.." + std::to_string(m));
        }
      }
      section = Section::Prefs;
      continue;
    }
    if (section == Section::Jobs) {
      std::istringstream fields{std::string(line)};
      std::string id_s, len_s, label;
      fields >> id_s >> len_s;
      std::getline(fields, label);
      std::int64_t id = 0, len = 0;
      if (!parse_int(id_s, id) || !parse_int(len_s, len)) {
        throw ParseError(line_no, "expected 'id length [label]'");
      }
      if (len < 1) throw ParseError(line_no, "job length must be positive");
      if (!jobs.emplace(static_cast<int>(id), std::pair{len, std::string(trim(label))})
               .second) {
        throw ParseError(line_no, "duplicate job id " + std::to_string(id));
      }
    } else if (section == Section::Prefs) {
      rankings.push_back(parse_ranking(line, m, line_no));
    } else {
      throw ParseError(line_no, "expected a 'jobs' section");
    }
  }
  if (section != Section::Prefs) throw ParseError(line_no, "missing 'prefs' section");

  std::vector<Length> lengths;
  std::vector<std::string> labels;
  for (auto& [id, entry] : jobs) {
    lengths.push_back(entry.first);
    labels.push_back(entry.second.empty() ? "J" + std::to_string(id)
                                          : entry.second);
  }
  return build_profile(std::move(lengths), rankings, std::move(labels), line_no);
}

Profile read_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_instance(in);
}

void write_instance(std::ostream& out, const Profile& profile) {
  out << "jobs " << profile.num_jobs() << '\n';
  for (int j = 0; j < profile.num_jobs(); ++j) {
    out << j + 1 << ' ' << profile.length(j) << ' ' << profile.label(j) << '\n';
  }
  out << "prefs\n";
  for (int a = 0; a < profile.num_distinct(); ++a) {
    out << profile.multiplicities()[a] << ':';
    const auto& order = profile.preferred()[a].order();
    for (std::size_t k = 0; k < order.size(); ++k) {
      out << (k ? "," : " ") << order[k] + 1;
    }
    out << '\n';
  }
}

Profile load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSpec("cannot open '" + path + "'");
  // Native files start with a "jobs" section; anything else is PrefLib.
  std::string first;
  while (std::getline(in, first)) {
    const auto t = trim(first);
    if (!t.empty() && t.front() != '#') break;
  }
  in.clear();
  in.seekg(0);
  const auto t = trim(first);
  if (t == "jobs" || t.starts_with("jobs ")) return read_instance(in);
  return parse_preflib(in);
}

void save_instance_file(const std::string& path, const Profile& profile) {
  std::ofstream out(path);
  if (!out) throw InvalidSpec("cannot write '" + path + "'");
  write_instance(out, profile);
}

Profile assign_lengths(const Profile& profile, const LengthSpec& spec,
                       std::uint64_t seed) {
  const int m = profile.num_jobs();
  switch (spec.kind) {
    case LengthSpec::Kind::Unit:
      return profile.with_unit_lengths();
    case LengthSpec::Kind::UniformRandom: {
      if (spec.p_max < 1) throw InvalidSpec("p_max must be at least 1");
      Rng rng(seed);
      std::vector<Length> lengths(m);
      for (auto& p : lengths) p = rng.uniform_int(1, spec.p_max);
      return profile.with_lengths(std::move(lengths));
    }
    case LengthSpec::Kind::Explicit:
      if (static_cast<int>(spec.explicit_lengths.size()) != m) {
        throw InvalidSpec("explicit length list has " +
                          std::to_string(spec.explicit_lengths.size()) +
                          " entries for " + std::to_string(m) + " jobs");
      }
      for (Length p : spec.explicit_lengths) {
        if (p < 1) throw InvalidSpec("lengths must be positive");
      }
      return profile.with_lengths(spec.explicit_lengths);
  }
  throw InvalidSpec("unknown length spec");
}

Profile generate_impartial(int m, std::int64_t n, std::uint64_t seed) {
  if (m < 1) throw InvalidSpec("m must be at least 1");
  if (n < 1) throw InvalidSpec("n must be at least 1");
  Rng rng(seed);
  std::vector<Schedule> pref;
  pref.reserve(n);
  std::vector<JobId> order(m);
  for (std::int64_t a = 0; a < n; ++a) {
    std::iota(order.begin(), order.end(), 0);
    for (int i = m - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
      std::swap(order[i], order[j]);
    }
    pref.emplace_back(order);
  }
  return Profile(std::vector<Length>(m, 1), std::move(pref));
}

Profile generate_mallows(int m, std::int64_t n, double dispersion,
                         std::vector<JobId> reference, std::uint64_t seed) {
  if (m < 1) throw InvalidSpec("m must be at least 1");
  if (n < 1) throw InvalidSpec("n must be at least 1");
  if (!(dispersion > 0.0 && dispersion <= 1.0)) {
    throw InvalidSpec("Mallows dispersion must lie in (0, 1]");
  }
  if (reference.empty()) {
    reference.resize(m);
    std::iota(reference.begin(), reference.end(), 0);
  }
  const Schedule ref(reference);  // validates the permutation
  if (ref.size() != m) throw InvalidSpec("reference order must list all m jobs");

  // Inserting the i-th reference item (0-based) at slot j of the current
  // i-item prefix creates i - j inversions; weight dispersion^(i - j).
  std::vector<std::vector<double>> cumulative(m);
  for (int i = 0; i < m; ++i) {
    std::vector<double> w(i + 1);
    for (int j = 0; j <= i; ++j) w[j] = std::pow(dispersion, i - j);
    std::partial_sum(w.begin(), w.end(), w.begin());
    cumulative[i] = std::move(w);
  }

  Rng rng(seed);
  std::vector<Schedule> pref;
  pref.reserve(n);
  std::vector<JobId> order;
  for (std::int64_t a = 0; a < n; ++a) {
    order.clear();
    for (int i = 0; i < m; ++i) {
      const auto& cum = cumulative[i];
      const double u = rng.uniform01() * cum.back();
      int slot = static_cast<int>(std::upper_bound(cum.begin(), cum.end(), u) -
                                  cum.begin());
      slot = std::min(slot, i);
      order.insert(order.begin() + slot, reference[i]);
    }
    pref.emplace_back(order);
  }
  return Profile(std::vector<Length>(m, 1), std::move(pref));
}

Profile make_profile(const ProfileSource& source) {
  source.validate();
  Profile base;
  switch (source.kind) {
    case ProfileSource::Kind::PreflibFile:
      base = load_instance_file(source.path);
      break;
    case ProfileSource::Kind::Mallows:
      base = generate_mallows(source.m, source.n, source.dispersion,
                              source.reference, source.seed);
      break;
    case ProfileSource::Kind::ImpartialCulture:
      base = generate_impartial(source.m, source.n, source.seed);
      break;
  }
  return assign_lengths(base, source.lengths, derive_seed(source.seed, 1));
}

}  // namespace collsched
