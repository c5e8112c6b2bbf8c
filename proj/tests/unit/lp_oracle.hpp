#pragma once

// Reads the LP text produced by export_ilp and minimises it by enumerating
// every assignment of the precedence binaries. Each auxiliary variable
// appears in exactly one constraint, so its optimal value is the smallest one
// that constraint allows.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace lp_oracle {

struct Term {
  std::int64_t coef;
  std::string var;
};

struct Row {
  std::vector<Term> terms;
  std::string op;
  std::int64_t rhs = 0;
};

struct Model {
  std::vector<Term> objective;
  std::int64_t constant = 0;
  std::vector<Row> rows;
  std::set<std::string> binaries;
};

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> t;
  for (std::string s; in >> s;) t.push_back(s);
  return t;
}

// Parses "+ 3 x - y + 7" style sequences; bare numbers go to *constant.
inline std::vector<Term> parse_terms(const std::vector<std::string>& t,
                                     std::size_t from, std::size_t to,
                                     std::int64_t* constant) {
  std::vector<Term> out;
  std::int64_t sign = 1;
  std::optional<std::int64_t> coef;
  for (std::size_t i = from; i < to; ++i) {
    const std::string& s = t[i];
    if (s == "+" || s == "-") {
      sign = s == "-" ? -1 : 1;
      coef.reset();
    } else if (std::isdigit(static_cast<unsigned char>(s[0]))) {
      const std::int64_t v = std::stoll(s);
      const bool followed_by_var =
          i + 1 < to && t[i + 1] != "+" && t[i + 1] != "-";
      if (followed_by_var) {
        coef = v;
      } else if (constant) {
        *constant += sign * v;
      }
    } else {
      out.push_back({sign * coef.value_or(1), s});
      coef.reset();
    }
  }
  return out;
}

inline Model parse(const std::string& text) {
  Model m;
  std::istringstream in(text);
  std::string section;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '\\') continue;
    if (line[0] != ' ') {
      section = line;
      continue;
    }
    auto t = tokens(line);
    if (section == "Minimize") {
      m.objective = parse_terms(t, 1, t.size(), &m.constant);
    } else if (section == "Subject To") {
      Row r;
      const std::size_t n = t.size();
      r.op = t[n - 2];
      r.rhs = std::stoll(t[n - 1]);
      r.terms = parse_terms(t, 1, n - 2, nullptr);
      m.rows.push_back(r);
    } else if (section == "Binaries") {
      m.binaries.insert(t[0]);
    }
  }
  return m;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return -floor_div(-a, b);
}

// Minimum objective over all feasible points, or nullopt when infeasible.
inline std::optional<std::int64_t> minimise(const Model& model) {
  std::vector<std::string> prec;
  for (const auto& b : model.binaries) {
    if (b.rfind("prec_", 0) == 0) prec.push_back(b);
  }
  std::optional<std::int64_t> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << prec.size()); ++mask) {
    std::map<std::string, std::int64_t> x;
    for (std::size_t i = 0; i < prec.size(); ++i) x[prec[i]] = (mask >> i) & 1;
    bool ok = true;
    for (const auto& r : model.rows) {
      std::int64_t known = 0;
      const Term* aux = nullptr;
      for (const auto& term : r.terms) {
        if (x.count(term.var)) {
          known += term.coef * x.at(term.var);
        } else {
          aux = &term;
        }
      }
      if (!aux) {
        const bool sat = r.op == "=" ? known == r.rhs
                         : r.op == "<=" ? known <= r.rhs
                                        : known >= r.rhs;
        if (!sat) ok = false;
        continue;
      }
      // coef * v (op) rhs - known, v >= 0 and minimal.
      const std::int64_t rest = r.rhs - known;
      std::int64_t v = 0;
      if ((r.op == ">=" && aux->coef > 0)) {
        v = std::max<std::int64_t>(0, ceil_div(rest, aux->coef));
      } else if (r.op == "<=" && aux->coef < 0) {
        v = std::max<std::int64_t>(0, ceil_div(-rest, -aux->coef));
      }
      if (model.binaries.count(aux->var) && v > 1) ok = false;
      x[aux->var] = v;
    }
    if (!ok) continue;
    std::int64_t obj = model.constant;
    for (const auto& term : model.objective) obj += term.coef * x[term.var];
    if (!best || obj < *best) best = obj;
  }
  return best;
}

}  // namespace lp_oracle
