#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "collsched/core.hpp"

namespace collsched {

struct LengthSpec {
  enum class Kind { Unit, UniformRandom, Explicit };
  Kind kind = Kind::Unit;
  Length p_max = 1;              // UniformRandom
  std::vector<Length> explicit_lengths;  // Explicit

  static LengthSpec unit() { return {}; }
  static LengthSpec uniform(Length p_max) {
    return {Kind::UniformRandom, p_max, {}};
  }
  static LengthSpec fixed(std::vector<Length> lengths) {
    return {Kind::Explicit, 1, std::move(lengths)};
  }
  std::string describe() const;
};

struct ProfileSource {
  enum class Kind { PreflibFile, Mallows, ImpartialCulture };
  Kind kind = Kind::ImpartialCulture;
  std::string path;  // PreflibFile
  int m = 10;
  std::int64_t n = 500;
  double dispersion = 0.8;              // Mallows
  std::vector<JobId> reference;         // Mallows; identity when empty
  LengthSpec lengths;
  std::uint64_t seed = 1;

  void validate() const;
};

// PrefLib strict-order-complete profiles (SOC). Lines beginning with '#' are
// metadata; "# ALTERNATIVE NAME i: label" lines name the candidates. The
// legacy numeric header (candidate count, "i,name" lines, "n,sum,distinct")
// is accepted as well. Ranking lines read "count: c1,c2,...,cm" with
// 1-based candidate numbers. Lengths are all 1.
Profile parse_preflib(std::istream& in);
Profile parse_preflib(std::string_view text);
void write_preflib(std::ostream& out, const Profile& profile);

// Native instance format: a "jobs" section of "id length [label]" lines
// followed by a "prefs" section of "count: id,id,..." lines (1-based ids).
Profile read_instance(std::istream& in);
Profile read_instance(std::string_view text);
void write_instance(std::ostream& out, const Profile& profile);

Profile load_instance_file(const std::string& path);
void save_instance_file(const std::string& path, const Profile& profile);

// Replaces the profile's lengths. Deterministic in `seed`; UniformRandom draws
// each p_i independently on {1..p_max} in job-id order.
Profile assign_lengths(const Profile& profile, const LengthSpec& spec,
                       std::uint64_t seed);

Profile generate_impartial(int m, std::int64_t n, std::uint64_t seed);

// Repeated-insertion sampling: P(order) proportional to
// dispersion^kendall(order, reference).
Profile generate_mallows(int m, std::int64_t n, double dispersion,
                         std::vector<JobId> reference, std::uint64_t seed);

// Builds the profile described by `source`, including its lengths.
Profile make_profile(const ProfileSource& source);

}  // namespace collsched
