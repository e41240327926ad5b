#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlabel/error.hpp"
#include "nlabel/text.hpp"

namespace nlabel {

enum class Stratum { ordinal, nominal, continuous, discrete };
enum class Subtype { number, string, date, boolean };
enum class Origin { inferred, override };

inline constexpr std::array<Stratum, 4> kAllStrata{Stratum::ordinal, Stratum::nominal,
                                                   Stratum::continuous, Stratum::discrete};

inline std::string_view to_string(Stratum s) {
  switch (s) {
    case Stratum::ordinal: return "ordinal";
    case Stratum::nominal: return "nominal";
    case Stratum::continuous: return "continuous";
    case Stratum::discrete: return "discrete";
  }
  return "nominal";
}

inline std::string_view to_string(Subtype s) {
  switch (s) {
    case Subtype::number: return "number";
    case Subtype::string: return "string";
    case Subtype::date: return "date";
    case Subtype::boolean: return "boolean";
  }
  return "string";
}

inline std::string_view to_string(Origin o) {
  return o == Origin::override ? "override" : "inferred";
}

inline std::optional<Stratum> parse_stratum(std::string_view s) {
  for (Stratum v : kAllStrata)
    if (to_string(v) == s) return v;
  return std::nullopt;
}

inline std::optional<Subtype> parse_subtype(std::string_view s) {
  for (Subtype v : {Subtype::number, Subtype::string, Subtype::date, Subtype::boolean})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

inline bool is_numeric(Stratum s) { return s == Stratum::continuous || s == Stratum::discrete; }
inline bool is_categorical(Stratum s) { return !is_numeric(s); }

struct ColumnKind {
  Stratum stratum = Stratum::nominal;
  Subtype subtype = Subtype::string;
  Origin origin = Origin::inferred;

  friend bool operator==(const ColumnKind&, const ColumnKind&) = default;
};

// Continuous/discrete require numbers; booleans are always nominal.
inline bool is_consistent(const ColumnKind& k) {
  if (is_numeric(k.stratum) && k.subtype != Subtype::number) return false;
  if (k.subtype == Subtype::boolean && k.stratum != Stratum::nominal) return false;
  return true;
}

inline ColumnKind make_override(Stratum stratum, Subtype subtype) {
  ColumnKind k{stratum, subtype, Origin::override};
  if (!is_consistent(k))
    throw ConfigError("type override " + std::string(to_string(stratum)) + "(" +
                      std::string(to_string(subtype)) + ") is not a valid combination");
  return k;
}

struct ColumnValue {
  std::string_view raw;
  bool missing = false;
};

struct ColumnInference {
  ColumnKind kind;
  std::optional<std::string> warning;
};

namespace detail {

inline bool is_boolean_pair(const std::set<std::string_view>& distinct) {
  static const std::array<std::pair<std::string_view, std::string_view>, 5> pairs{{
      {"f", "t"}, {"false", "true"}, {"F", "T"}, {"FALSE", "TRUE"}, {"0", "1"}}};
  if (distinct.size() != 2) return false;
  auto first = *distinct.begin();
  auto second = *std::next(distinct.begin());
  return std::any_of(pairs.begin(), pairs.end(),
                     [&](const auto& p) { return p.first == first && p.second == second; });
}

// "at least 95% of n" without floating point: 100*hits >= 95*n
inline bool at_least_95pct(std::size_t hits, std::size_t n) { return 100 * hits >= 95 * n; }

}  // namespace detail

// Classifies one column by ordered rules over its non-missing values:
//   1. an override for `name` wins
//   2. exactly two distinct values forming a boolean pair -> nominal(boolean)
//   3. >= 95% dates (ISO-8601 or MM/DD/YYYY)              -> ordinal(date)
//   4. >= 95% numbers:
//        any fractional value or decimal notation          -> continuous(number)
//        integers all in [1500, 2500], <= 30 distinct      -> ordinal(date)  (years)
//        <= 20 distinct and max - min <= 1000              -> discrete(number)
//        otherwise                                         -> ordinal(number)
//   5. otherwise                                           -> nominal(string)
// An all-missing column falls through to nominal(string) with a warning.
inline ColumnInference infer_column_kind(const std::vector<ColumnValue>& column,
                                         std::string_view name,
                                         const std::map<std::string, ColumnKind>& overrides = {}) {
  if (column.empty()) throw ProfileError("column '" + std::string(name) + "' has no rows");
  if (auto it = overrides.find(std::string(name)); it != overrides.end()) {
    ColumnKind k = it->second;
    k.origin = Origin::override;
    if (!is_consistent(k))
      throw ConfigError("type override for '" + std::string(name) + "' is not a valid combination");
    return {k, std::nullopt};
  }

  std::vector<std::string_view> present;
  for (const auto& v : column)
    if (!v.missing) present.push_back(text::trim(v.raw));
  if (present.empty())
    return {{Stratum::nominal, Subtype::string, Origin::inferred},
            "column '" + std::string(name) + "' has no non-missing values; classified as nominal(string)"};

  std::set<std::string_view> distinct(present.begin(), present.end());
  if (detail::is_boolean_pair(distinct)) return {{Stratum::nominal, Subtype::boolean}, std::nullopt};

  std::size_t dates = std::count_if(present.begin(), present.end(), text::is_date);
  if (detail::at_least_95pct(dates, present.size()))
    return {{Stratum::ordinal, Subtype::date}, std::nullopt};

  std::vector<double> numbers;
  bool fractional = false;
  for (auto v : present) {
    if (auto x = text::parse_number(v)) {
      numbers.push_back(*x);
      if (text::has_decimal_notation(v) || *x != std::floor(*x)) fractional = true;
    }
  }
  if (!numbers.empty() && detail::at_least_95pct(numbers.size(), present.size())) {
    if (fractional) return {{Stratum::continuous, Subtype::number}, std::nullopt};
    auto [lo, hi] = std::minmax_element(numbers.begin(), numbers.end());
    std::set<double> unique(numbers.begin(), numbers.end());
    if (*lo >= 1500 && *hi <= 2500 && unique.size() <= 30)
      return {{Stratum::ordinal, Subtype::date}, std::nullopt};
    if (unique.size() <= 20 && *hi - *lo <= 1000)
      return {{Stratum::discrete, Subtype::number}, std::nullopt};
    return {{Stratum::ordinal, Subtype::number}, std::nullopt};
  }
  return {{Stratum::nominal, Subtype::string}, std::nullopt};
}

}  // namespace nlabel
