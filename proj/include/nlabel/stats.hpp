#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlabel/column_kind.hpp"
#include "nlabel/error.hpp"
#include "nlabel/table.hpp"
#include "nlabel/text.hpp"

namespace nlabel {

inline constexpr std::string_view kMissingDisplay = "missing value";
inline constexpr std::string_view kTieDisplay = "multiple detected";

struct FrequencyCell {
  enum class Kind { value, missing_pseudo, tie };

  Kind kind = Kind::tie;
  std::string display;
  std::optional<std::string> value;
  std::optional<std::size_t> frequency;

  static FrequencyCell of_value(std::string v, std::size_t n) {
    std::string shown = v + " (" + std::to_string(n) + ")";
    return {Kind::value, std::move(shown), std::move(v), n};
  }
  static FrequencyCell of_missing(std::size_t n) {
    return {Kind::missing_pseudo, std::string(kMissingDisplay) + " (" + std::to_string(n) + ")",
            std::nullopt, n};
  }
  static FrequencyCell of_tie() { return {Kind::tie, std::string(kTieDisplay), std::nullopt, std::nullopt}; }

  friend bool operator==(const FrequencyCell&, const FrequencyCell&) = default;
};

inline std::string_view to_string(FrequencyCell::Kind k) {
  switch (k) {
    case FrequencyCell::Kind::value: return "value";
    case FrequencyCell::Kind::missing_pseudo: return "missing_pseudo";
    case FrequencyCell::Kind::tie: return "tie";
  }
  return "tie";
}

struct CategoricalProfile {
  std::string name;
  Subtype subtype = Subtype::string;
  Origin origin = Origin::inferred;
  std::size_t count = 0;
  std::size_t unique_entries = 0;
  bool unique_includes_missing = false;
  FrequencyCell most_frequent;
  FrequencyCell least_frequent;
  std::size_t missing_count = 0;
  std::string missing_pct;
  double missing_fraction = 0.0;

  friend bool operator==(const CategoricalProfile&, const CategoricalProfile&) = default;
};

struct NumericProfile {
  std::string name;
  Subtype subtype = Subtype::number;
  Origin origin = Origin::inferred;
  std::size_t count = 0;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  double mean = 0.0;
  std::optional<double> standard_deviation;  // sample (n - 1); absent when n < 2
  std::size_t missing_count = 0;
  std::string missing_pct;
  double missing_fraction = 0.0;
  std::size_t zeros_count = 0;
  std::string zeros_pct;

  friend bool operator==(const NumericProfile&, const NumericProfile&) = default;
};

// Column summaries grouped by stratum, each list in dataset column order.
struct StatisticsPayload {
  std::vector<CategoricalProfile> ordinal;
  std::vector<CategoricalProfile> nominal;
  std::vector<NumericProfile> continuous;
  std::vector<NumericProfile> discrete;

  std::size_t size() const {
    return ordinal.size() + nominal.size() + continuous.size() + discrete.size();
  }

  friend bool operator==(const StatisticsPayload&, const StatisticsPayload&) = default;
};

struct DatasetProfile {
  StatisticsPayload statistics;
  std::size_t missing_cells = 0;
  std::size_t total_cells = 0;
  double missing_fraction = 0.0;
  std::string missing_pct;  // one decimal, e.g. "5.2%"
};

namespace detail {

// Picks the extreme entry among real values. The missing pseudo-entry takes
// the slot only when it is strictly more extreme than every real value; two
// or more real values sharing the extreme count form a tie.
template <typename Better>
FrequencyCell pick_extreme(const std::map<std::string, std::size_t>& freq, std::size_t missing,
                           Better better) {
  std::optional<std::size_t> best;
  std::size_t holders = 0;
  const std::string* holder = nullptr;
  for (const auto& [value, n] : freq) {
    if (!best || better(n, *best)) {
      best = n;
      holders = 1;
      holder = &value;
    } else if (n == *best) {
      ++holders;
    }
  }
  if (missing > 0 && (!best || better(missing, *best))) return FrequencyCell::of_missing(missing);
  if (holders > 1) return FrequencyCell::of_tie();
  return FrequencyCell::of_value(*holder, *best);
}

}  // namespace detail

inline CategoricalProfile profile_categorical(const std::vector<ColumnValue>& column,
                                              std::string_view name, const ColumnKind& kind) {
  if (!is_categorical(kind.stratum))
    throw ProfileError("column '" + std::string(name) + "' is not ordinal or nominal");
  if (column.empty()) throw ProfileError("column '" + std::string(name) + "' is empty");

  std::map<std::string, std::size_t> freq;
  std::size_t missing = 0;
  for (const auto& v : column) {
    if (v.missing)
      ++missing;
    else
      ++freq[std::string(v.raw)];
  }

  CategoricalProfile p;
  p.name = std::string(name);
  p.subtype = kind.subtype;
  p.origin = kind.origin;
  p.count = column.size();
  p.unique_includes_missing = missing > 0;
  p.unique_entries = freq.size() + (missing > 0 ? 1 : 0);
  p.most_frequent = detail::pick_extreme(freq, missing, [](auto a, auto b) { return a > b; });
  p.least_frequent = detail::pick_extreme(freq, missing, [](auto a, auto b) { return a < b; });
  p.missing_count = missing;
  p.missing_pct = text::format_percent(missing, column.size(), 2);
  p.missing_fraction = static_cast<double>(missing) / static_cast<double>(column.size());
  return p;
}

// Non-missing values of a numeric column, in row order. Throws naming the
// first cell that does not parse.
inline std::vector<double> numeric_values(const std::vector<ColumnValue>& column, std::string_view name) {
  std::vector<double> xs;
  xs.reserve(column.size());
  for (std::size_t r = 0; r < column.size(); ++r) {
    if (column[r].missing) continue;
    auto x = text::parse_number(column[r].raw);
    if (!x)
      throw ProfileError("column '" + std::string(name) + "', row " + std::to_string(r + 1) +
                         ": '" + std::string(column[r].raw) +
                         "' is not a number (add a missing token or a type override)");
    xs.push_back(*x);
  }
  return xs;
}

inline double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

inline NumericProfile profile_numeric(const std::vector<ColumnValue>& column, std::string_view name,
                                      const ColumnKind& kind) {
  if (!is_numeric(kind.stratum))
    throw ProfileError("column '" + std::string(name) + "' is not continuous or discrete");
  std::vector<double> xs = numeric_values(column, name);
  if (xs.empty()) throw ProfileError("column '" + std::string(name) + "' has no non-missing values");

  NumericProfile p;
  p.name = std::string(name);
  p.subtype = kind.subtype;
  p.origin = kind.origin;
  p.count = column.size();
  auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  p.min = *lo;
  p.max = *hi;
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double n = static_cast<double>(xs.size());
  p.mean = sum / n;
  if (xs.size() >= 2) {
    double ss = 0.0;
    for (double x : xs) ss += (x - p.mean) * (x - p.mean);
    p.standard_deviation = std::sqrt(ss / (n - 1.0));
  }
  p.zeros_count = static_cast<std::size_t>(std::count(xs.begin(), xs.end(), 0.0));
  p.zeros_pct = text::format_percent(p.zeros_count, xs.size(), 2);
  p.missing_count = column.size() - xs.size();
  p.missing_pct = text::format_percent(p.missing_count, column.size(), 2);
  p.missing_fraction = static_cast<double>(p.missing_count) / static_cast<double>(column.size());
  p.median = median_of(std::move(xs));
  return p;
}

inline DatasetProfile profile_dataset(const DataTable& table, const std::vector<ColumnKind>& kinds) {
  if (kinds.size() != table.column_count())
    throw ProfileError("column kinds do not cover every column");
  DatasetProfile out;
  for (std::size_t c = 0; c < table.column_count(); ++c) {
    auto values = table.column_values(c);
    const auto& name = table.columns()[c];
    switch (kinds[c].stratum) {
      case Stratum::ordinal: out.statistics.ordinal.push_back(profile_categorical(values, name, kinds[c])); break;
      case Stratum::nominal: out.statistics.nominal.push_back(profile_categorical(values, name, kinds[c])); break;
      case Stratum::continuous: out.statistics.continuous.push_back(profile_numeric(values, name, kinds[c])); break;
      case Stratum::discrete: out.statistics.discrete.push_back(profile_numeric(values, name, kinds[c])); break;
    }
  }
  out.missing_cells = table.missing_total();
  out.total_cells = table.row_count() * table.column_count();
  out.missing_fraction = out.total_cells ? static_cast<double>(out.missing_cells) / out.total_cells : 0.0;
  out.missing_pct = text::format_percent(out.missing_cells, out.total_cells, 1);
  return out;
}

inline std::vector<ColumnInference> infer_kinds(const DataTable& table,
                                                const std::map<std::string, ColumnKind>& overrides = {}) {
  for (const auto& [name, kind] : overrides)
    if (table.find_column(name) == table.column_count())
      throw ConfigError("type override names unknown column '" + name + "'");
  std::vector<ColumnInference> out;
  for (std::size_t c = 0; c < table.column_count(); ++c)
    out.push_back(infer_column_kind(table.column_values(c), table.columns()[c], overrides));
  return out;
}

}  // namespace nlabel
