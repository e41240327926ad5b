#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nlabel/error.hpp"
#include "nlabel/pair_plots.hpp"
#include "nlabel/table.hpp"
#include "nlabel/text.hpp"

namespace nlabel {

enum class Aggregate { sum, mean, count, per_capita };

inline std::string_view to_string(Aggregate a) {
  switch (a) {
    case Aggregate::sum: return "sum";
    case Aggregate::mean: return "mean";
    case Aggregate::count: return "count";
    case Aggregate::per_capita: return "per_capita";
  }
  return "sum";
}

inline std::optional<Aggregate> parse_aggregate(std::string_view s) {
  for (Aggregate a : {Aggregate::sum, Aggregate::mean, Aggregate::count, Aggregate::per_capita})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

struct KeyOptions {
  bool zip_pad = true;  // left-pad all-digit keys shorter than 5 with zeros
};

inline std::string normalize_key(std::string_view raw, const KeyOptions& options = {}) {
  std::string key(text::trim(raw));
  if (options.zip_pad && text::all_digits(key) && key.size() < 5) key.insert(0, 5 - key.size(), '0');
  return key;
}

// Reference table keyed by a join column, one row per key. `values[d][i]` is
// demographic d for keys[i].
struct GroundTruthTable {
  std::string key_column;
  std::vector<std::string> demographic_columns;
  std::optional<std::string> population_column;
  std::vector<std::string> keys;
  std::vector<std::vector<double>> values;
  std::vector<double> population;  // empty without a population column

  std::optional<std::size_t> find_key(std::string_view key) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - keys.begin());
  }
};

struct GroundTruthSpec {
  std::string key_column;                    // empty: first column
  std::string population_column = "population";
  std::vector<std::string> demographics;     // empty: every other numeric column
  KeyOptions keys;
};

// Builds a reference table from a parsed CSV. Keys are normalized and must be
// unique; demographic and population cells must be present and finite, and
// populations positive.
inline GroundTruthTable load_ground_truth(const DataTable& table, const GroundTruthSpec& spec = {}) {
  if (table.column_count() < 2) throw ConfigError("ground-truth table needs a key column and at least one value column");
  GroundTruthTable gt;
  const std::size_t key_col = spec.key_column.empty() ? 0 : table.column_index(spec.key_column);
  gt.key_column = table.columns()[key_col];

  std::size_t pop_col = table.column_count();
  if (!spec.population_column.empty()) pop_col = table.find_column(spec.population_column);
  if (pop_col != table.column_count()) gt.population_column = table.columns()[pop_col];

  auto numeric_column = [&](std::size_t c) {
    for (std::size_t r = 0; r < table.row_count(); ++r)
      if (table.is_missing(r, c) || !text::parse_number(table.cell(r, c))) return false;
    return true;
  };
  std::vector<std::size_t> demo_cols;
  if (spec.demographics.empty()) {
    for (std::size_t c = 0; c < table.column_count(); ++c)
      if (c != key_col && c != pop_col && numeric_column(c)) demo_cols.push_back(c);
  } else {
    for (const auto& name : spec.demographics) demo_cols.push_back(table.column_index(name));
  }
  if (demo_cols.empty()) throw ConfigError("ground-truth table has no numeric demographic columns");

  auto read = [&](std::size_t r, std::size_t c) {
    auto x = table.is_missing(r, c) ? std::nullopt : text::parse_number(table.cell(r, c));
    if (!x)
      throw ProfileError("ground truth column '" + table.columns()[c] + "', row " + std::to_string(r + 1) +
                         ": expected a finite number");
    return *x;
  };

  std::map<std::string, std::size_t> row_of;
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    if (table.is_missing(r, key_col)) throw ProfileError("ground truth row " + std::to_string(r + 1) + " has no key");
    auto key = normalize_key(table.cell(r, key_col), spec.keys);
    if (!row_of.emplace(key, r).second) throw ProfileError("ground truth key '" + key + "' appears more than once");
  }
  gt.values.assign(demo_cols.size(), {});
  for (std::size_t c : demo_cols) gt.demographic_columns.push_back(table.columns()[c]);
  for (const auto& [key, r] : row_of) {
    gt.keys.push_back(key);
    for (std::size_t d = 0; d < demo_cols.size(); ++d) gt.values[d].push_back(read(r, demo_cols[d]));
    if (gt.population_column) {
      double p = read(r, pop_col);
      if (!(p > 0.0)) throw ProfileError("ground truth key '" + key + "' has non-positive population");
      gt.population.push_back(p);
    }
  }
  return gt;
}

struct KeyAggregates {
  Aggregate aggregate = Aggregate::sum;
  std::string value_column;
  std::map<std::string, double> values;
  std::set<std::string> unmatched_keys;  // per_capita keys with no population
  std::size_t excluded_rows = 0;         // missing key or missing value
};

// Per-key reduction of `value_column`. Values are summed in sorted order per
// key so the result does not depend on row order.
inline KeyAggregates aggregate_by_key(const DataTable& table, std::string_view key_column,
                                      std::string_view value_column, Aggregate aggregate,
                                      const GroundTruthTable* ground_truth = nullptr,
                                      const KeyOptions& keys = {}) {
  if (aggregate == Aggregate::per_capita && (!ground_truth || !ground_truth->population_column))
    throw ConfigError("per_capita aggregation requires a ground-truth population column");
  const std::size_t kc = table.column_index(key_column);
  const std::size_t vc = table.column_index(value_column);

  KeyAggregates out;
  out.aggregate = aggregate;
  out.value_column = std::string(value_column);
  std::map<std::string, std::vector<double>> groups;
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    if (table.is_missing(r, kc) || table.is_missing(r, vc)) {
      ++out.excluded_rows;
      continue;
    }
    double x = 1.0;
    if (aggregate != Aggregate::count) {
      auto parsed = text::parse_number(table.cell(r, vc));
      if (!parsed)
        throw ProfileError("column '" + std::string(value_column) + "', row " + std::to_string(r + 1) + ": '" +
                           table.cell(r, vc) + "' is not a number");
      x = *parsed;
    }
    groups[normalize_key(table.cell(r, kc), keys)].push_back(x);
  }
  for (auto& [key, xs] : groups) {
    std::sort(xs.begin(), xs.end());
    double sum = 0.0;
    for (double x : xs) sum += x;
    switch (aggregate) {
      case Aggregate::sum:
      case Aggregate::count: out.values[key] = sum; break;
      case Aggregate::mean: out.values[key] = sum / static_cast<double>(xs.size()); break;
      case Aggregate::per_capita:
        if (auto i = ground_truth->find_key(key))
          out.values[key] = sum / ground_truth->population[*i];
        else
          out.unmatched_keys.insert(key);
        break;
    }
  }
  return out;
}

struct CorrelationEntry {
  std::string demographic;
  std::optional<double> r;  // absent when a side has zero variance

  friend bool operator==(const CorrelationEntry&, const CorrelationEntry&) = default;
};

struct ReferenceInfo {
  std::string name;
  std::optional<std::string> url;

  friend bool operator==(const ReferenceInfo&, const ReferenceInfo&) = default;
};

struct CorrelationReport {
  Aggregate aggregate = Aggregate::sum;
  std::string value_column;
  std::string key_column;
  std::optional<ReferenceInfo> reference;
  std::size_t joined_keys = 0;
  std::size_t unmatched_dataset_keys = 0;
  std::size_t unmatched_ground_truth_keys = 0;
  std::size_t excluded_rows = 0;
  std::vector<CorrelationEntry> entries;  // ground-truth column order
  std::vector<std::string> positive;      // r > 0, strongest first
  std::vector<std::string> negative;      // r < 0, strongest first

  friend bool operator==(const CorrelationReport&, const CorrelationReport&) = default;
};

struct GroundTruthPayload {
  std::vector<CorrelationReport> reports;

  friend bool operator==(const GroundTruthPayload&, const GroundTruthPayload&) = default;
};

// Inner-joins the aggregates with the reference table and correlates each
// demographic column against the aggregate over the joined keys.
inline CorrelationReport correlate(const KeyAggregates& aggregates, const GroundTruthTable& ground_truth,
                                   const std::vector<std::string>& demographics = {}) {
  std::vector<std::size_t> demo_idx;
  if (demographics.empty()) {
    for (std::size_t d = 0; d < ground_truth.demographic_columns.size(); ++d) demo_idx.push_back(d);
  } else {
    for (const auto& name : demographics) {
      auto it = std::find(ground_truth.demographic_columns.begin(), ground_truth.demographic_columns.end(), name);
      if (it == ground_truth.demographic_columns.end())
        throw ConfigError("ground truth has no demographic column '" + name + "'");
      demo_idx.push_back(static_cast<std::size_t>(it - ground_truth.demographic_columns.begin()));
    }
  }

  CorrelationReport report;
  report.aggregate = aggregates.aggregate;
  report.value_column = aggregates.value_column;
  report.key_column = ground_truth.key_column;
  report.excluded_rows = aggregates.excluded_rows;
  std::vector<double> agg;
  std::vector<std::size_t> gt_rows;
  for (const auto& [key, value] : aggregates.values) {
    if (auto i = ground_truth.find_key(key)) {
      agg.push_back(value);
      gt_rows.push_back(*i);
    } else {
      ++report.unmatched_dataset_keys;
    }
  }
  report.unmatched_dataset_keys += aggregates.unmatched_keys.size();
  report.joined_keys = agg.size();
  report.unmatched_ground_truth_keys = ground_truth.keys.size() - agg.size();
  if (report.joined_keys < 3)
    throw ProfileError("ground-truth join matched " + std::to_string(report.joined_keys) +
                       " keys; at least 3 are required for a correlation");

  for (std::size_t d : demo_idx) {
    std::vector<double> demo;
    for (std::size_t i : gt_rows) demo.push_back(ground_truth.values[d][i]);
    report.entries.push_back({ground_truth.demographic_columns[d], pearson(agg, demo)});
  }
  std::vector<const CorrelationEntry*> pos, neg;
  for (const auto& e : report.entries) {
    if (e.r && *e.r > 0) pos.push_back(&e);
    if (e.r && *e.r < 0) neg.push_back(&e);
  }
  auto by = [](bool descending) {
    return [descending](const CorrelationEntry* a, const CorrelationEntry* b) {
      if (*a->r != *b->r) return descending ? *a->r > *b->r : *a->r < *b->r;
      return a->demographic < b->demographic;
    };
  };
  std::sort(pos.begin(), pos.end(), by(true));
  std::sort(neg.begin(), neg.end(), by(false));
  for (auto* e : pos) report.positive.push_back(e->demographic);
  for (auto* e : neg) report.negative.push_back(e->demographic);
  return report;
}

}  // namespace nlabel
