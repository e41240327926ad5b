#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "nlabel/column_kind.hpp"
#include "nlabel/error.hpp"
#include "nlabel/stats.hpp"
#include "nlabel/table.hpp"

namespace nlabel {

// Pearson product-moment correlation. Returns nullopt when either vector has
// zero variance; the result is clamped to [-1, 1].
inline std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("pearson: vectors differ in length");
  if (x.size() < 2) throw Error("pearson: need at least two observations");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

struct PairOptions {
  std::size_t max_bins = 20;
  std::size_t max_categories = 20;
  std::size_t column_limit = 25;
};

struct Histogram {
  std::string column;
  bool numeric = true;
  std::vector<double> bin_edges;         // numeric: bins + 1 edges
  std::vector<std::string> categories;   // categorical: top categories
  std::vector<std::size_t> counts;
  std::size_t other_count = 0;
  std::size_t missing_count = 0;
  std::size_t non_missing_count = 0;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

namespace detail {

struct Binning {
  std::vector<double> edges;

  std::size_t bins() const { return edges.size() - 1; }

  // Half-open bins, except the last which also includes its right edge.
  std::size_t index(double x) const {
    const std::size_t nb = bins();
    if (nb == 1) return 0;
    const double width = (edges.back() - edges.front()) / static_cast<double>(nb);
    double pos = std::floor((x - edges.front()) / width);
    std::size_t i = pos < 0 ? 0 : std::min(static_cast<std::size_t>(pos), nb - 1);
    while (i > 0 && x < edges[i]) --i;
    while (i + 1 < nb && x >= edges[i + 1]) ++i;
    return i;
  }
};

inline Binning equal_width(std::span<const double> xs, std::size_t max_bins) {
  auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  const double min = *lo, max = *hi;
  std::set<double> distinct(xs.begin(), xs.end());
  std::size_t nb = std::max<std::size_t>(1, std::min(max_bins, distinct.size()));
  if (min == max) return {{min, max}};
  Binning b;
  const double width = (max - min) / static_cast<double>(nb);
  for (std::size_t i = 0; i < nb; ++i) b.edges.push_back(min + static_cast<double>(i) * width);
  b.edges.push_back(max);
  return b;
}

// Categories ordered by descending count, ties broken lexicographically.
inline std::vector<std::pair<std::string, std::size_t>> ranked_categories(
    const std::map<std::string, std::size_t>& freq) {
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return ranked;
}

}  // namespace detail

inline Histogram numeric_histogram(std::string_view column, std::span<const double> xs,
                                   std::size_t missing, std::size_t max_bins = 20) {
  if (xs.empty()) throw ProfileError("histogram: column '" + std::string(column) + "' is all missing");
  Histogram h;
  h.column = std::string(column);
  auto binning = detail::equal_width(xs, max_bins);
  h.bin_edges = binning.edges;
  h.counts.assign(binning.bins(), 0);
  for (double x : xs) ++h.counts[binning.index(x)];
  h.missing_count = missing;
  h.non_missing_count = xs.size();
  return h;
}

inline Histogram categorical_histogram(std::string_view column, const std::vector<std::string_view>& values,
                                       std::size_t missing, std::size_t max_categories = 20) {
  if (values.empty()) throw ProfileError("histogram: column '" + std::string(column) + "' is all missing");
  std::map<std::string, std::size_t> freq;
  for (auto v : values) ++freq[std::string(v)];
  Histogram h;
  h.column = std::string(column);
  h.numeric = false;
  auto ranked = detail::ranked_categories(freq);
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (i < max_categories) {
      h.categories.push_back(ranked[i].first);
      h.counts.push_back(ranked[i].second);
    } else {
      h.other_count += ranked[i].second;
    }
  }
  h.missing_count = missing;
  h.non_missing_count = values.size();
  return h;
}

// Histogram of one table column, dispatched on its stratum.
inline Histogram histogram(const DataTable& table, std::size_t col, const ColumnKind& kind,
                           const PairOptions& options = {}) {
  auto values = table.column_values(col);
  const auto& name = table.columns()[col];
  std::size_t missing = table.missing_in_column(col);
  if (is_numeric(kind.stratum)) {
    auto xs = numeric_values(values, name);
    return numeric_histogram(name, xs, missing, options.max_bins);
  }
  std::vector<std::string_view> present;
  for (const auto& v : values)
    if (!v.missing) present.push_back(v.raw);
  return categorical_histogram(name, present, missing, options.max_categories);
}

enum class PairKind { cont_cont, cat_cat, cat_cont };

inline std::string_view to_string(PairKind k) {
  switch (k) {
    case PairKind::cont_cont: return "cont_cont";
    case PairKind::cat_cat: return "cat_cat";
    case PairKind::cat_cont: return "cat_cont";
  }
  return "cat_cat";
}

// 2D equal-width binning of two numeric columns; counts[i][j] pairs x bin i
// with y bin j.
struct JointBins {
  std::vector<double> x_edges;
  std::vector<double> y_edges;
  std::vector<std::vector<std::size_t>> counts;
  std::optional<double> pearson_r;

  friend bool operator==(const JointBins&, const JointBins&) = default;
};

// Contingency table over the top categories of each column. When a `*_other`
// flag is set, the last row (or column) of `counts` is the overflow bucket.
struct Contingency {
  std::vector<std::string> a_categories;
  std::vector<std::string> b_categories;
  bool a_other = false;
  bool b_other = false;
  std::vector<std::vector<std::size_t>> counts;

  friend bool operator==(const Contingency&, const Contingency&) = default;
};

struct CategoryAggregate {
  std::string category;
  std::size_t count = 0;
  double sum = 0.0;
  double mean = 0.0;

  friend bool operator==(const CategoryAggregate&, const CategoryAggregate&) = default;
};

struct CategoryMeans {
  std::string category_column;
  std::string value_column;
  std::vector<CategoryAggregate> categories;
  std::optional<CategoryAggregate> other;  // categories beyond the cap, pooled

  friend bool operator==(const CategoryMeans&, const CategoryMeans&) = default;
};

struct PairPlotCell {
  std::string column_a;
  std::string column_b;
  PairKind kind = PairKind::cat_cat;
  std::size_t complete_rows = 0;
  std::size_t excluded_rows = 0;
  std::variant<JointBins, Contingency, CategoryMeans> payload;

  friend bool operator==(const PairPlotCell&, const PairPlotCell&) = default;
};

struct SkippedPair {
  std::string column_a;
  std::string column_b;
  std::string reason;

  friend bool operator==(const SkippedPair&, const SkippedPair&) = default;
};

struct PairPlotsPayload {
  std::vector<Histogram> histograms;
  std::vector<PairPlotCell> cells;
  std::vector<SkippedPair> skipped;
  std::size_t max_bins = 20;

  friend bool operator==(const PairPlotsPayload&, const PairPlotsPayload&) = default;
};

namespace detail {

inline std::vector<double> parse_numbers(const std::vector<std::string_view>& raws, std::string_view column,
                                         const std::vector<std::size_t>& rows) {
  std::vector<double> out;
  out.reserve(raws.size());
  for (std::size_t i = 0; i < raws.size(); ++i) {
    auto x = text::parse_number(raws[i]);
    if (!x)
      throw ProfileError("column '" + std::string(column) + "', row " + std::to_string(rows[i] + 1) +
                         ": '" + std::string(raws[i]) + "' is not a number");
    out.push_back(*x);
  }
  return out;
}

// Top-K labels plus a lookup from raw value to row/column index, the
// overflow bucket (if any) mapping to index K.
struct CategoryIndex {
  std::vector<std::string> labels;
  bool other = false;
  std::map<std::string, std::size_t, std::less<>> index;

  std::size_t slots() const { return labels.size() + (other ? 1 : 0); }
  std::size_t of(std::string_view v) const {
    auto it = index.find(v);
    return it == index.end() ? labels.size() : it->second;
  }
};

inline CategoryIndex top_categories(const std::vector<std::string_view>& values, std::size_t cap) {
  std::map<std::string, std::size_t> freq;
  for (auto v : values) ++freq[std::string(v)];
  CategoryIndex ci;
  auto ranked = ranked_categories(freq);
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (i < cap) {
      ci.index.emplace(ranked[i].first, ci.labels.size());
      ci.labels.push_back(ranked[i].first);
    } else {
      ci.other = true;
    }
  }
  return ci;
}

}  // namespace detail

// Joint summary of two distinct columns over the rows where both cells are
// present. The cell's kind follows from the two strata.
inline PairPlotCell pair_payload(const DataTable& table, std::string_view a, std::string_view b,
                                 const std::vector<ColumnKind>& kinds, const PairOptions& options = {}) {
  if (a == b) throw ConfigError("pair plot needs two different columns, got '" + std::string(a) + "' twice");
  const std::size_t ca = table.column_index(a);
  const std::size_t cb = table.column_index(b);
  const bool a_num = is_numeric(kinds.at(ca).stratum);
  const bool b_num = is_numeric(kinds.at(cb).stratum);

  std::vector<std::size_t> rows;
  std::vector<std::string_view> va, vb;
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    if (table.is_missing(r, ca) || table.is_missing(r, cb)) continue;
    rows.push_back(r);
    va.push_back(table.cell(r, ca));
    vb.push_back(table.cell(r, cb));
  }
  if (rows.size() < 2)
    throw ProfileError("pair (" + std::string(a) + ", " + std::string(b) + ") has " +
                       std::to_string(rows.size()) + " complete rows; at least 2 are required");

  PairPlotCell cell;
  cell.column_a = std::string(a);
  cell.column_b = std::string(b);
  cell.complete_rows = rows.size();
  cell.excluded_rows = table.row_count() - rows.size();

  if (a_num && b_num) {
    cell.kind = PairKind::cont_cont;
    auto xs = detail::parse_numbers(va, a, rows);
    auto ys = detail::parse_numbers(vb, b, rows);
    auto bx = detail::equal_width(xs, options.max_bins);
    auto by = detail::equal_width(ys, options.max_bins);
    JointBins joint;
    joint.x_edges = bx.edges;
    joint.y_edges = by.edges;
    joint.counts.assign(bx.bins(), std::vector<std::size_t>(by.bins(), 0));
    for (std::size_t i = 0; i < xs.size(); ++i) ++joint.counts[bx.index(xs[i])][by.index(ys[i])];
    joint.pearson_r = pearson(xs, ys);
    cell.payload = std::move(joint);
  } else if (!a_num && !b_num) {
    cell.kind = PairKind::cat_cat;
    auto ia = detail::top_categories(va, options.max_categories);
    auto ib = detail::top_categories(vb, options.max_categories);
    Contingency ct;
    ct.counts.assign(ia.slots(), std::vector<std::size_t>(ib.slots(), 0));
    for (std::size_t i = 0; i < va.size(); ++i) ++ct.counts[ia.of(va[i])][ib.of(vb[i])];
    ct.a_categories = std::move(ia.labels);
    ct.b_categories = std::move(ib.labels);
    ct.a_other = ia.other;
    ct.b_other = ib.other;
    cell.payload = std::move(ct);
  } else {
    cell.kind = PairKind::cat_cont;
    const auto& cats = a_num ? vb : va;
    auto values = detail::parse_numbers(a_num ? va : vb, a_num ? a : b, rows);
    auto index = detail::top_categories(cats, options.max_categories);
    std::vector<CategoryAggregate> slots(index.slots());
    for (std::size_t k = 0; k < index.labels.size(); ++k) slots[k].category = index.labels[k];
    for (std::size_t i = 0; i < cats.size(); ++i) {
      auto& s = slots[index.of(cats[i])];
      ++s.count;
      s.sum += values[i];
    }
    for (auto& s : slots) s.mean = s.sum / static_cast<double>(s.count);
    CategoryMeans means;
    means.category_column = std::string(a_num ? b : a);
    means.value_column = std::string(a_num ? a : b);
    if (index.other) {
      means.other = slots.back();
      slots.pop_back();
    }
    means.categories = std::move(slots);
    cell.payload = std::move(means);
  }
  return cell;
}

inline PairPlotsPayload pair_plots_for(const DataTable& table, const std::vector<ColumnKind>& kinds,
                                       const std::vector<std::pair<std::string, std::string>>& pairs,
                                       const PairOptions& options = {}) {
  PairPlotsPayload out;
  out.max_bins = options.max_bins;
  for (std::size_t c = 0; c < table.column_count(); ++c)
    if (table.missing_in_column(c) < table.row_count()) out.histograms.push_back(histogram(table, c, kinds[c], options));
  for (const auto& [a, b] : pairs) {
    table.column_index(a);
    table.column_index(b);
    try {
      out.cells.push_back(pair_payload(table, a, b, kinds, options));
    } catch (const ProfileError& e) {
      out.skipped.push_back({a, b, e.what()});
    }
  }
  return out;
}

// Every unordered column pair, ordered by (index a, index b) with a < b.
inline PairPlotsPayload all_pairs(const DataTable& table, const std::vector<ColumnKind>& kinds,
                                  const PairOptions& options = {}) {
  if (table.column_count() > options.column_limit)
    throw ConfigError(std::to_string(table.column_count()) + " columns exceed the pair-plot limit of " +
                      std::to_string(options.column_limit) + "; list the pairs to compute with --pair a,b");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < table.column_count(); ++i)
    for (std::size_t j = i + 1; j < table.column_count(); ++j)
      pairs.emplace_back(table.columns()[i], table.columns()[j]);
  return pair_plots_for(table, kinds, pairs, options);
}

}  // namespace nlabel
