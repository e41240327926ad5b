#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlabel/canonical_json.hpp"
#include "nlabel/error.hpp"
#include "nlabel/label.hpp"

namespace nlabel {

// Plain-text table with left-aligned, space-padded columns.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : rows_{std::move(header)} {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_)
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], row[i].size());
      }
    std::string out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::string line;
      for (std::size_t i = 0; i < rows_[r].size(); ++i) {
        if (i) line += "  ";
        line += rows_[r][i];
        if (i + 1 < rows_[r].size()) line.append(width[i] - rows_[r][i].size(), ' ');
      }
      out += line + "\n";
      if (r == 0) {
        std::size_t total = 0;
        for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i ? 2 : 0);
        out += std::string(total, '-') + "\n";
      }
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

namespace detail {

inline std::string fixed2(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

inline std::string or_dash(const std::optional<std::string>& s) { return s ? *s : "-"; }

inline std::string render_metadata(const MetadataPayload& m) {
  TextTable t({"field", "value"});
  t.add({"filename", m.filename});
  t.add({"format", m.format});
  t.add({"url", or_dash(m.url)});
  t.add({"domain", or_dash(m.domain)});
  t.add({"keywords", text::join(m.keywords, ", ")});
  t.add({"type", m.type});
  t.add({"rows", std::to_string(m.rows)});
  t.add({"columns", std::to_string(m.columns)});
  t.add({"missing", m.missing_pct});
  t.add({"license", or_dash(m.license)});
  t.add({"released", or_dash(m.released)});
  t.add({"range from", or_dash(m.range.from)});
  t.add({"range to", or_dash(m.range.to)});
  t.add({"description", or_dash(m.description)});
  return "Metadata\n" + t.str();
}

inline std::string render_provenance(const ProvenancePayload& p) {
  TextTable t({"role", "name", "url", "email"});
  for (auto [role, c] : {std::pair{"source", &p.source}, std::pair{"author", &p.author}})
    if (*c) t.add({role, (*c)->name, or_dash((*c)->url), or_dash((*c)->email)});
  return "Provenance\n" + t.str();
}

inline std::string render_variables(const VariablesPayload& v) {
  TextTable t({"name", "description"});
  for (const auto& e : v.entries) t.add({e.name, e.description});
  return "Variables\n" + t.str();
}

inline std::string render_statistics(const StatisticsPayload& s) {
  auto categorical = [](std::string_view title, const std::vector<CategoricalProfile>& cols) {
    TextTable t({"name", "type", "count", "uniqueEntries", "mostFrequent", "leastFrequent", "missing"});
    for (const auto& c : cols)
      t.add({c.name, std::string(to_string(c.subtype)), std::to_string(c.count),
             std::to_string(c.unique_entries) + (c.unique_includes_missing ? " including missing" : ""),
             c.most_frequent.display, c.least_frequent.display, c.missing_pct});
    return std::string(title) + "\n" + t.str();
  };
  auto numeric = [](std::string_view title, const std::vector<NumericProfile>& cols) {
    TextTable t({"name", "type", "count", "min", "median", "max", "mean", "standardDeviation", "missing", "zeros"});
    for (const auto& c : cols)
      t.add({c.name, std::string(to_string(c.subtype)), std::to_string(c.count), canonical_number(c.min),
             fixed2(c.median), canonical_number(c.max), fixed2(c.mean),
             c.standard_deviation ? fixed2(*c.standard_deviation) : "-", c.missing_pct, c.zeros_pct});
    return std::string(title) + "\n" + t.str();
  };
  return categorical("Ordinal", s.ordinal) + "\n" + categorical("Nominal", s.nominal) + "\n" +
         numeric("Continuous", s.continuous) + "\n" + numeric("Discrete", s.discrete);
}

inline std::string render_cell(const PairPlotCell& cell) {
  std::string out = "Pair: " + cell.column_a + " x " + cell.column_b + " (" + std::string(to_string(cell.kind)) +
                    ", " + std::to_string(cell.complete_rows) + " complete rows, " +
                    std::to_string(cell.excluded_rows) + " excluded)\n";
  if (const auto* m = std::get_if<CategoryMeans>(&cell.payload)) {
    TextTable t({m->category_column, "count", "sum(" + m->value_column + ")", "mean(" + m->value_column + ")"});
    for (const auto& c : m->categories)
      t.add({c.category, std::to_string(c.count), canonical_number(c.sum), canonical_number(c.mean)});
    if (m->other)
      t.add({"(other)", std::to_string(m->other->count), canonical_number(m->other->sum),
             canonical_number(m->other->mean)});
    out += t.str();
  } else if (const auto* b = std::get_if<JointBins>(&cell.payload)) {
    out += "pearson_r: " + (b->pearson_r ? canonical_number(*b->pearson_r) : std::string("undefined")) + "\n";
    std::vector<std::string> header{cell.column_a + " \\ " + cell.column_b};
    for (std::size_t j = 0; j + 1 < b->y_edges.size(); ++j)
      header.push_back("[" + canonical_number(b->y_edges[j]) + ", " + canonical_number(b->y_edges[j + 1]) +
                       (j + 2 == b->y_edges.size() ? "]" : ")"));
    TextTable t(header);
    for (std::size_t i = 0; i < b->counts.size(); ++i) {
      std::vector<std::string> row{"[" + canonical_number(b->x_edges[i]) + ", " + canonical_number(b->x_edges[i + 1]) +
                                   (i + 1 == b->counts.size() ? "]" : ")")};
      for (auto n : b->counts[i]) row.push_back(std::to_string(n));
      t.add(std::move(row));
    }
    out += t.str();
  } else if (const auto* c = std::get_if<Contingency>(&cell.payload)) {
    std::vector<std::string> header{cell.column_a + " \\ " + cell.column_b};
    for (const auto& cat : c->b_categories) header.push_back(cat);
    if (c->b_other) header.push_back("(other)");
    TextTable t(header);
    for (std::size_t i = 0; i < c->counts.size(); ++i) {
      std::vector<std::string> row{i < c->a_categories.size() ? c->a_categories[i] : "(other)"};
      for (auto n : c->counts[i]) row.push_back(std::to_string(n));
      t.add(std::move(row));
    }
    out += t.str();
  }
  return out;
}

inline std::string render_pair_plots(const PairPlotsPayload& p, const std::optional<std::pair<std::string, std::string>>& pair) {
  if (pair) {
    for (const auto& cell : p.cells)
      if ((cell.column_a == pair->first && cell.column_b == pair->second) ||
          (cell.column_a == pair->second && cell.column_b == pair->first))
        return render_cell(cell);
    throw Error("pair (" + pair->first + ", " + pair->second + ") is not in the pair_plots module");
  }
  TextTable h({"column", "kind", "bins", "non-missing", "missing"});
  for (const auto& hist : p.histograms)
    h.add({hist.column, hist.numeric ? "numeric" : "categorical", std::to_string(hist.counts.size()),
           std::to_string(hist.non_missing_count), std::to_string(hist.missing_count)});
  TextTable c({"column_a", "column_b", "kind", "complete"});
  for (const auto& cell : p.cells)
    c.add({cell.column_a, cell.column_b, std::string(to_string(cell.kind)), std::to_string(cell.complete_rows)});
  return "Histograms\n" + h.str() + "\nPairs (select one with --pair a,b)\n" + c.str();
}

inline std::string render_probabilistic(const ProbabilisticPayload& p) {
  std::string out;
  for (const auto& d : p.posteriors) {
    out += "P(" + d.condition_column + " | " + d.target_column + " = " + d.target_value + "), alpha " +
           canonical_number(d.alpha) + ", " + canonical_number(d.level * 100) + "% intervals from " +
           std::to_string(d.mc_samples) + " draws, seed " + std::to_string(d.seed) + "\n";
    TextTable t({d.condition_column, "count", "estimate", "lo", "hi"});
    auto shown = quantize_simplex(d.point_estimates);
    for (std::size_t k = 0; k < d.support.size(); ++k)
      t.add({d.support[k], std::to_string(d.counts[k]), canonical_number(shown[k]), canonical_number(d.intervals[k].lo),
             canonical_number(d.intervals[k].hi)});
    out += t.str() + "\n";
  }
  return out;
}

inline std::string render_ground_truth(const GroundTruthPayload& g) {
  std::string out;
  for (const auto& r : g.reports) {
    out += std::string(to_string(r.aggregate)) + " of " + r.value_column + " by " + r.key_column;
    if (r.reference) out += " vs " + r.reference->name;
    out += " (joined " + std::to_string(r.joined_keys) + " keys; unmatched: " + std::to_string(r.unmatched_dataset_keys) +
           " dataset, " + std::to_string(r.unmatched_ground_truth_keys) + " ground truth)\n";
    auto r_of = [&](const std::string& name) {
      for (const auto& e : r.entries)
        if (e.demographic == name && e.r) return canonical_number(*e.r);
      return std::string("undefined");
    };
    for (auto [title, list] : {std::pair{"Negative", &r.negative}, std::pair{"Positive", &r.positive}}) {
      TextTable t({"demographic", "r"});
      for (const auto& name : *list) t.add({name, r_of(name)});
      out += std::string(title) + "\n" + t.str();
    }
    std::vector<std::string> undefined;
    for (const auto& e : r.entries)
      if (!e.r || *e.r == 0.0) undefined.push_back(e.demographic);
    if (!undefined.empty()) out += "Zero or undefined: " + text::join(undefined, ", ") + "\n";
    out += "\n";
  }
  return out;
}

}  // namespace detail

inline std::vector<std::string> present_modules(const LabelDocument& doc) {
  std::vector<std::string> out{"metadata"};
  if (doc.provenance) out.emplace_back("provenance");
  if (doc.variables) out.emplace_back("variables");
  if (doc.statistics) out.emplace_back("statistics");
  if (doc.pair_plots) out.emplace_back("pair_plots");
  if (doc.probabilistic_model) out.emplace_back("probabilistic_model");
  if (doc.ground_truth_correlations) out.emplace_back("ground_truth_correlations");
  return out;
}

// Text rendering of one module. Throws Error naming the available modules
// when `module` is absent from the label.
inline std::string render_module(const LabelDocument& doc, std::string_view module,
                                 const std::optional<std::pair<std::string, std::string>>& pair = std::nullopt) {
  auto absent = [&] {
    return Error("module '" + std::string(module) + "' is not in this label (available: " +
                 text::join(present_modules(doc), ", ") + ")");
  };
  if (module == "metadata") return detail::render_metadata(doc.metadata);
  if (module == "provenance" && doc.provenance) return detail::render_provenance(*doc.provenance);
  if (module == "variables" && doc.variables) return detail::render_variables(*doc.variables);
  if (module == "statistics" && doc.statistics) return detail::render_statistics(*doc.statistics);
  if (module == "pair_plots" && doc.pair_plots) return detail::render_pair_plots(*doc.pair_plots, pair);
  if (module == "probabilistic_model" && doc.probabilistic_model)
    return detail::render_probabilistic(*doc.probabilistic_model);
  if (module == "ground_truth_correlations" && doc.ground_truth_correlations)
    return detail::render_ground_truth(*doc.ground_truth_correlations);
  throw absent();
}

}  // namespace nlabel
