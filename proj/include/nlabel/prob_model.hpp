#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlabel/column_kind.hpp"
#include "nlabel/error.hpp"
#include "nlabel/philox.hpp"
#include "nlabel/table.hpp"
#include "nlabel/text.hpp"

namespace nlabel {

// Stream ids inside one seed. Interval draws and synthetic draws never share
// counters, so adding synthetic output leaves the intervals untouched.
inline constexpr std::uint32_t kIntervalStream = 0;
inline constexpr std::uint32_t kSyntheticStream = 1;

struct CredibleInterval {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const CredibleInterval&, const CredibleInterval&) = default;
};

struct SyntheticSummary {
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> counts;  // per support category

  friend bool operator==(const SyntheticSummary&, const SyntheticSummary&) = default;
};

// Dirichlet(alpha + n_1, ..., alpha + n_K) posterior over the categories of
// `condition_column`, fitted on the rows where `target_column` equals
// `target_value`.
struct PosteriorDistribution {
  std::string target_column;
  std::string target_value;
  std::string condition_column;
  std::vector<std::string> support;
  std::vector<std::size_t> counts;
  double alpha = 1.0;
  std::vector<double> point_estimates;
  double level = 0.90;
  std::vector<CredibleInterval> intervals;
  std::uint64_t seed = 0;
  std::size_t mc_samples = 10000;
  std::optional<SyntheticSummary> synthetic;

  friend bool operator==(const PosteriorDistribution&, const PosteriorDistribution&) = default;
};

struct ProbabilisticPayload {
  std::vector<PosteriorDistribution> posteriors;

  friend bool operator==(const ProbabilisticPayload&, const ProbabilisticPayload&) = default;
};

struct FitOptions {
  double alpha = 1.0;
  double level = 0.90;
  std::uint64_t seed = 0;
  std::size_t mc_samples = 10000;
};

// (n_k + alpha) / (N + K * alpha)
inline std::vector<double> posterior_mean(std::span<const std::size_t> counts, double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  double total = 0.0;
  for (auto n : counts) total += static_cast<double>(n);
  const double denom = total + static_cast<double>(counts.size()) * alpha;
  std::vector<double> p;
  p.reserve(counts.size());
  for (auto n : counts) p.push_back((static_cast<double>(n) + alpha) / denom);
  return p;
}

// One Dirichlet variate: independent gammas normalised by their sum.
inline std::vector<double> dirichlet_draw(RandomStream& rng, std::span<const double> shapes) {
  std::vector<double> logs(shapes.size());
  for (std::size_t k = 0; k < shapes.size(); ++k) logs[k] = rng.log_gamma_variate(shapes[k]);
  const double top = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (auto& l : logs) {
    l = std::exp(l - top);
    sum += l;
  }
  for (auto& l : logs) l /= sum;
  return logs;
}

// Empirical quantile with linear interpolation between order statistics
// (Hyndman-Fan type 7). `sorted` must be ascending.
inline double empirical_quantile(std::span<const double> sorted, double q) {
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

// Monte-Carlo equal-tailed credible intervals at `level` for every
// component. Draws come from stream kIntervalStream of `seed`, components in
// support order within each draw.
inline std::vector<CredibleInterval> credible_intervals(std::span<const std::size_t> counts, double alpha,
                                                        double level, std::uint64_t seed,
                                                        std::size_t mc_samples) {
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("credible level must lie in (0, 1)");
  if (mc_samples < 1000) throw ConfigError("mc_samples must be at least 1000");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  std::vector<double> shapes;
  for (auto n : counts) shapes.push_back(static_cast<double>(n) + alpha);

  RandomStream rng(seed, kIntervalStream);
  std::vector<std::vector<double>> samples(counts.size(), std::vector<double>(mc_samples));
  for (std::size_t s = 0; s < mc_samples; ++s) {
    auto draw = dirichlet_draw(rng, shapes);
    for (std::size_t k = 0; k < draw.size(); ++k) samples[k][s] = draw[k];
  }
  std::vector<CredibleInterval> out;
  for (auto& column : samples) {
    std::sort(column.begin(), column.end());
    out.push_back({empirical_quantile(column, (1.0 - level) / 2.0),
                   empirical_quantile(column, (1.0 + level) / 2.0)});
  }
  return out;
}

inline std::vector<CredibleInterval> credible_intervals(const PosteriorDistribution& posterior, double level,
                                                        std::uint64_t seed, std::size_t mc_samples) {
  return credible_intervals(posterior.counts, posterior.alpha, level, seed, mc_samples);
}

// m independent draws from the posterior predictive, as support indices.
inline std::vector<std::size_t> sample_synthetic_indices(std::span<const double> predictive, std::size_t m,
                                                         std::uint64_t seed) {
  std::vector<double> cumulative;
  double acc = 0.0;
  for (double p : predictive) cumulative.push_back(acc += p);
  RandomStream rng(seed, kSyntheticStream);
  std::vector<std::size_t> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    out.push_back(std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), predictive.size() - 1));
  }
  return out;
}

inline std::vector<std::string> sample_synthetic(const PosteriorDistribution& posterior, std::size_t m,
                                                 std::uint64_t seed) {
  std::vector<std::string> out;
  out.reserve(m);
  for (auto k : sample_synthetic_indices(posterior.point_estimates, m, seed)) out.push_back(posterior.support[k]);
  return out;
}

inline SyntheticSummary summarize_synthetic(const PosteriorDistribution& posterior, std::size_t m,
                                            std::uint64_t seed) {
  SyntheticSummary s;
  s.size = m;
  s.seed = seed;
  s.counts.assign(posterior.support.size(), 0);
  for (auto k : sample_synthetic_indices(posterior.point_estimates, m, seed)) ++s.counts[k];
  return s;
}

namespace detail {

inline std::vector<std::string> nearest_values(const std::set<std::string>& pool, std::string_view probe,
                                               std::size_t limit = 3) {
  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const auto& v : pool) scored.emplace_back(text::edit_distance(v, probe), v);
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && i < limit; ++i) out.push_back(scored[i].second);
  return out;
}

}  // namespace detail

// Fits the conditional posterior of `condition` given `target == target_value`.
// The support is every non-missing category of `condition` in the whole
// table, in lexicographic order, so categories never seen with the target
// still receive probability alpha / (N + K * alpha).
inline PosteriorDistribution fit_conditional(const DataTable& table, const std::vector<ColumnKind>& kinds,
                                             std::string_view target, std::string_view target_value,
                                             std::string_view condition, const FitOptions& options = {}) {
  const std::size_t ct = table.column_index(target);
  const std::size_t cc = table.column_index(condition);
  if (!is_categorical(kinds.at(ct).stratum))
    throw ConfigError("target column '" + std::string(target) + "' must be ordinal or nominal");
  if (!is_categorical(kinds.at(cc).stratum))
    throw ConfigError("condition column '" + std::string(condition) + "' must be ordinal or nominal");
  if (!(options.alpha > 0.0)) throw ConfigError("alpha must be positive");

  std::set<std::string> target_pool;
  std::set<std::string> support;
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    if (!table.is_missing(r, ct)) target_pool.insert(table.cell(r, ct));
    if (!table.is_missing(r, cc)) support.insert(table.cell(r, cc));
  }
  if (!target_pool.count(std::string(target_value))) {
    throw ProfileError("value '" + std::string(target_value) + "' does not occur in column '" +
                       std::string(target) + "'; nearest matches: " +
                       text::join(detail::nearest_values(target_pool, target_value), ", "));
  }
  if (support.size() < 2)
    throw ProfileError("condition column '" + std::string(condition) + "' has " + std::to_string(support.size()) +
                       " categories; at least 2 are required");

  PosteriorDistribution post;
  post.target_column = std::string(target);
  post.target_value = std::string(target_value);
  post.condition_column = std::string(condition);
  post.support.assign(support.begin(), support.end());
  post.counts.assign(post.support.size(), 0);
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    if (table.is_missing(r, ct) || table.is_missing(r, cc) || table.cell(r, ct) != target_value) continue;
    auto it = std::lower_bound(post.support.begin(), post.support.end(), table.cell(r, cc));
    ++post.counts[static_cast<std::size_t>(it - post.support.begin())];
  }
  post.alpha = options.alpha;
  post.point_estimates = posterior_mean(post.counts, options.alpha);
  post.level = options.level;
  post.seed = options.seed;
  post.mc_samples = options.mc_samples;
  post.intervals = credible_intervals(post.counts, options.alpha, options.level, options.seed, options.mc_samples);
  return post;
}

}  // namespace nlabel
