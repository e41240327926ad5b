// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "nlabel.hpp"
#include "oracles.hpp"

using namespace nlabel;

namespace {

struct Check {
  std::string detail;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string q(const std::string& s) { return "'" + s + "'"; }

// ---- statistics ----------------------------------------------------------

void statistics_oracle(Check& c) {
  std::mt19937_64 rng(20170101);
  const auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 200 && c.ok; ++trial) {
    auto rt = oracle::random_table(rng, 1000, 10);
    auto d = profile_dataset(rt.table, rt.kinds);
    std::size_t cat[2] = {0, 0}, num[2] = {0, 0};
    std::size_t missing_total = 0;
    for (const auto& col : rt.columns) {
      missing_total += static_cast<std::size_t>(std::count(col.missing.begin(), col.missing.end(), true));
      const auto stratum = col.kind.stratum;
      if (stratum == Stratum::ordinal || stratum == Stratum::nominal) {
        const auto& p = stratum == Stratum::ordinal ? d.statistics.ordinal[cat[0]++] : d.statistics.nominal[cat[1]++];
        auto t = oracle::tally(col.cells, col.missing);
        const std::string where = "trial " + std::to_string(trial) + " column " + p.name;
        c.expect(p.count == t.count, where + ": count");
        c.expect(p.unique_entries == t.unique, where + ": uniqueEntries");
        c.expect(p.most_frequent.display == t.most, where + ": mostFrequent " + p.most_frequent.display + " vs " + t.most);
        c.expect(p.least_frequent.display == t.least, where + ": leastFrequent " + p.least_frequent.display + " vs " + t.least);
        c.expect(p.missing_count == t.missing, where + ": missing count");
        c.expect(p.missing_pct == oracle::percent(t.missing, t.count, 2), where + ": missing pct " + p.missing_pct);
      } else {
        const auto& p =
            stratum == Stratum::continuous ? d.statistics.continuous[num[0]++] : d.statistics.discrete[num[1]++];
        auto xs = oracle::present_numbers(col);
        auto m = oracle::moments(xs);
        const std::string where = "trial " + std::to_string(trial) + " column " + p.name;
        c.expect(p.count == col.cells.size(), where + ": count");
        c.expect(p.min == m.min && p.max == m.max, where + ": min/max");
        c.expect(oracle::close_rel(p.median, m.median, 1e-9), where + ": median");
        c.expect(oracle::close_rel(p.mean, m.mean, 1e-9), where + ": mean");
        if (xs.size() >= 2)
          c.expect(p.standard_deviation && oracle::close_rel(*p.standard_deviation, m.sd, 1e-9), where + ": sd");
        else
          c.expect(!p.standard_deviation, where + ": sd should be absent");
        c.expect(p.zeros_count == m.zeros, where + ": zeros");
        c.expect(p.missing_count == col.cells.size() - xs.size(), where + ": missing count");
        c.expect(p.missing_pct == oracle::percent(p.missing_count, col.cells.size(), 2), where + ": missing pct");
      }
    }
    const std::size_t total = rt.table.row_count() * rt.table.column_count();
    c.expect(d.missing_pct == oracle::percent(missing_total, total, 1), "dataset missing pct " + d.missing_pct);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 30.0, "took " + std::to_string(secs) + " s");
}

void format_contract(Check& c) {
  c.expect(text::format_percent(468, 9000, 1) == "5.2%", "468/9000");
  c.expect(text::format_percent(16, 500, 2) == "3.20%", "16/500");
  c.expect(text::format_percent(0, 500, 2) == "0.00%", "0/500");
  c.expect(text::format_percent(1, 8, 1) == "12.5%", "1/8");
  c.expect(text::format_percent(1, 16, 1) == "6.3%", "1/16 rounds half up");
  c.expect(text::format_percent(2, 3, 2) == "66.67%", "2/3");

  auto tie = profile_categorical(
      {{"a", false}, {"a", false}, {"b", false}, {"b", false}, {"c", false}}, "tie",
      ColumnKind{Stratum::nominal, Subtype::string});
  c.expect(tie.most_frequent.display == "multiple detected", "tie mostFrequent " + tie.most_frequent.display);
  c.expect(tie.least_frequent.display == "c (1)", "tie leastFrequent " + tie.least_frequent.display);

  auto t = read_csv_file(oracle::fixture("docs_payments.csv"));
  std::vector<ColumnKind> kinds;
  for (auto& i : infer_kinds(t)) kinds.push_back(i.kind);
  auto d = profile_dataset(t, kinds);
  c.expect(d.missing_pct == "5.2%", "fixture missing " + d.missing_pct);
  for (const auto* list : {&d.statistics.ordinal, &d.statistics.nominal})
    for (const auto& p : *list) {
      static const std::regex pct(R"(^\d{1,3}\.\d{2}%$)");
      static const std::regex freq(R"(^(multiple detected|.+ \(\d+\))$)");
      c.expect(std::regex_match(p.missing_pct, pct), p.name + " missing " + p.missing_pct);
      c.expect(std::regex_match(p.most_frequent.display, freq), p.name + " mostFrequent " + p.most_frequent.display);
      c.expect(std::regex_match(p.least_frequent.display, freq), p.name + " leastFrequent " + p.least_frequent.display);
    }
  auto find = [&](const std::string& name) -> const CategoricalProfile* {
    for (const auto* list : {&d.statistics.ordinal, &d.statistics.nominal})
      for (const auto& p : *list)
        if (p.name == name) return &p;
    return nullptr;
  };
  const auto* product = find("product_name");
  c.expect(product && product->most_frequent.display == "Xarelto (200)", "product_name mostFrequent");
  c.expect(product && product->least_frequent.display == "Aciphex (1)", "product_name leastFrequent");
  c.expect(product && product->missing_pct == "3.20%", "product_name missing");
}

// ---- correlation ---------------------------------------------------------

void pearson_criterion(Check& c) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 1000 && c.ok; ++trial) {
    const std::size_t n = 2 + rng() % 99;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = g(rng) * 10;
      y[i] = 0.3 * x[i] + g(rng);
    }
    auto r = pearson(x, y);
    c.expect(r && std::fabs(*r - oracle::textbook_pearson(x, y)) <= 1e-12, "oracle mismatch, trial " + std::to_string(trial));
    c.expect(r && *r >= -1.0 && *r <= 1.0, "out of range");
    std::vector<double> ax(n), by(n);
    for (std::size_t i = 0; i < n; ++i) {
      ax[i] = 2.5 * x[i] + 4.0;
      by[i] = -1.5 * y[i] - 1.0;
    }
    auto s = pearson(ax, by);
    c.expect(s && std::fabs(*s + *r) <= 1e-12, "affine equivariance, trial " + std::to_string(trial));
  }
  std::vector<double> x{1, 2, 3, 4, 5}, up{3, 5, 7, 9, 11}, down{10, 8, 6, 4, 2}, flat{4, 4, 4, 4, 4};
  c.expect(pearson(x, up) == 1.0, "exact +1");
  c.expect(pearson(x, down) == -1.0, "exact -1");
  c.expect(!pearson(x, flat), "zero variance should be undefined");
}

// ---- probabilistic model -------------------------------------------------

void dirichlet_criterion(Check& c) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng() % 9;
    std::vector<std::size_t> counts(k);
    for (auto& n : counts) n = rng() % 1000;
    const double alpha = 0.1 + static_cast<double>(rng() % 50) / 10.0;
    auto p = posterior_mean(counts, alpha);
    const long double total = std::accumulate(counts.begin(), counts.end(), 0.0L) + alpha * k;
    long double sum = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const double closed = static_cast<double>((counts[i] + static_cast<long double>(alpha)) / total);
      c.expect(std::fabs(p[i] - closed) <= 1e-12, "posterior mean, trial " + std::to_string(trial));
      sum += p[i];
    }
    c.expect(std::fabs(static_cast<double>(sum) - 1.0) <= 1e-12, "posterior sums to 1");
    auto shown = quantize_simplex(p);
    c.expect(std::fabs(std::accumulate(shown.begin(), shown.end(), 0.0) - 1.0) <= 1e-6, "quantized sum");
  }

  std::vector<std::size_t> empty{0, 0};
  auto iv = credible_intervals(empty, 1.0, 0.90, 42, 10000);
  for (const auto& i : iv)
    c.expect(std::fabs(i.lo - 0.05) <= 0.02 && std::fabs(i.hi - 0.95) <= 0.02,
             "uniform interval [" + std::to_string(i.lo) + ", " + std::to_string(i.hi) + "]");

  std::vector<std::size_t> counts{12, 3, 40, 0};
  c.expect(credible_intervals(counts, 1.0, 0.9, 5, 5000) == credible_intervals(counts, 1.0, 0.9, 5, 5000),
           "same seed gives identical intervals");
  auto a = sample_synthetic_indices(posterior_mean(counts, 1.0), 1000, 5);
  c.expect(a == sample_synthetic_indices(posterior_mean(counts, 1.0), 1000, 5), "same seed gives identical draws");

  std::vector<double> pred{2.0 / 3.0, 1.0 / 3.0};
  auto idx = sample_synthetic_indices(pred, 100000, 2017);
  const double f0 = static_cast<double>(std::count(idx.begin(), idx.end(), 0u)) / static_cast<double>(idx.size());
  c.expect(std::fabs(f0 - 2.0 / 3.0) <= 0.01, "synthetic frequency " + std::to_string(f0));
}

// ---- ground truth --------------------------------------------------------

void ground_truth_criterion(Check& c) {
  const char* gt_csv =
      "zip,population,up,down,flat\n"
      "2138,1000,2,9,0.5\n10001,2000,6,7,0.5\n94105,4000,10,5,0.5\n60601,500,14,3,0.5\n";
  const char* data_csv = "zip,amount\n02138,1\n10001,1\n10001,2\n94105,5\n60601,3\n60601,4\n";
  auto gt = load_ground_truth(parse_csv(gt_csv));
  c.expect(normalize_key("2138") == "02138", "zip padding");
  auto report = correlate(aggregate_by_key(parse_csv(data_csv), "zip", "amount", Aggregate::sum, &gt), gt);
  c.expect(report.joined_keys == 4, "joined keys");
  c.expect(report.entries.size() == 3 && report.entries[0].r == 1.0, "exact +1");
  c.expect(report.entries.size() == 3 && report.entries[1].r == -1.0, "exact -1");
  c.expect(report.entries.size() == 3 && !report.entries[2].r, "flat column undefined");
  c.expect(report.positive == std::vector<std::string>{"up"} && report.negative == std::vector<std::string>{"down"},
           "positive/negative partition");

  auto small = load_ground_truth(parse_csv("zip,v\n1,1\n2,2\n3,3\n"));
  bool threw = false;
  try {
    correlate(aggregate_by_key(parse_csv("zip,amount\n1,5\n2,6\n"), "zip", "amount", Aggregate::sum, &small), small);
  } catch (const ProfileError&) {
    threw = true;
  }
  c.expect(threw, "join of two keys must fail");

  // fixture: every demographic lands in exactly one of positive, negative, undefined
  auto census = load_ground_truth(read_csv_file(oracle::fixture("state_census.csv")), GroundTruthSpec{"state"});
  auto pay = read_csv_file(oracle::fixture("docs_payments.csv"));
  auto r = correlate(aggregate_by_key(pay, "recipient_state", "total_amount_of_payment_usdollars", Aggregate::sum,
                                      &census),
                     census);
  std::set<std::string> seen;
  for (auto& n : r.positive) c.expect(seen.insert(n).second, "duplicate " + n);
  for (auto& n : r.negative) c.expect(seen.insert(n).second, "duplicate " + n);
  for (auto& e : r.entries) c.expect((seen.count(e.demographic) == 1) == (e.r && *e.r != 0.0), "partition " + e.demographic);
}

// ---- label file ----------------------------------------------------------

const char* kAll =
    "metadata,provenance,variables,statistics,pair_plots,probabilistic_model,ground_truth_correlations";

std::string make_args(const std::string& modules, const std::string& out) {
  const auto f = [](const char* n) { return q(oracle::fixture(n)); };
  return "make " + f("docs_payments.csv") + " --modules " + modules + " --meta " + f("meta.json") + " --overrides " +
         f("overrides.json") + " --gt " + f("state_census.csv") +
         " --gt-key state --dataset-key recipient_state --value-column total_amount_of_payment_usdollars"
         " --aggregates sum,per_capita --target product_name --target-values Eliquis,Xarelto"
         " --condition recipient_state --seed 42 --synthetic 1000 --timestamp 2017-01-01T00:00:00Z --out " +
         q(out);
}

void round_trip_and_validation(Check& c) {
  auto dir = oracle::scratch("acceptance");
  const std::vector<std::string> suites{"metadata", "metadata,statistics", "metadata,statistics,pair_plots",
                                        "metadata,provenance,variables", "metadata,probabilistic_model",
                                        "metadata,ground_truth_correlations", kAll};
  std::string full;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    const auto out = (dir / ("label" + std::to_string(i) + ".json")).string();
    auto made = oracle::run_cli(make_args(suites[i], out));
    c.expect(made.status == 0, "make " + suites[i] + " exited " + std::to_string(made.status) + ": " + made.err);
    if (made.status != 0) continue;
    auto v = oracle::run_cli("validate " + q(out));
    c.expect(v.status == 0 && v.out.empty(), "validate " + suites[i] + ": " + v.out);
    const auto bytes = oracle::slurp(out);
    c.expect(serialize(deserialize(bytes)) == bytes, "round trip " + suites[i]);
    if (suites[i] == kAll) full = bytes;
  }
  if (full.empty()) return;

  auto corrupt = [&](const std::string& tag, const std::function<void(Json&)>& edit, const std::string& path,
                     const std::string& rule) {
    auto j = Json::parse(full);
    edit(j);
    const auto file = (dir / (tag + ".json")).string();
    oracle::spit(file, j.dump(2));
    auto v = oracle::run_cli("validate " + q(file));
    const auto ls = oracle::lines(v.out);
    c.expect(v.status == 1 && ls.size() == 1 && ls[0].rfind(path + "\t" + rule + "\t", 0) == 0,
             tag + ": got exit " + std::to_string(v.status) + " and '" + v.out + "'");
  };
  corrupt("no-metadata", [](Json& j) { j["modules"].erase("metadata"); }, "modules.metadata", "required");
  corrupt(
      "probability-sum",
      [](Json& j) {
        auto& p = j["modules"]["probabilistic_model"]["posteriors"][0]["point_estimates"];
        p[0] = p[0].get<double>() + 0.01;
      },
      "modules.probabilistic_model.posteriors[0].point_estimates", "probability.sum");
  corrupt(
      "pearson-range", [](Json& j) { j["modules"]["ground_truth_correlations"]["reports"][0]["entries"][0]["r"] = 1.5; },
      "modules.ground_truth_correlations.reports[0].entries[0].r", "pearson.range");
  std::filesystem::remove_all(dir);
}

void action_list(Check& c) {
  auto dir = oracle::scratch("acceptance-action");
  const auto out = (dir / "label.json").string();
  auto r = oracle::run_cli("make " + q(oracle::fixture("docs_payments.csv")) + " --modules metadata --out " + q(out));
  const auto ls = oracle::lines(r.out);
  c.expect(r.status == 2, "exit " + std::to_string(r.status));
  c.expect(std::find(ls.begin(), ls.end(), "ACTION: modules.metadata.description") != ls.end(), "no description action");
  c.expect(!std::filesystem::exists(out), "label written despite actions");
  std::filesystem::remove_all(dir);
}

void determinism(Check& c) {
  auto dir = oracle::scratch("acceptance-determinism");
  const auto a = (dir / "a.json").string(), b = (dir / "b.json").string();
  c.expect(oracle::run_cli(make_args(kAll, a)).status == 0, "first run");
  c.expect(oracle::run_cli(make_args(kAll, b)).status == 0, "second run");
  c.expect(!oracle::slurp(a).empty() && oracle::slurp(a) == oracle::slurp(b), "labels differ between runs");
  c.expect(oracle::slurp(a) == oracle::slurp(oracle::golden("docs_payments.label.json")), "label differs from golden");
  std::filesystem::remove_all(dir);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"statistics match brute-force tallies and moments on 200 random tables", statistics_oracle},
      {"percent and frequency strings follow the format contract", format_contract},
      {"pearson matches the textbook formula, exact at +-1, undefined on zero variance, affine equivariant",
       pearson_criterion},
      {"dirichlet posterior, intervals, seeding and synthetic draws", dirichlet_criterion},
      {"ground truth correlations: exact signs, partition, small join rejected, zip padding", ground_truth_criterion},
      {"labels round-trip and validate; each corruption yields exactly one violation", round_trip_and_validation},
      {"missing manual fields produce ACTION lines and exit status 2", action_list},
      {"make is deterministic and reproduces the golden label", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS: " : "FAIL: ") << name;
    if (!c.ok) std::cout << " (" << c.detail << ")";
    std::cout << std::endl;
    failed += !c.ok;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
