#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lexbridge/retrieval.hpp"

namespace lexbridge {

// Gold standard: source word -> set of acceptable target translations.
// Query order follows first appearance in the file.
class TestDictionary {
  public:
    void add(const std::string& source, const std::string& target);

    const std::vector<std::string>& queries() const { return queries_; }
    const std::set<std::string>& gold(const std::string& source) const;
    bool contains(const std::string& source) const { return gold_.count(source) != 0; }
    std::size_t size() const { return queries_.size(); }

  private:
    std::vector<std::string> queries_;
    std::map<std::string, std::set<std::string>> gold_;
};

// TSV `source<TAB>target`; repeated source lines accumulate the gold set.
TestDictionary load_test_dictionary(const std::filesystem::path& path);

// Fraction of evaluated queries whose top-k candidates contain at least one
// gold translation. Only queries present in both `predictions` and `gold`
// enter the denominator.
double precision_at_k(const std::vector<TranslationCandidates>& predictions,
                      const TestDictionary& gold, std::size_t k);

// Chance that a uniform random size-k sample from N words hits one of g
// gold words: 1 - C(N-g, k)/C(N, k).
double analytic_random_precision(std::size_t vocab_size, std::size_t gold_size, std::size_t k);

struct BaselineEstimate {
    double analytic = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;  // standard error of the empirical mean
    std::size_t trials = 0;
};

// Averages the analytic value over the per-query gold sizes and estimates
// the same quantity empirically from `trials` simulated retrievals.
BaselineEstimate random_baseline(std::size_t vocab_size, const std::vector<std::size_t>& gold_sizes,
                                 std::size_t k, std::size_t trials, std::uint64_t seed);

// k at which single-gold random chance reaches the target precision:
// round(target * N), at least 1.
std::size_t rd_column_k(std::size_t vocab_size, double target_precision);

struct EvalReport {
    std::map<std::size_t, double> precision_per_k;
    std::map<std::size_t, double> baseline_per_k;  // analytic, same gold sizes
    std::size_t n_test = 0;
    std::size_t n_evaluated = 0;
    std::size_t n_skipped_oov = 0;
    bool oov_as_miss = false;
    std::size_t target_vocab_size = 0;
    std::size_t rd_k = 0;
    double rd_target = 0.0;
    double rd_precision = 0.0;
    std::vector<std::pair<std::string, std::string>> provenance;  // rendered in order
};

// Scores the predictions at every k of the grid plus the RD column.
// Prediction lists must be at least max(grid, rd_k) deep.
EvalReport evaluate(const BatchTranslationResult& predictions, const TestDictionary& gold,
                    const std::vector<std::size_t>& k_grid, double rd_target,
                    std::size_t target_vocab_size, bool oov_as_miss = false);

// key=value lines, fixed order, 6-decimal reals.
std::string render_report(const EvalReport& report);

// CSV `k,precision,baseline_precision` over a strictly increasing grid;
// every grid point must be present in the report.
std::string render_trend_csv(const EvalReport& report, const std::vector<std::size_t>& k_grid);

}  // namespace lexbridge
