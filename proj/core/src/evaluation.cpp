#include "lexbridge/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "lexbridge/corpus.hpp"
#include "lexbridge/errors.hpp"
#include "lexbridge/rng.hpp"

namespace lexbridge {

void TestDictionary::add(const std::string& source, const std::string& target) {
    if (source.empty() || target.empty()) throw_config("test dictionary entries must be non-empty");
    auto [it, inserted] = gold_.try_emplace(source);
    if (inserted) queries_.push_back(source);
    it->second.insert(target);
}

const std::set<std::string>& TestDictionary::gold(const std::string& source) const {
    auto it = gold_.find(source);
    if (it == gold_.end()) throw_config("no gold entry for query: " + source);
    return it->second;
}

TestDictionary load_test_dictionary(const std::filesystem::path& path) {
    TestDictionary dictionary;
    std::istringstream in(read_text_file(path));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
            throw_parse(path.string() + ":" + std::to_string(line_no) +
                        ": expected source<TAB>target");
        }
        dictionary.add(line.substr(0, tab), line.substr(tab + 1));
    }
    return dictionary;
}

namespace {

// Rank (1-based) of the first gold hit in a ranked candidate list, or 0.
std::size_t first_hit_rank(const TranslationCandidates& prediction,
                           const std::set<std::string>& gold) {
    for (std::size_t i = 0; i < prediction.ranked.size(); ++i) {
        if (gold.count(prediction.ranked[i].word)) return i + 1;
    }
    return 0;
}

}  // namespace

double precision_at_k(const std::vector<TranslationCandidates>& predictions,
                      const TestDictionary& gold, std::size_t k) {
    if (k < 1) throw_config("k must be >= 1");
    if (gold.size() == 0) throw_config("empty test dictionary");
    std::size_t evaluated = 0;
    std::size_t hits = 0;
    for (const auto& prediction : predictions) {
        if (!gold.contains(prediction.query)) continue;
        ++evaluated;
        const std::size_t rank = first_hit_rank(prediction, gold.gold(prediction.query));
        if (rank != 0 && rank <= k) ++hits;
    }
    if (evaluated == 0) return 0.0;
    return static_cast<double>(hits) / static_cast<double>(evaluated);
}

double analytic_random_precision(std::size_t vocab_size, std::size_t gold_size, std::size_t k) {
    if (k > vocab_size) throw_config("k exceeds vocabulary size");
    if (gold_size == 0) return 0.0;
    if (gold_size >= vocab_size || k + gold_size > vocab_size) return 1.0;
    // 1 - C(N-g, k) / C(N, k), evaluated as a running product for stability.
    double miss = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        miss *= static_cast<double>(vocab_size - gold_size - i) /
                static_cast<double>(vocab_size - i);
    }
    return 1.0 - miss;
}

BaselineEstimate random_baseline(std::size_t vocab_size, const std::vector<std::size_t>& gold_sizes,
                                 std::size_t k, std::size_t trials, std::uint64_t seed) {
    if (gold_sizes.empty()) throw_config("random_baseline: no gold sizes");
    if (k > vocab_size) throw_config("k exceeds vocabulary size");
    if (trials == 0) throw_config("random_baseline: trials must be >= 1");

    BaselineEstimate estimate;
    estimate.trials = trials;
    for (std::size_t g : gold_sizes) estimate.analytic += analytic_random_precision(vocab_size, g, k);
    estimate.analytic /= static_cast<double>(gold_sizes.size());

    Rng rng(seed);
    std::unordered_set<std::uint64_t> sample;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::size_t hits = 0;
        for (std::size_t g : gold_sizes) {
            // Floyd's sampling of k distinct indices from [0, N); the gold
            // words are taken to be indices 0..g-1.
            sample.clear();
            bool hit = false;
            for (std::uint64_t j = vocab_size - k; j < vocab_size; ++j) {
                const std::uint64_t t = rng.uniform_index(j + 1);
                const std::uint64_t chosen = sample.insert(t).second ? t : j;
                if (chosen != t) sample.insert(chosen);
                if (chosen < g) hit = true;
            }
            if (hit) ++hits;
        }
        const double precision = static_cast<double>(hits) / static_cast<double>(gold_sizes.size());
        sum += precision;
        sum_sq += precision * precision;
    }
    estimate.empirical = sum / static_cast<double>(trials);
    const double variance =
        std::max(0.0, sum_sq / static_cast<double>(trials) - estimate.empirical * estimate.empirical);
    estimate.std_error = std::sqrt(variance / static_cast<double>(trials));
    return estimate;
}

std::size_t rd_column_k(std::size_t vocab_size, double target_precision) {
    if (!(target_precision > 0.0) || target_precision > 1.0) {
        throw_config("rd target precision must be in (0, 1]");
    }
    const double raw = target_precision * static_cast<double>(vocab_size);
    auto k = static_cast<std::size_t>(std::llround(raw));
    if (k < 1) k = 1;
    if (k > vocab_size) k = vocab_size;
    return k;
}

EvalReport evaluate(const BatchTranslationResult& predictions, const TestDictionary& gold,
                    const std::vector<std::size_t>& k_grid, double rd_target,
                    std::size_t target_vocab_size, bool oov_as_miss) {
    if (gold.size() == 0) throw_config("empty test dictionary");
    if (k_grid.empty()) throw_config("empty k grid");
    for (std::size_t i = 1; i < k_grid.size(); ++i) {
        if (k_grid[i] <= k_grid[i - 1]) throw_config("k grid must be strictly increasing");
    }

    EvalReport report;
    report.n_test = gold.size();
    report.oov_as_miss = oov_as_miss;
    report.target_vocab_size = target_vocab_size;
    report.rd_target = rd_target;
    report.rd_k = rd_column_k(target_vocab_size, rd_target);

    std::unordered_map<std::string, const TranslationCandidates*> by_query;
    for (const auto& prediction : predictions.results) {
        by_query.emplace(prediction.query, &prediction);
    }

    std::vector<std::size_t> hit_ranks;  // 0 = no hit within the list
    std::vector<std::size_t> gold_sizes;
    std::size_t misses_from_oov = 0;
    for (const std::string& query : gold.queries()) {
        auto it = by_query.find(query);
        if (it == by_query.end()) {
            ++report.n_skipped_oov;
            if (oov_as_miss) ++misses_from_oov;
            continue;
        }
        hit_ranks.push_back(first_hit_rank(*it->second, gold.gold(query)));
        gold_sizes.push_back(gold.gold(query).size());
    }
    report.n_evaluated = hit_ranks.size();

    const std::size_t denominator = report.n_evaluated + misses_from_oov;
    std::vector<std::size_t> all_k(k_grid);
    if (std::find(all_k.begin(), all_k.end(), report.rd_k) == all_k.end()) {
        all_k.push_back(report.rd_k);
        std::sort(all_k.begin(), all_k.end());
    }

    for (std::size_t k : all_k) {
        std::size_t hits = 0;
        for (std::size_t rank : hit_ranks) {
            if (rank != 0 && rank <= k) ++hits;
        }
        const double precision =
            denominator == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(denominator);
        report.precision_per_k[k] = precision;

        double baseline = 0.0;
        for (std::size_t g : gold_sizes) {
            baseline += analytic_random_precision(target_vocab_size, g, std::min(k, target_vocab_size));
        }
        report.baseline_per_k[k] =
            gold_sizes.empty() ? 0.0 : baseline / static_cast<double>(gold_sizes.size());
    }
    report.rd_precision = report.precision_per_k.at(report.rd_k);

    // Monotonicity is structural (hits can only grow with k); guard anyway.
    double previous = -1.0;
    for (const auto& [k, precision] : report.precision_per_k) {
        if (precision < previous) throw_internal("precision@k decreased in k");
        previous = precision;
    }
    return report;
}

std::string render_report(const EvalReport& report) {
    std::string out;
    char buffer[64];
    out += "report=lexbridge-eval\n";
    for (const auto& [key, value] : report.provenance) {
        out += key;
        out.push_back('=');
        out += value;
        out.push_back('\n');
    }
    out += "n_test=" + std::to_string(report.n_test) + "\n";
    out += "n_evaluated=" + std::to_string(report.n_evaluated) + "\n";
    out += "n_skipped_oov=" + std::to_string(report.n_skipped_oov) + "\n";
    out += std::string("oov_policy=") + (report.oov_as_miss ? "miss" : "skip") + "\n";
    out += "target_vocab_size=" + std::to_string(report.target_vocab_size) + "\n";
    std::snprintf(buffer, sizeof(buffer), "%.6f", report.rd_target);
    out += "rd_target=" + std::string(buffer) + "\n";
    out += "rd_k=" + std::to_string(report.rd_k) + "\n";
    for (const auto& [k, precision] : report.precision_per_k) {
        std::snprintf(buffer, sizeof(buffer), "precision@%zu=%.6f\n", k, precision);
        out += buffer;
    }
    for (const auto& [k, baseline] : report.baseline_per_k) {
        std::snprintf(buffer, sizeof(buffer), "baseline@%zu=%.6f\n", k, baseline);
        out += buffer;
    }
    std::snprintf(buffer, sizeof(buffer), "%.6f", report.rd_precision);
    out += "rd_precision=" + std::string(buffer) + "\n";
    return out;
}

std::string render_trend_csv(const EvalReport& report, const std::vector<std::size_t>& k_grid) {
    if (k_grid.empty()) throw_config("empty k grid");
    for (std::size_t i = 1; i < k_grid.size(); ++i) {
        if (k_grid[i] <= k_grid[i - 1]) throw_config("k grid must be strictly increasing");
    }
    std::string out = "k,precision,baseline_precision\n";
    char buffer[96];
    for (std::size_t k : k_grid) {
        auto it = report.precision_per_k.find(k);
        auto bit = report.baseline_per_k.find(k);
        if (it == report.precision_per_k.end() || bit == report.baseline_per_k.end()) {
            throw_config("trend grid point " + std::to_string(k) + " missing from the report");
        }
        std::snprintf(buffer, sizeof(buffer), "%zu,%.6f,%.6f\n", k, it->second, bit->second);
        out += buffer;
    }
    return out;
}

}  // namespace lexbridge
