#include "lexbridge/lexmatch.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "lexbridge/errors.hpp"
#include "lexbridge/rng.hpp"
#include "lexbridge/text.hpp"

namespace lexbridge {

namespace {

std::size_t levenshtein(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    if (n == 0) return m;
    if (m == 0) return n;
    std::vector<std::size_t> row(m + 1);
    for (std::size_t j = 0; j <= m; ++j) row[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t diagonal = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t above = row[j];
            const std::size_t cost = (a[i - 1] == b[j - 1]) ? 0 : 1;
            row[j] = std::min({above + 1, row[j - 1] + 1, diagonal + cost});
            diagonal = above;
        }
    }
    return row[m];
}

// Banded check: only the diagonal band of width 2*threshold+1 is filled,
// and the scan stops as soon as the whole band exceeds the threshold.
bool banded_within(const std::vector<char32_t>& a, const std::vector<char32_t>& b,
                   std::size_t threshold) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const std::size_t big = std::numeric_limits<std::size_t>::max() / 2;
    if (n > m) return banded_within(b, a, threshold);
    if (m - n > threshold) return false;
    if (threshold == 0) return a == b;

    std::vector<std::size_t> row(m + 1, big);
    for (std::size_t j = 0; j <= std::min(m, threshold); ++j) row[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        const std::size_t lo = (i > threshold) ? i - threshold : 0;
        const std::size_t hi = std::min(m, i + threshold);
        std::size_t diagonal = (lo > 0) ? row[lo - 1] : big;
        if (lo == 0) {
            diagonal = row[0];
            row[0] = i;
        } else {
            row[lo - 1] = big;
        }
        std::size_t best = big;
        for (std::size_t j = std::max<std::size_t>(lo, 1); j <= hi; ++j) {
            const std::size_t above = row[j];
            const std::size_t cost = (a[i - 1] == b[j - 1]) ? 0 : 1;
            row[j] = std::min({above + 1, row[j - 1] + 1, diagonal + cost});
            diagonal = above;
            best = std::min(best, row[j]);
        }
        if (lo == 0) best = std::min(best, row[0]);
        if (best > threshold) return false;
    }
    return row[m] <= threshold;
}

}  // namespace

std::size_t edit_distance(std::string_view a, std::string_view b) {
    return levenshtein(decode_utf8(a), decode_utf8(b));
}

bool within_edit_distance(std::string_view a, std::string_view b, std::size_t threshold) {
    return banded_within(decode_utf8(a), decode_utf8(b), threshold);
}

CandidateMap build_candidate_map(const Lexicon& word_lexicon, const Lexicon& donor_lexicon,
                                 std::size_t phi, unsigned threads) {
    CandidateMap map;
    map.phi = phi;

    // Donor words bucketed by codepoint length; each query probes only the
    // buckets within phi of its own length.
    struct Donor {
        std::string word;
        std::vector<char32_t> codepoints;
    };
    std::map<std::size_t, std::vector<Donor>> buckets;
    for (const auto& [word, count] : donor_lexicon.entries) {
        (void)count;
        std::vector<char32_t> cps = decode_utf8(word);
        buckets[cps.size()].push_back(Donor{word, std::move(cps)});
    }

    std::vector<std::string> queries;
    queries.reserve(word_lexicon.size());
    for (const auto& [word, count] : word_lexicon.entries) {
        (void)count;
        queries.push_back(word);
    }
    std::sort(queries.begin(), queries.end());

    std::vector<std::vector<std::string>> results(queries.size());
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t q = begin; q < end; ++q) {
            const std::vector<char32_t> cps = decode_utf8(queries[q]);
            std::vector<std::string>& hits = results[q];
            const std::size_t len = cps.size();
            const std::size_t lo = (len > phi) ? len - phi : 0;
            const std::size_t hi = len + phi;
            for (auto it = buckets.lower_bound(lo); it != buckets.end() && it->first <= hi; ++it) {
                for (const Donor& donor : it->second) {
                    if (banded_within(cps, donor.codepoints, phi)) hits.push_back(donor.word);
                }
            }
            std::sort(hits.begin(), hits.end());
        }
    };

    unsigned n_threads = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (n_threads <= 1 || queries.size() < 256) {
        worker(0, queries.size());
    } else {
        n_threads = std::min<unsigned>(n_threads, 16);
        std::vector<std::thread> pool;
        const std::size_t chunk = (queries.size() + n_threads - 1) / n_threads;
        for (unsigned t = 0; t < n_threads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(queries.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    for (std::size_t q = 0; q < queries.size(); ++q) {
        map.candidates.emplace(std::move(queries[q]), std::move(results[q]));
    }
    return map;
}

RewriteResult rewrite_corpus(const Corpus& corpus, const CandidateMap& map,
                             const RewriteConfig& config) {
    if (config.pi < 0.0 || config.pi > 1.0) throw_config("pi must be in [0, 1]");

    RewriteResult result;
    result.corpus.label = corpus.label;
    result.corpus.lines.reserve(corpus.lines.size());
    result.corpus.token_count = corpus.token_count;

    Rng rng(config.seed);
    std::unordered_set<std::string> touched;
    for (const auto& line : corpus.lines) {
        std::vector<std::string> out_line;
        out_line.reserve(line.size());
        for (const auto& token : line) {
            auto it = map.candidates.find(token);
            if (it == map.candidates.end()) {
                throw_config("corpus token not covered by the candidate map: " + token);
            }
            const std::vector<std::string>& options = it->second;
            if (!options.empty()) {
                ++result.stats.eligible;
                if (rng.bernoulli(config.pi)) {
                    ++result.stats.replaced;
                    touched.insert(token);
                    out_line.push_back(options[rng.uniform_index(options.size())]);
                    continue;
                }
            }
            out_line.push_back(token);
        }
        result.corpus.lines.push_back(std::move(out_line));
    }
    result.stats.distinct_words_touched = touched.size();
    return result;
}

void write_candidate_map_tsv(const CandidateMap& map, const std::filesystem::path& path) {
    std::string out;
    for (const auto& [word, options] : map.candidates) {
        out += word;
        out.push_back('\t');
        for (std::size_t i = 0; i < options.size(); ++i) {
            if (i) out.push_back(',');
            out += options[i];
        }
        out.push_back('\n');
    }
    write_text_file(path, out);
}

CandidateMap read_candidate_map_tsv(const std::filesystem::path& path) {
    CandidateMap map;
    std::istringstream in(read_text_file(path));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw_parse(path.string() + ":" + std::to_string(line_no) +
                        ": expected word<TAB>candidates");
        }
        std::string word = line.substr(0, tab);
        std::vector<std::string> options;
        std::string rest = line.substr(tab + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            if (comma > pos) options.push_back(rest.substr(pos, comma - pos));
            pos = comma + 1;
        }
        std::sort(options.begin(), options.end());
        map.candidates.emplace(std::move(word), std::move(options));
    }
    return map;
}

std::string format_rewrite_stats(const RewriteStats& stats) {
    char rate[32];
    std::snprintf(rate, sizeof(rate), "%.6f", stats.replacement_rate());
    std::string out;
    out += "eligible=" + std::to_string(stats.eligible) + "\n";
    out += "replaced=" + std::to_string(stats.replaced) + "\n";
    out += "replacement_rate=" + std::string(rate) + "\n";
    out += "distinct_words_touched=" + std::to_string(stats.distinct_words_touched) + "\n";
    return out;
}

}  // namespace lexbridge
