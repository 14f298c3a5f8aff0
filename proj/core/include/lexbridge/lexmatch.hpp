#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lexbridge/corpus.hpp"

namespace lexbridge {

// Unit-cost Levenshtein distance over Unicode scalar values.
std::size_t edit_distance(std::string_view a, std::string_view b);

// True iff edit_distance(a, b) <= threshold; banded, exits early.
bool within_edit_distance(std::string_view a, std::string_view b, std::size_t threshold);

// For each word w of one lexicon, the set of words of the other lexicon
// within edit distance phi. Candidate lists are sorted; words with no
// candidate keep an entry with an empty list.
struct CandidateMap {
    std::size_t phi = 0;
    std::map<std::string, std::vector<std::string>> candidates;
};

// Distances are evaluated against a length-bucketed index over donor_lexicon
// (only buckets within phi of the query length are probed).
CandidateMap build_candidate_map(const Lexicon& word_lexicon, const Lexicon& donor_lexicon,
                                 std::size_t phi, unsigned threads = 0);

struct RewriteConfig {
    double pi = 0.5;        // per-occurrence replacement probability
    std::uint64_t seed = 1;
};

struct RewriteStats {
    std::uint64_t eligible = 0;   // occurrences whose candidate list is non-empty
    std::uint64_t replaced = 0;
    std::uint64_t distinct_words_touched = 0;

    double replacement_rate() const {
        return eligible == 0 ? 0.0 : static_cast<double>(replaced) / static_cast<double>(eligible);
    }
};

struct RewriteResult {
    Corpus corpus;
    RewriteStats stats;
};

// Visits tokens in corpus order. Each occurrence of a word with a non-empty
// candidate list is independently replaced with probability pi by a uniform
// random candidate (lists are kept sorted, so the draw is reproducible).
// A corpus token missing from the map is a hard error.
RewriteResult rewrite_corpus(const Corpus& corpus, const CandidateMap& map,
                             const RewriteConfig& config);

// `w<TAB>w1,w2,...` with candidates comma-joined and sorted; an empty
// candidate list is an empty second field.
void write_candidate_map_tsv(const CandidateMap& map, const std::filesystem::path& path);
CandidateMap read_candidate_map_tsv(const std::filesystem::path& path);

// key=value lines: eligible, replaced, replacement_rate, distinct_words_touched.
std::string format_rewrite_stats(const RewriteStats& stats);

}  // namespace lexbridge
