#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexbridge {

// A tokenized text: one token sequence per input line, in input order.
struct Corpus {
    std::vector<std::vector<std::string>> lines;
    std::uint64_t token_count = 0;
    std::string label;
};

struct TokenizerOptions {
    // Drop tokens made entirely of decimal digits (verse numbers and the
    // like). Off by default.
    bool drop_numeric = false;
};

// Lowercases (simple case fold), splits each line on whitespace, strips
// leading and trailing punctuation from every chunk, and drops chunks
// that end up empty. Lines are delimited by LF; a trailing CR is removed.
// Invalid UTF-8 raises a parse error naming the byte offset.
Corpus tokenize(std::string_view raw_text, std::string label, const TokenizerOptions& options = {});

Corpus read_corpus_file(const std::filesystem::path& path, std::string label,
                        const TokenizerOptions& options = {});

// Canonical on-disk form: tokens joined by single spaces, LF line ends.
// Tokenizing the result reproduces the corpus exactly.
void write_corpus_file(const Corpus& corpus, const std::filesystem::path& path);
std::string format_corpus(const Corpus& corpus);

// Word -> occurrence count for one corpus.
struct Lexicon {
    std::unordered_map<std::string, std::uint64_t> entries;
    std::string label;

    std::size_t size() const { return entries.size(); }
    bool contains(const std::string& word) const { return entries.count(word) != 0; }
    std::uint64_t count(const std::string& word) const {
        auto it = entries.find(word);
        return it == entries.end() ? 0 : it->second;
    }
    // Entries sorted by descending count, then lexicographic word.
    std::vector<std::pair<std::string, std::uint64_t>> sorted_entries() const;
};

// Keeps exactly the words occurring at least min_count times (min_count >= 1).
Lexicon build_lexicon(const Corpus& corpus, std::uint64_t min_count = 1);

struct OverlapReport {
    std::string label_a;
    std::string label_b;
    std::size_t size_a = 0;
    std::size_t size_b = 0;
    std::size_t intersection = 0;
    double ratio = 0.0;  // intersection / size_a
};

OverlapReport vocab_overlap(const Lexicon& lex_a, const Lexicon& lex_b);

// `word<TAB>count` sorted by descending count then word, no header.
void write_lexicon_tsv(const Lexicon& lexicon, const std::filesystem::path& path);
Lexicon read_lexicon_tsv(const std::filesystem::path& path, std::string label);

// Single line: label_a, label_b, |A|, |B|, |A∩B|, ratio (4 decimals).
std::string format_overlap_tsv(const OverlapReport& report);

// Concatenation: all lines of a, then all lines of b; label "a+b".
Corpus concat_corpora(const Corpus& a, const Corpus& b);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace lexbridge
