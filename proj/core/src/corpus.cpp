#include "lexbridge/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lexbridge/errors.hpp"
#include "lexbridge/text.hpp"

namespace lexbridge {

namespace {

// One whitespace-delimited chunk -> zero or one token.
bool chunk_to_token(const std::vector<char32_t>& chunk, bool drop_numeric, std::string& out) {
    std::size_t begin = 0;
    std::size_t end = chunk.size();
    while (begin < end && is_punctuation(chunk[begin])) ++begin;
    while (end > begin && is_punctuation(chunk[end - 1])) --end;
    if (begin == end) return false;
    if (drop_numeric) {
        bool all_digits = true;
        for (std::size_t i = begin; i < end; ++i) {
            if (!is_decimal_digit(chunk[i])) {
                all_digits = false;
                break;
            }
        }
        if (all_digits) return false;
    }
    out.clear();
    for (std::size_t i = begin; i < end; ++i) append_utf8(out, chunk[i]);
    return true;
}

}  // namespace

Corpus tokenize(std::string_view raw_text, std::string label, const TokenizerOptions& options) {
    Corpus corpus;
    corpus.label = std::move(label);

    std::size_t line_start = 0;
    std::vector<char32_t> chunk;
    std::string token;
    while (line_start < raw_text.size()) {
        std::size_t eol = raw_text.find('\n', line_start);
        std::size_t line_end = (eol == std::string_view::npos) ? raw_text.size() : eol;
        std::string_view line = raw_text.substr(line_start, line_end - line_start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::vector<char32_t> cps = decode_utf8(line, line_start);
        std::vector<std::string> tokens;
        chunk.clear();
        auto flush_chunk = [&]() {
            if (!chunk.empty()) {
                if (chunk_to_token(chunk, options.drop_numeric, token)) tokens.push_back(token);
                chunk.clear();
            }
        };
        for (char32_t cp : cps) {
            if (is_whitespace(cp)) {
                flush_chunk();
            } else {
                chunk.push_back(fold_case(cp));
            }
        }
        flush_chunk();

        corpus.token_count += tokens.size();
        corpus.lines.push_back(std::move(tokens));

        if (eol == std::string_view::npos) break;
        line_start = eol + 1;  // a trailing LF does not open a new line
    }
    return corpus;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_io("cannot open file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw_io("error reading file: " + path.string());
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_io("cannot open file for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw_io("error writing file: " + path.string());
}

Corpus read_corpus_file(const std::filesystem::path& path, std::string label,
                        const TokenizerOptions& options) {
    return tokenize(read_text_file(path), std::move(label), options);
}

std::string format_corpus(const Corpus& corpus) {
    std::string out;
    for (const auto& line : corpus.lines) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i) out.push_back(' ');
            out += line[i];
        }
        out.push_back('\n');
    }
    return out;
}

void write_corpus_file(const Corpus& corpus, const std::filesystem::path& path) {
    write_text_file(path, format_corpus(corpus));
}

Lexicon build_lexicon(const Corpus& corpus, std::uint64_t min_count) {
    if (min_count < 1) throw_config("min_count must be >= 1");
    Lexicon lexicon;
    lexicon.label = corpus.label;
    std::unordered_map<std::string, std::uint64_t> counts;
    counts.reserve(1024);
    for (const auto& line : corpus.lines) {
        for (const auto& token : line) ++counts[token];
    }
    if (min_count == 1) {
        lexicon.entries = std::move(counts);
    } else {
        for (auto& [word, count] : counts) {
            if (count >= min_count) lexicon.entries.emplace(word, count);
        }
    }
    return lexicon;
}

std::vector<std::pair<std::string, std::uint64_t>> Lexicon::sorted_entries() const {
    std::vector<std::pair<std::string, std::uint64_t>> rows(entries.begin(), entries.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return rows;
}

OverlapReport vocab_overlap(const Lexicon& lex_a, const Lexicon& lex_b) {
    OverlapReport report;
    report.label_a = lex_a.label;
    report.label_b = lex_b.label;
    report.size_a = lex_a.size();
    report.size_b = lex_b.size();
    // Scan the smaller map against the larger one.
    const Lexicon& small = lex_a.size() <= lex_b.size() ? lex_a : lex_b;
    const Lexicon& large = lex_a.size() <= lex_b.size() ? lex_b : lex_a;
    for (const auto& [word, count] : small.entries) {
        (void)count;
        if (large.contains(word)) ++report.intersection;
    }
    report.ratio = report.size_a == 0
                       ? 0.0
                       : static_cast<double>(report.intersection) / static_cast<double>(report.size_a);
    return report;
}

void write_lexicon_tsv(const Lexicon& lexicon, const std::filesystem::path& path) {
    std::string out;
    for (const auto& [word, count] : lexicon.sorted_entries()) {
        out += word;
        out.push_back('\t');
        out += std::to_string(count);
        out.push_back('\n');
    }
    write_text_file(path, out);
}

Lexicon read_lexicon_tsv(const std::filesystem::path& path, std::string label) {
    Lexicon lexicon;
    lexicon.label = std::move(label);
    std::istringstream in(read_text_file(path));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
            throw_parse(path.string() + ":" + std::to_string(line_no) +
                        ": expected word<TAB>count");
        }
        std::string word = line.substr(0, tab);
        std::uint64_t count = 0;
        try {
            count = std::stoull(line.substr(tab + 1));
        } catch (const std::exception&) {
            throw_parse(path.string() + ":" + std::to_string(line_no) + ": bad count");
        }
        if (word.empty() || count == 0) {
            throw_parse(path.string() + ":" + std::to_string(line_no) + ": bad lexicon entry");
        }
        lexicon.entries[word] = count;
    }
    return lexicon;
}

std::string format_overlap_tsv(const OverlapReport& report) {
    char ratio[32];
    std::snprintf(ratio, sizeof(ratio), "%.4f", report.ratio);
    std::string out;
    out += report.label_a;
    out.push_back('\t');
    out += report.label_b;
    out.push_back('\t');
    out += std::to_string(report.size_a);
    out.push_back('\t');
    out += std::to_string(report.size_b);
    out.push_back('\t');
    out += std::to_string(report.intersection);
    out.push_back('\t');
    out += ratio;
    out.push_back('\n');
    return out;
}

Corpus concat_corpora(const Corpus& a, const Corpus& b) {
    Corpus out;
    out.label = a.label + "+" + b.label;
    out.lines.reserve(a.lines.size() + b.lines.size());
    out.lines.insert(out.lines.end(), a.lines.begin(), a.lines.end());
    out.lines.insert(out.lines.end(), b.lines.begin(), b.lines.end());
    out.token_count = a.token_count + b.token_count;
    return out;
}

}  // namespace lexbridge
