#include "lexbridge/text.hpp"

#include <algorithm>
#include <iterator>

#include "lexbridge/errors.hpp"

namespace lexbridge {

namespace {

struct FoldEntry {
    char32_t from;
    char32_t to;
};

struct CpRange {
    char32_t first;
    char32_t last;
};

#include "unicode_tables.inc"

bool in_ranges(const CpRange* begin, const CpRange* end, char32_t cp) {
    auto it = std::upper_bound(begin, end, cp, [](char32_t value, const CpRange& r) {
        return value < r.first;
    });
    if (it == begin) return false;
    --it;
    return cp <= it->last;
}

[[noreturn]] void bad_byte(std::size_t offset) {
    throw_parse("invalid UTF-8 at byte offset " + std::to_string(offset));
}

}  // namespace

std::vector<char32_t> decode_utf8(std::string_view bytes, std::size_t base_offset) {
    std::vector<char32_t> out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    const auto n = bytes.size();
    while (i < n) {
        const auto b0 = static_cast<unsigned char>(bytes[i]);
        char32_t cp = 0;
        std::size_t len = 0;
        if (b0 < 0x80) {
            cp = b0;
            len = 1;
        } else if ((b0 & 0xE0) == 0xC0) {
            cp = b0 & 0x1F;
            len = 2;
        } else if ((b0 & 0xF0) == 0xE0) {
            cp = b0 & 0x0F;
            len = 3;
        } else if ((b0 & 0xF8) == 0xF0) {
            cp = b0 & 0x07;
            len = 4;
        } else {
            bad_byte(base_offset + i);
        }
        if (i + len > n) bad_byte(base_offset + i);
        for (std::size_t k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(bytes[i + k]);
            if ((b & 0xC0) != 0x80) bad_byte(base_offset + i + k);
            cp = (cp << 6) | (b & 0x3F);
        }
        // Reject overlong encodings, surrogates, and out-of-range values.
        static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (len > 1 && cp < kMin[len]) bad_byte(base_offset + i);
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) bad_byte(base_offset + i);
        out.push_back(cp);
        i += len;
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode_utf8(const std::vector<char32_t>& codepoints) {
    std::string out;
    out.reserve(codepoints.size());
    for (char32_t cp : codepoints) append_utf8(out, cp);
    return out;
}

char32_t fold_case(char32_t cp) {
    // ASCII fast path.
    if (cp < 0x80) return (cp >= U'A' && cp <= U'Z') ? cp + 32 : cp;
    auto it = std::lower_bound(std::begin(kCaseFold), std::end(kCaseFold), cp,
                               [](const FoldEntry& e, char32_t value) { return e.from < value; });
    if (it != std::end(kCaseFold) && it->from == cp) return it->to;
    return cp;
}

bool is_punctuation(char32_t cp) {
    return in_ranges(std::begin(kPunctuation), std::end(kPunctuation), cp);
}

bool is_whitespace(char32_t cp) {
    if (cp < 0x80) return cp == ' ' || (cp >= 0x09 && cp <= 0x0D);
    return in_ranges(std::begin(kWhitespace), std::end(kWhitespace), cp);
}

bool is_decimal_digit(char32_t cp) {
    if (cp < 0x80) return cp >= U'0' && cp <= U'9';
    return in_ranges(std::begin(kDecimalDigit), std::end(kDecimalDigit), cp);
}

std::size_t codepoint_length(std::string_view utf8) {
    std::size_t count = 0;
    for (char c : utf8) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++count;
    }
    return count;
}

}  // namespace lexbridge
