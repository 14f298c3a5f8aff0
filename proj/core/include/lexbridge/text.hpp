#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexbridge {

// UTF-8 decoding and the small slice of Unicode the tokenizer needs:
// simple case folding, punctuation (category P), whitespace, and decimal
// digits. Tables are generated by tools/gen_unicode_tables.py.

// Decodes strict UTF-8. Throws a parse error naming the absolute byte
// offset (plus base_offset) of the first invalid sequence.
std::vector<char32_t> decode_utf8(std::string_view bytes, std::size_t base_offset = 0);

std::string encode_utf8(const std::vector<char32_t>& codepoints);
void append_utf8(std::string& out, char32_t cp);

char32_t fold_case(char32_t cp);
bool is_punctuation(char32_t cp);
bool is_whitespace(char32_t cp);
bool is_decimal_digit(char32_t cp);

// Number of codepoints in a valid UTF-8 string.
std::size_t codepoint_length(std::string_view utf8);

}  // namespace lexbridge
