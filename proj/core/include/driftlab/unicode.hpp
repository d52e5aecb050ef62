#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace driftlab {

// Minimal UTF-8 handling for the text pipeline. Letter classification and
// case folding cover Basic Latin, Latin-1 Supplement and Latin Extended-A,
// which is sufficient for German-language corpora; anything else is treated
// as a token separator.

// Decodes UTF-8; invalid byte sequences decode to U+FFFD one byte at a time.
std::vector<char32_t> decode_utf8(std::string_view bytes);

void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(const std::vector<char32_t>& cps);

// Number of Unicode codepoints in a UTF-8 string.
std::size_t codepoint_count(std::string_view bytes) noexcept;

constexpr bool is_letter(char32_t c) {
    if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) return true;
    if (c >= 0xC0 && c <= 0xFF && c != 0xD7 && c != 0xF7) return true;  // Latin-1 letters
    if (c >= 0x100 && c <= 0x17F) return true;                          // Latin Extended-A
    return false;
}

// Lowercases Basic Latin and Latin-1; Latin Extended-A passes through.
constexpr char32_t to_lower(char32_t c) {
    if (c >= U'A' && c <= U'Z') return c + 0x20;
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
    if (c == 0x178) return 0xFF;  // Ÿ -> ÿ
    return c;
}

}  // namespace driftlab
