#include "driftlab/stemmer.hpp"

#include <algorithm>
#include <vector>

#include "driftlab/errors.hpp"
#include "driftlab/unicode.hpp"

namespace driftlab {
namespace {

using U32 = std::vector<char32_t>;

constexpr char32_t kAuml = 0xE4;  // ä
constexpr char32_t kOuml = 0xF6;  // ö
constexpr char32_t kUuml = 0xFC;  // ü
constexpr char32_t kSzlig = 0xDF;  // ß

bool is_vowel(char32_t c) {
    return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u' || c == U'y' ||
           c == kAuml || c == kOuml || c == kUuml;
}

bool is_valid_s_ending(char32_t c) {
    switch (c) {
        case U'b': case U'd': case U'f': case U'g': case U'h': case U'k':
        case U'l': case U'm': case U'n': case U'r': case U't':
            return true;
        default:
            return false;
    }
}

bool is_valid_st_ending(char32_t c) { return c != U'r' && is_valid_s_ending(c); }

bool ends_with(const U32& w, std::size_t len, std::u32string_view suffix) {
    if (len < suffix.size()) return false;
    for (std::size_t i = 0; i < suffix.size(); ++i) {
        if (w[len - suffix.size() + i] != suffix[i]) return false;
    }
    return true;
}

// First position after the first non-vowel following a vowel in [from, len).
std::size_t region_after(const U32& w, std::size_t from, std::size_t len) {
    for (std::size_t i = from; i + 1 < len; ++i) {
        if (is_vowel(w[i]) && !is_vowel(w[i + 1])) return i + 2;
    }
    return len;
}

}  // namespace

std::string stem_german(std::string_view token_utf8) {
    U32 w = decode_utf8(token_utf8);

    // ß -> ss; mark u and y between vowels as consonants (uppercase stand-ins).
    U32 prepared;
    prepared.reserve(w.size() + 2);
    for (char32_t c : w) {
        if (c == kSzlig) {
            prepared.push_back(U's');
            prepared.push_back(U's');
        } else {
            prepared.push_back(c);
        }
    }
    w = std::move(prepared);
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        if ((w[i] == U'u' || w[i] == U'y') && is_vowel(w[i - 1]) && is_vowel(w[i + 1])) {
            w[i] = w[i] == U'u' ? U'U' : U'Y';
        }
    }

    std::size_t len = w.size();
    std::size_t r1 = region_after(w, 0, len);
    const std::size_t r2 = region_after(w, r1, len);
    r1 = std::max<std::size_t>(r1, 3);  // region before R1 must hold >= 3 letters

    const auto in_r1 = [&](std::size_t suffix_len) { return len - suffix_len >= r1; };
    const auto in_r2 = [&](std::size_t suffix_len) { return len - suffix_len >= r2; };

    // Step 1: em / ern / er | e / en / es | s (after a valid s-ending).
    {
        std::size_t drop = 0;
        bool group_b = false;
        if (ends_with(w, len, U"ern"))
            drop = 3;
        else if (ends_with(w, len, U"em") || ends_with(w, len, U"er"))
            drop = 2;
        else if (ends_with(w, len, U"en") || ends_with(w, len, U"es")) {
            drop = 2;
            group_b = true;
        } else if (ends_with(w, len, U"e")) {
            drop = 1;
            group_b = true;
        } else if (ends_with(w, len, U"s") && len >= 2 && is_valid_s_ending(w[len - 2])) {
            drop = 1;
        }
        if (drop > 0 && in_r1(drop)) {
            len -= drop;
            if (group_b && ends_with(w, len, U"niss")) --len;
        }
    }

    // Step 2: en / er / est | st (after a valid st-ending preceded by >= 3 letters).
    {
        std::size_t drop = 0;
        if (ends_with(w, len, U"est"))
            drop = 3;
        else if (ends_with(w, len, U"en") || ends_with(w, len, U"er"))
            drop = 2;
        else if (ends_with(w, len, U"st") && len >= 6 && is_valid_st_ending(w[len - 3]))
            drop = 2;
        if (drop > 0 && in_r1(drop)) len -= drop;
    }

    // Step 3: derivational suffixes, longest match first.
    if (ends_with(w, len, U"lich") || ends_with(w, len, U"heit")) {
        if (in_r2(4)) {
            len -= 4;
            if ((ends_with(w, len, U"er") || ends_with(w, len, U"en")) && in_r1(2)) len -= 2;
        }
    } else if (ends_with(w, len, U"keit")) {
        if (in_r2(4)) {
            len -= 4;
            if (ends_with(w, len, U"lich") && in_r2(4))
                len -= 4;
            else if (ends_with(w, len, U"ig") && in_r2(2))
                len -= 2;
        }
    } else if (ends_with(w, len, U"isch")) {
        if (in_r2(4) && !(len >= 5 && w[len - 5] == U'e')) len -= 4;
    } else if (ends_with(w, len, U"end") || ends_with(w, len, U"ung")) {
        if (in_r2(3)) {
            len -= 3;
            if (ends_with(w, len, U"ig") && in_r2(2) && !(len >= 3 && w[len - 3] == U'e')) len -= 2;
        }
    } else if (ends_with(w, len, U"ig") || ends_with(w, len, U"ik")) {
        if (in_r2(2) && !(len >= 3 && w[len - 3] == U'e')) len -= 2;
    }

    // Unmark stand-ins and strip umlauts.
    std::string out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        char32_t c = w[i];
        if (c == U'U') c = U'u';
        else if (c == U'Y') c = U'y';
        else if (c == kAuml) c = U'a';
        else if (c == kOuml) c = U'o';
        else if (c == kUuml) c = U'u';
        append_utf8(out, c);
    }
    return out;
}

StemFn make_stemmer(const std::string& id) {
    if (id == "german") return [](std::string_view t) { return stem_german(t); };
    if (id == "none") return [](std::string_view t) { return std::string(t); };
    throw DataError("unknown stemmer '" + id + "' (expected \"german\" or \"none\")");
}

}  // namespace driftlab
