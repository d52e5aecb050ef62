#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace driftlab {

// Snowball German suffix-stripping algorithm. Input is expected lowercased;
// ä/ö/ü/ß are handled natively and the result is umlaut-free.
std::string stem_german(std::string_view token_utf8);

using StemFn = std::function<std::string(std::string_view)>;

// Known identifiers: "german" (Snowball German), "none" (identity).
// Throws DataError for anything else.
StemFn make_stemmer(const std::string& id);

}  // namespace driftlab
