#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace textedit {

/// Decodes UTF-8 into code points. Malformed sequences decode to U+FFFD,
/// one replacement per offending byte.
std::u32string utf8_decode(std::string_view s);
std::string utf8_encode(std::u32string_view s);

/// Insert/delete/substitute edit distance over code points, unit costs.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein(std::string_view a, std::string_view b);

/// 1 - D(a, b) / max(|a|, |b|, 1), lengths in code points.
double normalized_similarity(std::u32string_view a, std::u32string_view b);
double normalized_similarity(std::string_view a, std::string_view b);

struct NormalizedText {
    std::string value;
    bool trimmed = false;               // leading/trailing whitespace was removed
    bool whitespace_collapsed = false;  // an internal run was rewritten to one space
};

/// Trims both ends and collapses internal whitespace runs (ASCII and Unicode
/// space separators) to a single U+0020. Case and punctuation are untouched.
NormalizedText normalize_text(std::string_view s);

bool is_whitespace(char32_t c);

} // namespace textedit
