#include "textedit/textsim.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace textedit {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

} // namespace

std::u32string utf8_decode(std::string_view s)
{
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const auto b0 = static_cast<unsigned char>(s[i]);
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
        }
        std::size_t len = 0;
        char32_t cp = 0;
        char32_t min_cp = 0;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
            min_cp = 0x80;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
            min_cp = 0x800;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
            min_cp = 0x10000;
        } else {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        if (i + len > s.size()) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        bool ok = true;
        for (std::size_t k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(s[i + k]);
            if ((b & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (b & 0x3F);
        }
        // overlong forms, surrogates and out-of-range values are rejected
        if (!ok || cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string utf8_encode(std::u32string_view s)
{
    std::string out;
    out.reserve(s.size());
    for (char32_t c : s) {
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
        } else if (c < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (c >> 6)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        } else if (c < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (c >> 12)));
            out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (c >> 18)));
            out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        }
    }
    return out;
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b)
{
    // common prefix/suffix do not change the distance
    while (!a.empty() && !b.empty() && a.front() == b.front()) {
        a.remove_prefix(1);
        b.remove_prefix(1);
    }
    while (!a.empty() && !b.empty() && a.back() == b.back()) {
        a.remove_suffix(1);
        b.remove_suffix(1);
    }
    if (a.size() < b.size())
        std::swap(a, b);
    if (b.empty())
        return a.size();

    // single row over the shorter string
    std::vector<std::size_t> row(b.size() + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            row[j] = std::min({up + 1, row[j - 1] + 1, diag + cost});
            diag = up;
        }
    }
    return row[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b)
{
    return levenshtein(std::u32string_view(utf8_decode(a)), std::u32string_view(utf8_decode(b)));
}

double normalized_similarity(std::u32string_view a, std::u32string_view b)
{
    const std::size_t denom = std::max({a.size(), b.size(), std::size_t{1}});
    return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(denom);
}

double normalized_similarity(std::string_view a, std::string_view b)
{
    return normalized_similarity(std::u32string_view(utf8_decode(a)),
                                 std::u32string_view(utf8_decode(b)));
}

bool is_whitespace(char32_t c)
{
    switch (c) {
    case U'\t': case U'\n': case U'\v': case U'\f': case U'\r': case U' ':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
        return true;
    default:
        return c >= 0x2000 && c <= 0x200A;
    }
}

NormalizedText normalize_text(std::string_view s)
{
    const std::u32string cps = utf8_decode(s);
    NormalizedText out;

    std::size_t begin = 0;
    std::size_t end = cps.size();
    while (begin < end && is_whitespace(cps[begin]))
        ++begin;
    while (end > begin && is_whitespace(cps[end - 1]))
        --end;
    out.trimmed = begin != 0 || end != cps.size();

    std::u32string collapsed;
    collapsed.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        if (!is_whitespace(cps[i])) {
            collapsed.push_back(cps[i]);
            continue;
        }
        std::size_t j = i;
        while (j < end && is_whitespace(cps[j]))
            ++j;
        if (j - i > 1 || cps[i] != U' ')
            out.whitespace_collapsed = true;
        collapsed.push_back(U' ');
        i = j - 1;
    }
    out.value = utf8_encode(collapsed);
    return out;
}

} // namespace textedit
