#ifndef KMWILD_TEXT_MODEL_HPP
#define KMWILD_TEXT_MODEL_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kmwild {

using code_t = std::int32_t;

/// Bijective byte -> code table. Non-wildcard symbols get codes 1..sigma
/// (assigned in ascending byte order, so encodings are reproducible);
/// the wildcard symbol maps to code 0 and no text symbol maps to 0.
struct AlphabetMap {
    std::array<code_t, 256> code_of{};  // -1 where unmapped
    std::string symbols;                // code c -> symbols[c-1]
    char wildcard = '?';
    code_t sigma = 0;

    code_t code(char ch) const { return code_of[static_cast<unsigned char>(ch)]; }
    char symbol(code_t c) const { return symbols[static_cast<std::size_t>(c - 1)]; }
};

/// Integer-coded text. Codes are in 1..sigma; the text never contains wildcards.
struct EncodedText {
    std::vector<code_t> codes;

    std::int64_t n() const { return static_cast<std::int64_t>(codes.size()); }
};

/// Integer-coded pattern. Code 0 marks a wildcard position.
struct EncodedPattern {
    std::vector<code_t> codes;

    std::int64_t m() const { return static_cast<std::int64_t>(codes.size()); }
};

/// Maximal wildcard-free run of the pattern, 0-based offsets.
struct Island {
    std::int64_t start = 0;
    std::int64_t length = 0;
};

/// Island structure and per-character position lists of a pattern.
/// q = island count, g = number of non-wildcard positions.
struct PatternProfile {
    std::vector<Island> islands;
    std::int64_t q = 0;
    std::int64_t g = 0;
    std::vector<std::vector<std::int64_t>> positions_by_char;  // [code] -> ascending offsets

    const std::vector<std::int64_t>& positions_of(code_t c) const {
        static const std::vector<std::int64_t> kEmpty;
        if (c < 1 || static_cast<std::size_t>(c) >= positions_by_char.size()) return kEmpty;
        return positions_by_char[static_cast<std::size_t>(c)];
    }
};

/// Character occurrence counts of the text, indexed by code.
struct FreqTable {
    std::vector<std::int64_t> count;  // [code] -> occurrences in T

    std::int64_t of(code_t c) const {
        if (c < 0 || static_cast<std::size_t>(c) >= count.size()) return 0;
        return count[static_cast<std::size_t>(c)];
    }
};

/// Discovers the alphabet of text+pattern and assigns codes.
/// The wildcard may appear only in the pattern; a wildcard in the text is an error.
inline AlphabetMap build_alphabet(std::string_view text, std::string_view pattern,
                                  char wildcard = '?') {
    if (text.empty()) {
        throw std::invalid_argument("build_alphabet: text is empty");
    }
    std::array<bool, 256> present{};
    for (char ch : text) {
        if (ch == wildcard) {
            throw std::invalid_argument("build_alphabet: wildcard character occurs in the text");
        }
        present[static_cast<unsigned char>(ch)] = true;
    }
    for (char ch : pattern) {
        if (ch != wildcard) present[static_cast<unsigned char>(ch)] = true;
    }

    AlphabetMap map;
    map.wildcard = wildcard;
    map.code_of.fill(-1);
    for (int b = 0; b < 256; ++b) {
        if (!present[b]) continue;
        map.symbols.push_back(static_cast<char>(b));
        map.code_of[b] = ++map.sigma;
    }
    return map;
}

/// Encodes text and pattern through `map`. Pattern wildcards become code 0.
inline std::pair<EncodedText, EncodedPattern> encode(std::string_view text,
                                                     std::string_view pattern,
                                                     const AlphabetMap& map) {
    EncodedText t;
    t.codes.reserve(text.size());
    for (char ch : text) {
        code_t c = map.code(ch);
        if (c < 1) {
            throw std::invalid_argument("encode: text symbol absent from alphabet map");
        }
        t.codes.push_back(c);
    }

    EncodedPattern p;
    p.codes.reserve(pattern.size());
    for (char ch : pattern) {
        if (ch == map.wildcard) {
            p.codes.push_back(0);
            continue;
        }
        code_t c = map.code(ch);
        if (c < 1) {
            throw std::invalid_argument("encode: pattern symbol absent from alphabet map");
        }
        p.codes.push_back(c);
    }
    return {std::move(t), std::move(p)};
}

/// Extracts islands and per-character position lists from an encoded pattern.
inline PatternProfile profile_pattern(const EncodedPattern& p) {
    PatternProfile prof;
    code_t max_code = 0;
    for (code_t c : p.codes) max_code = std::max(max_code, c);
    prof.positions_by_char.assign(static_cast<std::size_t>(max_code) + 1, {});

    const std::int64_t m = p.m();
    std::int64_t run_start = -1;
    for (std::int64_t j = 0; j <= m; ++j) {
        const code_t c = (j < m) ? p.codes[static_cast<std::size_t>(j)] : 0;
        if (c != 0) {
            if (run_start < 0) run_start = j;
            prof.positions_by_char[static_cast<std::size_t>(c)].push_back(j);
            ++prof.g;
        } else if (run_start >= 0) {
            prof.islands.push_back({run_start, j - run_start});
            run_start = -1;
        }
    }
    prof.q = static_cast<std::int64_t>(prof.islands.size());
    return prof;
}

/// Occurrence count per code in the text.
inline FreqTable char_frequencies(const EncodedText& t) {
    code_t max_code = 0;
    for (code_t c : t.codes) max_code = std::max(max_code, c);
    FreqTable f;
    f.count.assign(static_cast<std::size_t>(max_code) + 1, 0);
    for (code_t c : t.codes) ++f.count[static_cast<std::size_t>(c)];
    return f;
}

}  // namespace kmwild

#endif  // KMWILD_TEXT_MODEL_HPP
