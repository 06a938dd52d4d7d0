#ifndef KMWILD_TESTS_SUPPORT_ORACLES_HPP
#define KMWILD_TESTS_SUPPORT_ORACLES_HPP

// Reference implementations for the test suite. Everything here is written
// directly against the mathematical definitions, at character level where
// possible, and stays independent of the library's own code paths.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace oracles {

using std::int64_t;

// Plain O(|a| * |b|) cross-correlation: out[i] = sum_j a[i+j] * b[j].
inline std::vector<int64_t> correlate(const std::vector<int64_t>& a,
                                      const std::vector<int64_t>& b) {
    if (b.empty() || b.size() > a.size()) return {};
    std::vector<int64_t> out(a.size() - b.size() + 1, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i] += a[i + j] * b[j];
    }
    return out;
}

// Per-alignment count of positions where pattern has character c and the text
// character under it is also c.
inline std::vector<int64_t> char_match_counts(const std::string& text, const std::string& pattern,
                                              char c) {
    std::vector<int64_t> out(text.size() - pattern.size() + 1, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = 0; j < pattern.size(); ++j) {
            if (pattern[j] == c && text[i + j] == c) ++out[i];
        }
    }
    return out;
}

// Encodes text+pattern exactly as the spec'd model does (codes 1..sigma in
// ascending byte order, wildcard -> 0), then evaluates the wildcard matching
// polynomial sum_j (t-p)^2 * t * p per alignment.
inline std::vector<int64_t> wildcard_scores(const std::string& text, const std::string& pattern,
                                            char wildcard = '?') {
    std::map<char, int64_t> code;
    for (char ch : text) code[ch] = 0;
    for (char ch : pattern) {
        if (ch != wildcard) code[ch] = 0;
    }
    int64_t next = 1;
    for (auto& [ch, v] : code) v = next++;

    std::vector<int64_t> t(text.size()), p(pattern.size());
    for (std::size_t i = 0; i < text.size(); ++i) t[i] = code.at(text[i]);
    for (std::size_t j = 0; j < pattern.size(); ++j) {
        p[j] = pattern[j] == wildcard ? 0 : code.at(pattern[j]);
    }

    std::vector<int64_t> out(text.size() - pattern.size() + 1, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            const int64_t d = t[i + j] - p[j];
            out[i] += d * d * t[i + j] * p[j];
        }
    }
    return out;
}

// Longest common extension between text[tpos..] and pattern[ppos..]; a
// wildcard in the pattern matches nothing, so it terminates the run.
inline int64_t lce(const std::string& text, const std::string& pattern, int64_t tpos, int64_t ppos,
                   char wildcard = '?') {
    int64_t len = 0;
    while (tpos + len < static_cast<int64_t>(text.size()) &&
           ppos + len < static_cast<int64_t>(pattern.size())) {
        const char pc = pattern[ppos + len];
        if (pc == wildcard || pc != text[tpos + len]) break;
        ++len;
    }
    return len;
}

// Hamming distance of pattern vs text window at alignment i, wildcards free.
inline int64_t hamming(const std::string& text, const std::string& pattern, int64_t i,
                       char wildcard = '?') {
    int64_t d = 0;
    for (std::size_t j = 0; j < pattern.size(); ++j) {
        if (pattern[j] == wildcard) continue;
        if (pattern[j] != text[i + j]) ++d;
    }
    return d;
}

struct Match {
    int64_t position;
    int64_t distance;
};

// Every alignment with hamming distance <= k, plus the number of character
// comparisons a full scan spends: (n - m + 1) * g.
inline std::vector<Match> all_matches(const std::string& text, const std::string& pattern,
                                      int64_t k, char wildcard = '?',
                                      std::uint64_t* comparisons = nullptr) {
    std::vector<Match> out;
    int64_t g = 0;
    for (char ch : pattern) {
        if (ch != wildcard) ++g;
    }
    const int64_t alignments = static_cast<int64_t>(text.size() - pattern.size()) + 1;
    if (comparisons) *comparisons += static_cast<std::uint64_t>(alignments) * static_cast<std::uint64_t>(g);
    for (int64_t i = 0; i < alignments; ++i) {
        const int64_t d = hamming(text, pattern, i, wildcard);
        if (d <= k) out.push_back({i, d});
    }
    return out;
}

// --- deterministic instance generation -------------------------------------

struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    // Uniform in [0, bound); bound >= 1. Modulo bias is irrelevant here.
    std::uint64_t below(std::uint64_t bound) { return engine() % bound; }

    int64_t range(int64_t lo, int64_t hi) {  // inclusive
        return lo + static_cast<int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(double p) {
        return static_cast<double>(engine() >> 11) * 0x1.0p-53 < p;
    }
};

inline std::string alphabet_symbols(int sigma) {
    static const std::string pool =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    return pool.substr(0, static_cast<std::size_t>(sigma));
}

inline std::string random_text(Rng& rng, int64_t n, int sigma) {
    const std::string symbols = alphabet_symbols(sigma);
    std::string text(static_cast<std::size_t>(n), 'a');
    for (auto& ch : text) ch = symbols[rng.below(symbols.size())];
    return text;
}

// A pattern lifted from a random window of the text, then degraded: each
// position becomes a wildcard with probability wild_density, and `mutations`
// of the surviving positions are flipped to a different symbol.
inline std::string planted_pattern(Rng& rng, const std::string& text, int64_t m, int sigma,
                                   double wild_density, int64_t mutations, char wildcard = '?') {
    const std::string symbols = alphabet_symbols(sigma);
    const int64_t start = rng.range(0, static_cast<int64_t>(text.size()) - m);
    std::string pattern = text.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(m));
    for (auto& ch : pattern) {
        if (rng.chance(wild_density)) ch = wildcard;
    }
    for (int64_t t = 0; t < mutations; ++t) {
        const std::size_t j = static_cast<std::size_t>(rng.below(pattern.size()));
        if (pattern[j] == wildcard) continue;
        pattern[j] = symbols[rng.below(symbols.size())];
    }
    return pattern;
}

inline std::string random_pattern(Rng& rng, int64_t m, int sigma, double wild_density,
                                  char wildcard = '?') {
    const std::string symbols = alphabet_symbols(sigma);
    std::string pattern(static_cast<std::size_t>(m), 'a');
    bool any_solid = false;
    for (auto& ch : pattern) {
        if (rng.chance(wild_density)) {
            ch = wildcard;
        } else {
            ch = symbols[rng.below(symbols.size())];
            any_solid = true;
        }
    }
    if (!any_solid) pattern[0] = symbols[0];  // keep at least one island
    return pattern;
}

}  // namespace oracles

#endif  // KMWILD_TESTS_SUPPORT_ORACLES_HPP
