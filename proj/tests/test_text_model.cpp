#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <string>
#include <vector>

#include <kmwild/text_model.hpp>

#include "support/oracles.hpp"

using namespace kmwild;

namespace {

EncodedPattern pattern_codes(std::vector<code_t> codes) {
    EncodedPattern p;
    p.codes = std::move(codes);
    return p;
}

}  // namespace

TEST_CASE("build_alphabet assigns sorted contiguous codes") {
    const AlphabetMap map = build_alphabet("aabacb", "a?b", '?');
    CHECK(map.sigma == 3);
    CHECK(map.code('a') == 1);
    CHECK(map.code('b') == 2);
    CHECK(map.code('c') == 3);
    CHECK(map.symbol(1) == 'a');
    CHECK(map.symbol(2) == 'b');
    CHECK(map.symbol(3) == 'c');
    CHECK(map.wildcard == '?');
}

TEST_CASE("build_alphabet single symbol") {
    const AlphabetMap map = build_alphabet("zzz", "z", '?');
    CHECK(map.sigma == 1);
    CHECK(map.code('z') == 1);
}

TEST_CASE("build_alphabet rejects wildcard in text") {
    CHECK_THROWS_AS(build_alphabet("ab?b", "ab", '?'), std::invalid_argument);
}

TEST_CASE("build_alphabet rejects empty text") {
    CHECK_THROWS_AS(build_alphabet("", "a", '?'), std::invalid_argument);
}

TEST_CASE("build_alphabet covers pattern-only symbols") {
    const AlphabetMap map = build_alphabet("aaa", "ab", '?');
    CHECK(map.sigma == 2);
    CHECK(map.code('b') == 2);
}

TEST_CASE("encode maps wildcard to zero") {
    const AlphabetMap map = build_alphabet("aabacb", "a?b", '?');
    const auto [text, pattern] = encode("aabacb", "a?b", map);
    CHECK(text.codes == std::vector<code_t>{1, 1, 2, 1, 3, 2});
    CHECK(pattern.codes == std::vector<code_t>{1, 0, 2});
    CHECK(text.n() == 6);
    CHECK(pattern.m() == 3);
}

TEST_CASE("encode all-wildcard pattern") {
    const AlphabetMap map = build_alphabet("aaaa", "????", '?');
    const auto [text, pattern] = encode("aaaa", "????", map);
    CHECK(text.codes == std::vector<code_t>{1, 1, 1, 1});
    CHECK(pattern.codes == std::vector<code_t>{0, 0, 0, 0});
}

TEST_CASE("encode identity-looking case") {
    const AlphabetMap map = build_alphabet("abc", "abc", '?');
    const auto [text, pattern] = encode("abc", "abc", map);
    CHECK(text.codes == std::vector<code_t>{1, 2, 3});
    CHECK(pattern.codes == std::vector<code_t>{1, 2, 3});
}

TEST_CASE("encode rejects unmapped symbols") {
    const AlphabetMap map = build_alphabet("abc", "abc", '?');
    CHECK_THROWS_AS(encode("abc", "abd", map), std::invalid_argument);
}

TEST_CASE("profile_pattern splits islands") {
    // "ab??c?de" with '?' -> 0 and codes a..e -> 1..5
    const PatternProfile profile = profile_pattern(pattern_codes({1, 2, 0, 0, 3, 0, 4, 5}));
    REQUIRE(profile.islands.size() == 3);
    CHECK(profile.islands[0].start == 0);
    CHECK(profile.islands[0].length == 2);
    CHECK(profile.islands[1].start == 4);
    CHECK(profile.islands[1].length == 1);
    CHECK(profile.islands[2].start == 6);
    CHECK(profile.islands[2].length == 2);
    CHECK(profile.q == 3);
    CHECK(profile.g == 5);
}

TEST_CASE("profile_pattern all wildcards") {
    const PatternProfile profile = profile_pattern(pattern_codes({0, 0, 0, 0}));
    CHECK(profile.islands.empty());
    CHECK(profile.q == 0);
    CHECK(profile.g == 0);
}

TEST_CASE("profile_pattern single island") {
    const PatternProfile profile = profile_pattern(pattern_codes({1, 2, 3}));
    REQUIRE(profile.islands.size() == 1);
    CHECK(profile.islands[0].start == 0);
    CHECK(profile.islands[0].length == 3);
    CHECK(profile.q == 1);
    CHECK(profile.g == 3);
}

TEST_CASE("profile_pattern positions_by_char") {
    // "a?ba": a=1, b=2
    const PatternProfile profile = profile_pattern(pattern_codes({1, 0, 2, 1}));
    CHECK(profile.positions_of(1) == std::vector<std::int64_t>{0, 3});
    CHECK(profile.positions_of(2) == std::vector<std::int64_t>{2});
    CHECK(profile.positions_of(3).empty());
    CHECK(profile.g == 3);
    CHECK(profile.q == 2);
}

TEST_CASE("char_frequencies counts every code") {
    const AlphabetMap map = build_alphabet("aabacb", "a?b", '?');
    const auto [text, pattern] = encode("aabacb", "a?b", map);
    const FreqTable freq = char_frequencies(text);
    CHECK(freq.of(1) == 3);
    CHECK(freq.of(2) == 2);
    CHECK(freq.of(3) == 1);
    CHECK(freq.of(99) == 0);  // absent code reports zero
}

TEST_CASE("char_frequencies single symbol text") {
    const AlphabetMap map = build_alphabet("zzz", "z", '?');
    const auto [text, pattern] = encode("zzz", "z", map);
    (void)pattern;
    const FreqTable freq = char_frequencies(text);
    CHECK(freq.of(1) == 3);
}

TEST_CASE("profile invariants on random patterns") {
    oracles::Rng rng(20260822);
    for (int iter = 0; iter < 200; ++iter) {
        const int sigma = static_cast<int>(rng.range(1, 8));
        const std::int64_t m = rng.range(1, 60);
        const double density = static_cast<double>(rng.range(0, 8)) / 10.0;
        const std::string pat = oracles::random_pattern(rng, m, sigma, density);
        const std::string text = oracles::random_text(rng, m, sigma);

        const AlphabetMap map = build_alphabet(text, pat, '?');
        const auto [enc_text, enc_pat] = encode(text, pat, map);
        const PatternProfile profile = profile_pattern(enc_pat);

        // Islands are disjoint, ordered, separated by >= 1 wildcard, and
        // cover exactly the non-wildcard positions.
        std::vector<bool> covered(static_cast<std::size_t>(m), false);
        std::int64_t prev_end = -2;
        for (const Island& isl : profile.islands) {
            REQUIRE(isl.length >= 1);
            REQUIRE(isl.start > prev_end);  // at least one wildcard between islands
            prev_end = isl.start + isl.length;
            for (std::int64_t j = isl.start; j < isl.start + isl.length; ++j) {
                covered[static_cast<std::size_t>(j)] = true;
            }
            // Maximality: neighbors outside the island are wildcards or ends.
            if (isl.start > 0) REQUIRE(enc_pat.codes[static_cast<std::size_t>(isl.start - 1)] == 0);
            if (prev_end < m) REQUIRE(enc_pat.codes[static_cast<std::size_t>(prev_end)] == 0);
        }
        for (std::int64_t j = 0; j < m; ++j) {
            REQUIRE(covered[static_cast<std::size_t>(j)] == (enc_pat.codes[static_cast<std::size_t>(j)] != 0));
        }

        REQUIRE(profile.q == static_cast<std::int64_t>(profile.islands.size()));
        std::int64_t island_sum = 0;
        for (const Island& isl : profile.islands) island_sum += isl.length;
        REQUIRE(island_sum == profile.g);
        std::int64_t by_char_sum = 0;
        for (const auto& positions : profile.positions_by_char) {
            REQUIRE(std::is_sorted(positions.begin(), positions.end()));
            by_char_sum += static_cast<std::int64_t>(positions.size());
        }
        REQUIRE(by_char_sum == profile.g);
        REQUIRE(profile.q <= std::max<std::int64_t>(profile.g, 0));
        REQUIRE(profile.q <= (m + 1) / 2);

        // Frequency table sums to n.
        const FreqTable freq = char_frequencies(enc_text);
        std::int64_t total = 0;
        for (code_t c = 1; c <= map.sigma; ++c) total += freq.of(c);
        REQUIRE(total == enc_text.n());
    }
}
