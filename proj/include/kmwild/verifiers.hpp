#ifndef KMWILD_VERIFIERS_HPP
#define KMWILD_VERIFIERS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kmwild/convolution.hpp"
#include "kmwild/lce_index.hpp"
#include "kmwild/text_model.hpp"

namespace kmwild {

/// Instrumentation of a single-alignment verification.
struct VerifyStats {
    std::uint64_t lce_queries = 0;
    std::int64_t sections_scanned = 0;  // inexact sections entered (section verifier only)
};

/// Answer to "is Hd(P, T_i) <= k?". `distance` is exact when accepted,
/// otherwise the sentinel k+1.
struct DistanceVerdict {
    bool accepted = false;
    std::int64_t distance = 0;
    VerifyStats stats;
};

/// Defining semantics: mismatches over non-wildcard pattern positions.
/// `comparisons` (optional) accrues one unit per position inspected.
inline std::int64_t naive_distance(const EncodedText& text, const EncodedPattern& pattern,
                                   std::int64_t i, std::uint64_t* comparisons = nullptr) {
    const std::int64_t n = text.n();
    const std::int64_t m = pattern.m();
    if (i < 0 || i > n - m) throw std::out_of_range("naive_distance: alignment out of range");
    std::int64_t d = 0;
    for (std::int64_t j = 0; j < m; ++j) {
        const code_t p = pattern.codes[static_cast<std::size_t>(j)];
        if (p == 0) continue;
        if (comparisons) ++*comparisons;
        if (p != text.codes[static_cast<std::size_t>(i + j)]) ++d;
    }
    return d;
}

/// Island-by-island verification with kangaroo jumps; O(q + k) LCE queries.
inline DistanceVerdict verify_islands(const LceIndex& idx, const PatternProfile& profile,
                                      std::int64_t i, std::int64_t k) {
    if (i < 0 || i > idx.text_length() - idx.pattern_length()) {
        throw std::out_of_range("verify_islands: alignment out of range");
    }
    DistanceVerdict verdict;
    std::int64_t d = 0;
    for (const Island& island : profile.islands) {
        d += kangaroo_count(idx, i + island.start, island.start, island.length, k - d,
                            &verdict.stats.lce_queries);
        if (d > k) {
            verdict.distance = k + 1;
            return verdict;
        }
    }
    verdict.accepted = true;
    verdict.distance = d;
    return verdict;
}

/// Contiguous group of islands whose joint span is exact-match tested as a unit.
struct SectionSpan {
    std::int64_t span_start = 0;   // pattern offset of the first island's start
    std::int64_t span_length = 0;  // through the last island's end, interior wildcards included
    std::int64_t first_island = 0;
    std::int64_t island_count = 0;
};

/// S sections covering all islands, plus a per-alignment exact-match flag
/// for each section, precomputed by convolution.
struct SectionPlan {
    std::int64_t section_count = 0;
    std::vector<SectionSpan> sections;
    std::vector<std::vector<std::uint8_t>> exact_at;  // [section][alignment]

    bool exact(std::int64_t section, std::int64_t i) const {
        return exact_at[static_cast<std::size_t>(section)][static_cast<std::size_t>(i)] != 0;
    }
};

/// Splits the q islands into S = clamp(round((k*q / log2 m)^(1/3)), 1, q)
/// contiguous sections balanced by island count (sizes differ by at most one)
/// and precomputes each section's exact-match flags.
inline SectionPlan build_section_plan(const EncodedText& text, const EncodedPattern& pattern,
                                      const PatternProfile& profile, std::int64_t k,
                                      std::uint64_t* work_units = nullptr) {
    if (profile.q < 1) throw std::invalid_argument("build_section_plan: pattern has no islands");
    if (k < 0) throw std::invalid_argument("build_section_plan: negative k");
    const std::int64_t n = text.n();
    const std::int64_t m = pattern.m();
    if (m > n) throw std::invalid_argument("build_section_plan: pattern longer than text");

    const double log_m = std::log2(static_cast<double>(std::max<std::int64_t>(m, 2)));
    const std::int64_t q = profile.q;
    std::int64_t s = std::llround(std::cbrt(static_cast<double>(k) * static_cast<double>(q) / log_m));
    s = std::clamp<std::int64_t>(s, 1, q);

    SectionPlan plan;
    plan.section_count = s;
    const std::int64_t base = q / s;
    const std::int64_t extra = q % s;
    const std::int64_t alignments = n - m + 1;

    std::int64_t next = 0;
    for (std::int64_t sec = 0; sec < s; ++sec) {
        SectionSpan span;
        span.first_island = next;
        span.island_count = base + (sec < extra ? 1 : 0);
        next += span.island_count;
        const Island& first = profile.islands[static_cast<std::size_t>(span.first_island)];
        const Island& last =
            profile.islands[static_cast<std::size_t>(span.first_island + span.island_count - 1)];
        span.span_start = first.start;
        span.span_length = last.start + last.length - first.start;

        EncodedPattern piece;
        piece.codes.assign(
            pattern.codes.begin() + static_cast<std::ptrdiff_t>(span.span_start),
            pattern.codes.begin() + static_cast<std::ptrdiff_t>(span.span_start + span.span_length));
        const ScoreArray scores = exact_match_scores(text, piece, work_units);

        std::vector<std::uint8_t> flags(static_cast<std::size_t>(alignments));
        for (std::int64_t i = 0; i < alignments; ++i) {
            flags[static_cast<std::size_t>(i)] =
                scores[static_cast<std::size_t>(i + span.span_start)] == 0 ? 1 : 0;
        }
        plan.sections.push_back(span);
        plan.exact_at.push_back(std::move(flags));
    }
    return plan;
}

/// Section verification: exact sections contribute nothing, the at most k
/// inexact ones are scanned island-by-island with kangaroo jumps.
inline DistanceVerdict verify_sections(const LceIndex& idx, const SectionPlan& plan,
                                       const PatternProfile& profile, std::int64_t i,
                                       std::int64_t k) {
    if (i < 0 || i > idx.text_length() - idx.pattern_length()) {
        throw std::out_of_range("verify_sections: alignment out of range");
    }
    DistanceVerdict verdict;
    std::int64_t d = 0;
    for (std::int64_t sec = 0; sec < plan.section_count; ++sec) {
        if (plan.exact(sec, i)) continue;
        ++verdict.stats.sections_scanned;
        const SectionSpan& span = plan.sections[static_cast<std::size_t>(sec)];
        for (std::int64_t j = 0; j < span.island_count; ++j) {
            const Island& island =
                profile.islands[static_cast<std::size_t>(span.first_island + j)];
            d += kangaroo_count(idx, i + island.start, island.start, island.length, k - d,
                                &verdict.stats.lce_queries);
            if (d > k) {
                verdict.distance = k + 1;
                return verdict;
            }
        }
    }
    verdict.accepted = true;
    verdict.distance = d;
    return verdict;
}

}  // namespace kmwild

#endif  // KMWILD_VERIFIERS_HPP
