#ifndef KMWILD_MATCHER_HPP
#define KMWILD_MATCHER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "kmwild/convolution.hpp"
#include "kmwild/lce_index.hpp"
#include "kmwild/text_model.hpp"
#include "kmwild/verifiers.hpp"

namespace kmwild {

enum class Strategy { Auto, Islands, Sections, Naive };

/// Which pipeline produced the result.
enum class MatchPath {
    Case1Filtered,     // 2k positions marked, candidates filtered and verified
    Case2Counted,      // marks plus per-character convolutions, exact counts
    ExactConvolution,  // k = 0: one wildcard exact-match scoring pass
    AllAlignments,     // k >= g: every alignment matches
    NaiveScan,         // per-alignment direct scan
};

enum class SelectionCase { Full, ExhaustedBudget, AllPositions };

/// Machine-independent work accounting. One unit is one inspected element:
/// a character comparison, an LCE query, a mark attempt, or one sequence
/// element flowing through a correlation (transform arithmetic is not a
/// character inspection and is deliberately not counted here).
struct WorkCounters {
    std::uint64_t marks_attempted = 0;
    std::uint64_t lce_queries = 0;
    std::uint64_t direct_comparisons = 0;
    std::uint64_t convolution_units = 0;

    std::uint64_t total() const {
        return marks_attempted + lce_queries + direct_comparisons + convolution_units;
    }
};

struct MatchQuery {
    std::int64_t k = 0;
    Strategy strategy = Strategy::Auto;
    int threads = 1;
    double v_factor = 1.0;  // scales the verification-cost estimate inside the budget
    bool with_distances = false;
    char wildcard = '?';
};

/// Up to 2k pattern offsets whose total text-frequency cost fits the budget.
struct SelectionResult {
    std::vector<std::int64_t> offsets;  // A, ascending
    std::vector<code_t> chosen_chars;   // codes whose position sets were taken whole
    std::int64_t cost = 0;
    SelectionCase case_tag = SelectionCase::Full;
};

/// Per-alignment match counts over a selected offset set.
struct MarkArray {
    std::vector<std::int32_t> counts;
    std::int64_t total = 0;
};

struct Diagnostics {
    Strategy strategy = Strategy::Auto;  // resolved verifier family, never Auto
    MatchPath path = MatchPath::NaiveScan;
    SelectionCase selection_case = SelectionCase::Full;
    std::int64_t n = 0, m = 0, q = 0, g = 0;
    std::int64_t budget = 0;
    double v_estimate = 0.0;
    std::int64_t selected_positions = 0;
    std::int64_t selection_cost = 0;
    std::int64_t section_count = 0;
    std::int64_t mark_total = 0;
    std::int64_t candidate_count = 0;
    WorkCounters work;
};

/// Accepted alignments, ascending; distances parallel to positions when requested.
struct MatchReport {
    std::vector<std::int64_t> positions;
    std::vector<std::int64_t> distances;
    Diagnostics diag;
};

inline const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::Auto: return "auto";
        case Strategy::Islands: return "islands";
        case Strategy::Sections: return "sections";
        case Strategy::Naive: return "naive";
    }
    return "?";
}

inline const char* to_string(MatchPath p) {
    switch (p) {
        case MatchPath::Case1Filtered: return "case1";
        case MatchPath::Case2Counted: return "case2";
        case MatchPath::ExactConvolution: return "exact";
        case MatchPath::AllAlignments: return "all";
        case MatchPath::NaiveScan: return "naive";
    }
    return "?";
}

inline const char* to_string(SelectionCase c) {
    switch (c) {
        case SelectionCase::Full: return "full";
        case SelectionCase::ExhaustedBudget: return "exhausted-budget";
        case SelectionCase::AllPositions: return "all-positions";
    }
    return "?";
}

/// Marking budget B = ceil(n * k * sqrt(log2(max(m,2)) / V)), the point where
/// the marking-stage and convolution-stage costs balance.
inline std::int64_t compute_budget(std::int64_t n, std::int64_t k, std::int64_t m,
                                   double v_estimate) {
    if (n < m || m < 1) throw std::invalid_argument("compute_budget: need n >= m >= 1");
    if (k < 1) throw std::invalid_argument("compute_budget: need k >= 1");
    if (v_estimate < 1.0) throw std::invalid_argument("compute_budget: need V >= 1");
    const double log_m = std::log2(static_cast<double>(std::max<std::int64_t>(m, 2)));
    const double b = static_cast<double>(n) * static_cast<double>(k) * std::sqrt(log_m / v_estimate);
    return static_cast<std::int64_t>(std::ceil(b));
}

/// Greedy selection of up to 2k pattern offsets, cheapest characters first
/// (ties by code), a character's offsets taken left to right. At the budget
/// boundary characters are taken whole or not at all; only the 2k cap may
/// truncate a character mid-way.
inline SelectionResult select_positions(const PatternProfile& profile, const FreqTable& freq,
                                        std::int64_t k, std::int64_t budget) {
    if (k < 1) throw std::invalid_argument("select_positions: need k >= 1");

    std::vector<code_t> order;
    for (std::size_t c = 1; c < profile.positions_by_char.size(); ++c) {
        if (!profile.positions_by_char[c].empty()) order.push_back(static_cast<code_t>(c));
    }
    std::sort(order.begin(), order.end(), [&](code_t lhs, code_t rhs) {
        const std::int64_t fl = freq.of(lhs), fr = freq.of(rhs);
        return fl != fr ? fl < fr : lhs < rhs;
    });

    SelectionResult sel;
    const std::int64_t cap = 2 * k;
    for (code_t c : order) {
        const auto& positions = profile.positions_by_char[static_cast<std::size_t>(c)];
        const std::int64_t need = cap - static_cast<std::int64_t>(sel.offsets.size());
        if (need == 0) break;
        const std::int64_t take = std::min<std::int64_t>(static_cast<std::int64_t>(positions.size()), need);
        const std::int64_t add_cost = take * freq.of(c);
        if (sel.cost + add_cost > budget) {
            sel.case_tag = SelectionCase::ExhaustedBudget;
            std::sort(sel.offsets.begin(), sel.offsets.end());
            return sel;
        }
        sel.offsets.insert(sel.offsets.end(), positions.begin(),
                           positions.begin() + static_cast<std::ptrdiff_t>(take));
        sel.cost += add_cost;
        if (take == static_cast<std::int64_t>(positions.size())) sel.chosen_chars.push_back(c);
    }
    sel.case_tag = static_cast<std::int64_t>(sel.offsets.size()) == cap
                       ? SelectionCase::Full
                       : SelectionCase::AllPositions;
    std::sort(sel.offsets.begin(), sel.offsets.end());
    return sel;
}

/// Match counts over the offsets in A: scans the text once and, for each text
/// character, bumps every alignment that would match it at a selected offset.
/// Marks landing outside [0, n-m] are discarded.
inline MarkArray mark(const EncodedText& text, const EncodedPattern& pattern,
                      const std::vector<std::int64_t>& offsets,
                      std::uint64_t* marks_attempted = nullptr) {
    const std::int64_t n = text.n();
    const std::int64_t m = pattern.m();
    if (m > n) throw std::invalid_argument("mark: pattern longer than text");

    code_t max_code = 0;
    for (code_t c : text.codes) max_code = std::max(max_code, c);
    std::vector<std::vector<std::int32_t>> selected_by_char(static_cast<std::size_t>(max_code) + 1);
    for (std::int64_t j : offsets) {
        if (j < 0 || j >= m) throw std::invalid_argument("mark: offset outside pattern");
        const code_t c = pattern.codes[static_cast<std::size_t>(j)];
        if (c == 0) throw std::invalid_argument("mark: selected offset is a wildcard");
        if (c <= max_code) selected_by_char[static_cast<std::size_t>(c)].push_back(static_cast<std::int32_t>(j));
    }

    MarkArray marks;
    marks.counts.assign(static_cast<std::size_t>(n - m + 1), 0);
    for (std::int64_t i = 0; i < n; ++i) {
        const auto& offs = selected_by_char[static_cast<std::size_t>(text.codes[static_cast<std::size_t>(i)])];
        for (std::int32_t j : offs) {
            if (marks_attempted) ++*marks_attempted;
            const std::int64_t at = i - j;
            if (at >= 0 && at <= n - m) {
                ++marks.counts[static_cast<std::size_t>(at)];
                ++marks.total;
            }
        }
    }
    return marks;
}

/// Alignments with at least k marks; every alignment within distance k of the
/// pattern survives when the marks cover 2k positions.
inline std::vector<std::int64_t> filter_candidates(const MarkArray& marks, std::int64_t k) {
    std::vector<std::int64_t> candidates;
    for (std::size_t i = 0; i < marks.counts.size(); ++i) {
        if (marks.counts[i] >= k) candidates.push_back(static_cast<std::int64_t>(i));
    }
    return candidates;
}

namespace detail {

// Runs fn(worker, begin, end) over [0, total) split into contiguous chunks.
template <typename Fn>
inline void parallel_chunks(std::int64_t total, int threads, Fn&& fn) {
    const int workers =
        static_cast<int>(std::min<std::int64_t>(std::max(threads, 1), std::max<std::int64_t>(total, 1)));
    if (workers <= 1) {
        fn(0, std::int64_t{0}, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t begin = static_cast<std::int64_t>(w) * chunk;
        const std::int64_t end = std::min<std::int64_t>(begin + chunk, total);
        if (begin >= end) break;
        pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace detail

/// Case 1 of the general algorithm: filter on 2k marked positions, then verify
/// each surviving alignment with the configured single-alignment verifier.
inline MatchReport run_case1(const EncodedText& text, const EncodedPattern& pattern,
                             const PatternProfile& profile, std::int64_t k,
                             const SelectionResult& selection, Strategy verifier,
                             int threads = 1) {
    MatchReport report;
    Diagnostics& diag = report.diag;
    diag.path = MatchPath::Case1Filtered;
    diag.strategy = verifier;

    const MarkArray marks = mark(text, pattern, selection.offsets, &diag.work.marks_attempted);
    diag.mark_total = marks.total;
    const std::vector<std::int64_t> candidates = filter_candidates(marks, k);
    diag.candidate_count = static_cast<std::int64_t>(candidates.size());
    if (candidates.empty()) return report;

    const LceIndex idx = build_lce_index(text, pattern);
    SectionPlan plan;
    const bool use_sections = verifier == Strategy::Sections;
    if (use_sections) {
        plan = build_section_plan(text, pattern, profile, k, &diag.work.convolution_units);
        diag.section_count = plan.section_count;
    }

    const std::int64_t total = static_cast<std::int64_t>(candidates.size());
    std::vector<std::int64_t> verdict_distance(static_cast<std::size_t>(total));
    const int workers = std::max(threads, 1);
    std::vector<std::uint64_t> lce_by_worker(static_cast<std::size_t>(workers), 0);

    detail::parallel_chunks(total, workers, [&](int w, std::int64_t begin, std::int64_t end) {
        for (std::int64_t t = begin; t < end; ++t) {
            const std::int64_t i = candidates[static_cast<std::size_t>(t)];
            const DistanceVerdict v = use_sections ? verify_sections(idx, plan, profile, i, k)
                                                   : verify_islands(idx, profile, i, k);
            verdict_distance[static_cast<std::size_t>(t)] = v.accepted ? v.distance : -1;
            lce_by_worker[static_cast<std::size_t>(w)] += v.stats.lce_queries;
        }
    });
    for (std::uint64_t c : lce_by_worker) diag.work.lce_queries += c;

    for (std::int64_t t = 0; t < total; ++t) {
        const std::int64_t d = verdict_distance[static_cast<std::size_t>(t)];
        if (d < 0) continue;
        report.positions.push_back(candidates[static_cast<std::size_t>(t)]);
        report.distances.push_back(d);
    }
    return report;
}

/// Case 2 of the general algorithm: marks over the chosen positions plus one
/// match-count convolution per pattern character left unchosen give exact
/// match totals, so acceptance is the threshold M[i] >= g - k with no
/// per-alignment verification.
inline MatchReport run_case2(const EncodedText& text, const EncodedPattern& pattern,
                             const PatternProfile& profile, std::int64_t k,
                             const SelectionResult& selection, int threads = 1) {
    if (selection.case_tag == SelectionCase::Full) {
        throw std::invalid_argument("run_case2: selection filled all 2k positions");
    }
    MatchReport report;
    Diagnostics& diag = report.diag;
    diag.path = MatchPath::Case2Counted;
    diag.selection_case = selection.case_tag;

    const MarkArray marks = mark(text, pattern, selection.offsets, &diag.work.marks_attempted);
    diag.mark_total = marks.total;

    std::vector<code_t> chosen_sorted = selection.chosen_chars;
    std::sort(chosen_sorted.begin(), chosen_sorted.end());
    std::vector<code_t> unchosen;
    for (std::size_t c = 1; c < profile.positions_by_char.size(); ++c) {
        if (profile.positions_by_char[c].empty()) continue;
        if (!std::binary_search(chosen_sorted.begin(), chosen_sorted.end(), static_cast<code_t>(c))) {
            unchosen.push_back(static_cast<code_t>(c));
        }
    }

    std::vector<std::int32_t> totals = marks.counts;
    const std::int64_t chars = static_cast<std::int64_t>(unchosen.size());
    if (chars > 0) {
        std::vector<ScoreArray> per_char(static_cast<std::size_t>(chars));
        const int workers = std::max(threads, 1);
        std::vector<std::uint64_t> conv_by_worker(static_cast<std::size_t>(workers), 0);
        detail::parallel_chunks(chars, workers, [&](int w, std::int64_t begin, std::int64_t end) {
            for (std::int64_t t = begin; t < end; ++t) {
                per_char[static_cast<std::size_t>(t)] = match_counts_for_char(
                    text, pattern, unchosen[static_cast<std::size_t>(t)],
                    &conv_by_worker[static_cast<std::size_t>(w)]);
            }
        });
        for (std::uint64_t c : conv_by_worker) diag.work.convolution_units += c;
        for (const ScoreArray& counts : per_char) {
            for (std::size_t i = 0; i < totals.size(); ++i) {
                totals[i] += static_cast<std::int32_t>(counts[i]);
            }
        }
    }

    const std::int64_t threshold = profile.g - k;
    for (std::size_t i = 0; i < totals.size(); ++i) {
        if (totals[i] >= threshold) {
            report.positions.push_back(static_cast<std::int64_t>(i));
            report.distances.push_back(profile.g - totals[i]);
        }
    }
    return report;
}

namespace detail {

inline Strategy resolve_strategy(Strategy requested, std::int64_t q, std::int64_t k) {
    if (requested != Strategy::Auto) return requested;
    return q < k * k ? Strategy::Islands : Strategy::Sections;
}

inline double verification_cost_estimate(Strategy resolved, std::int64_t q, std::int64_t k,
                                         std::int64_t m) {
    const double log_m = std::log2(static_cast<double>(std::max<std::int64_t>(m, 2)));
    if (resolved == Strategy::Islands) return static_cast<double>(q + k);
    const double kq = static_cast<double>(k) * static_cast<double>(k) * static_cast<double>(q) *
                      static_cast<double>(q) * log_m;
    return static_cast<double>(k) + std::cbrt(kq);
}

}  // namespace detail

/// Pattern matching with k mismatches and wildcards in the pattern: returns
/// exactly the alignments i with Hd(P, T_i) <= k, 0-based and ascending.
inline MatchReport match_k_mismatches(std::string_view text, std::string_view pattern,
                                      const MatchQuery& query) {
    if (pattern.empty()) throw std::invalid_argument("match_k_mismatches: empty pattern");
    if (query.k < 0) throw std::invalid_argument("match_k_mismatches: negative k");
    if (pattern.size() > text.size()) {
        throw std::invalid_argument("match_k_mismatches: pattern longer than text");
    }

    const AlphabetMap alphabet = build_alphabet(text, pattern, query.wildcard);
    auto [enc_text, enc_pattern] = encode(text, pattern, alphabet);
    const PatternProfile profile = profile_pattern(enc_pattern);
    const FreqTable freq = char_frequencies(enc_text);

    const std::int64_t n = enc_text.n();
    const std::int64_t m = enc_pattern.m();
    const std::int64_t k = query.k;
    const std::int64_t alignments = n - m + 1;

    MatchReport report;
    if (query.strategy == Strategy::Naive) {
        report.diag.strategy = Strategy::Naive;
        report.diag.path = MatchPath::NaiveScan;
        for (std::int64_t i = 0; i < alignments; ++i) {
            std::int64_t d = 0;
            for (std::int64_t j = 0; j < m && d <= k; ++j) {
                const code_t p = enc_pattern.codes[static_cast<std::size_t>(j)];
                if (p == 0) continue;
                ++report.diag.work.direct_comparisons;
                if (p != enc_text.codes[static_cast<std::size_t>(i + j)]) ++d;
            }
            if (d <= k) {
                report.positions.push_back(i);
                report.distances.push_back(d);
            }
        }
    } else if (k >= profile.g) {
        // No alignment can exceed k mismatches: every position matches.
        report.diag.strategy = detail::resolve_strategy(query.strategy, profile.q, std::max<std::int64_t>(k, 1));
        report.diag.path = MatchPath::AllAlignments;
        report.positions.resize(static_cast<std::size_t>(alignments));
        for (std::int64_t i = 0; i < alignments; ++i) report.positions[static_cast<std::size_t>(i)] = i;
        if (query.with_distances) {
            std::vector<std::int64_t> match_totals(static_cast<std::size_t>(alignments), 0);
            for (std::size_t c = 1; c < profile.positions_by_char.size(); ++c) {
                if (profile.positions_by_char[c].empty()) continue;
                const ScoreArray counts = match_counts_for_char(
                    enc_text, enc_pattern, static_cast<code_t>(c), &report.diag.work.convolution_units);
                for (std::size_t i = 0; i < match_totals.size(); ++i) match_totals[i] += counts[i];
            }
            report.distances.resize(static_cast<std::size_t>(alignments));
            for (std::size_t i = 0; i < match_totals.size(); ++i) {
                report.distances[i] = profile.g - match_totals[i];
            }
        }
    } else if (k == 0) {
        // Exact wildcard matching: a single scoring pass, no budget machinery.
        report.diag.strategy = detail::resolve_strategy(query.strategy, profile.q, 1);
        report.diag.path = MatchPath::ExactConvolution;
        const ScoreArray scores =
            exact_match_scores(enc_text, enc_pattern, &report.diag.work.convolution_units);
        for (std::int64_t i = 0; i < alignments; ++i) {
            if (scores[static_cast<std::size_t>(i)] == 0) {
                report.positions.push_back(i);
                report.distances.push_back(0);
            }
        }
    } else {
        const Strategy resolved = detail::resolve_strategy(query.strategy, profile.q, k);
        const double v_raw = detail::verification_cost_estimate(resolved, profile.q, k, m);
        const double v_eff = std::max(1.0, v_raw * query.v_factor);
        const std::int64_t budget = compute_budget(n, k, m, v_eff);
        const SelectionResult selection = select_positions(profile, freq, k, budget);

        MatchReport body = selection.case_tag == SelectionCase::Full
                               ? run_case1(enc_text, enc_pattern, profile, k, selection, resolved,
                                           query.threads)
                               : run_case2(enc_text, enc_pattern, profile, k, selection,
                                           query.threads);
        report = std::move(body);
        report.diag.strategy = resolved;
        report.diag.v_estimate = v_eff;
        report.diag.budget = budget;
        report.diag.selection_case = selection.case_tag;
        report.diag.selected_positions = static_cast<std::int64_t>(selection.offsets.size());
        report.diag.selection_cost = selection.cost;
    }

    report.diag.n = n;
    report.diag.m = m;
    report.diag.q = profile.q;
    report.diag.g = profile.g;
    if (!query.with_distances) report.distances.clear();
    return report;
}

}  // namespace kmwild

#endif  // KMWILD_MATCHER_HPP
