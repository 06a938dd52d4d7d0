#ifndef KMWILD_LCE_INDEX_HPP
#define KMWILD_LCE_INDEX_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "kmwild/text_model.hpp"

namespace kmwild {

namespace detail {

// Suffix array by rank doubling with counting sorts, O(N log N).
inline std::vector<std::int32_t> build_suffix_array(const std::vector<code_t>& s) {
    const std::int32_t n = static_cast<std::int32_t>(s.size());
    std::vector<std::int32_t> sa(n), rank(n), tmp(n);

    std::int32_t max_key = 0;
    for (code_t c : s) max_key = std::max(max_key, c);
    std::vector<std::int32_t> cnt(static_cast<std::size_t>(std::max(max_key + 1, n)) + 1, 0);

    for (std::int32_t i = 0; i < n; ++i) ++cnt[s[i]];
    for (std::size_t v = 1; v < cnt.size(); ++v) cnt[v] += cnt[v - 1];
    for (std::int32_t i = n - 1; i >= 0; --i) sa[--cnt[s[i]]] = i;
    rank[sa[0]] = 0;
    for (std::int32_t j = 1; j < n; ++j) {
        rank[sa[j]] = rank[sa[j - 1]] + (s[sa[j]] != s[sa[j - 1]] ? 1 : 0);
    }

    for (std::int32_t len = 1; len < n && rank[sa[n - 1]] != n - 1; len <<= 1) {
        // order by second key: suffixes without one come first
        std::int32_t p = 0;
        for (std::int32_t i = n - len; i < n; ++i) tmp[p++] = i;
        for (std::int32_t j = 0; j < n; ++j) {
            if (sa[j] >= len) tmp[p++] = sa[j] - len;
        }
        // stable sort by first key
        std::fill(cnt.begin(), cnt.begin() + n + 1, 0);
        for (std::int32_t i = 0; i < n; ++i) ++cnt[rank[i]];
        for (std::int32_t v = 1; v <= n; ++v) cnt[v] += cnt[v - 1];
        for (std::int32_t j = n - 1; j >= 0; --j) sa[--cnt[rank[tmp[j]]]] = tmp[j];
        // re-rank by (rank, rank+len) pairs
        std::vector<std::int32_t>& next_rank = tmp;
        std::int32_t prev = sa[0];
        std::int32_t r = 0;
        next_rank[prev] = 0;
        for (std::int32_t j = 1; j < n; ++j) {
            const std::int32_t cur = sa[j];
            const std::int32_t prev2 = prev + len < n ? rank[prev + len] : -1;
            const std::int32_t cur2 = cur + len < n ? rank[cur + len] : -1;
            if (rank[cur] != rank[prev] || cur2 != prev2) ++r;
            next_rank[cur] = r;
            prev = cur;
        }
        std::swap(rank, next_rank);
    }
    return sa;
}

// Kasai's LCP: lcp[j] = longest common prefix of suffixes sa[j-1] and sa[j].
inline std::vector<std::int32_t> build_lcp(const std::vector<code_t>& s,
                                           const std::vector<std::int32_t>& sa,
                                           const std::vector<std::int32_t>& rank) {
    const std::int32_t n = static_cast<std::int32_t>(s.size());
    std::vector<std::int32_t> lcp(n, 0);
    std::int32_t h = 0;
    for (std::int32_t i = 0; i < n; ++i) {
        if (rank[i] == 0) {
            h = 0;
            continue;
        }
        const std::int32_t j = sa[rank[i] - 1];
        while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
        lcp[rank[i]] = h;
        if (h > 0) --h;
    }
    return lcp;
}

}  // namespace detail

/// Constant-time longest-common-extension queries between any text suffix
/// and any pattern suffix, over the concatenation T . sep1 . P . sep2.
/// Wildcards stay code 0 in the concatenation; since 0 never occurs in the
/// text, an extension stops at a wildcard by itself.
class LceIndex {
public:
    LceIndex(const EncodedText& text, const EncodedPattern& pattern)
        : n_(text.n()), m_(pattern.m()) {
        code_t sigma = 0;
        for (code_t c : text.codes) sigma = std::max(sigma, c);
        for (code_t c : pattern.codes) sigma = std::max(sigma, c);

        std::vector<code_t> s;
        s.reserve(static_cast<std::size_t>(n_ + m_ + 2));
        s.insert(s.end(), text.codes.begin(), text.codes.end());
        s.push_back(sigma + 1);
        s.insert(s.end(), pattern.codes.begin(), pattern.codes.end());
        s.push_back(sigma + 2);

        sa_ = detail::build_suffix_array(s);
        rank_.resize(sa_.size());
        for (std::size_t j = 0; j < sa_.size(); ++j) rank_[sa_[j]] = static_cast<std::int32_t>(j);
        const std::vector<std::int32_t> lcp = detail::build_lcp(s, sa_, rank_);

        // sparse table over lcp, level-major
        const std::size_t len = lcp.size();
        const int levels = std::bit_width(len);
        rmq_.resize(levels);
        rmq_[0] = lcp;
        for (int t = 1; t < levels; ++t) {
            const std::size_t half = std::size_t{1} << (t - 1);
            rmq_[t].resize(len - (std::size_t{2} << (t - 1)) + 1);
            for (std::size_t i = 0; i < rmq_[t].size(); ++i) {
                rmq_[t][i] = std::min(rmq_[t - 1][i], rmq_[t - 1][i + half]);
            }
        }
    }

    std::int64_t text_length() const { return n_; }
    std::int64_t pattern_length() const { return m_; }

    /// Length of the longest common prefix of T[tpos..] and P[ppos..].
    std::int64_t lce(std::int64_t tpos, std::int64_t ppos) const {
        if (tpos < 0 || tpos >= n_) throw std::out_of_range("lce: text position out of range");
        if (ppos < 0 || ppos >= m_) throw std::out_of_range("lce: pattern position out of range");
        std::int32_t ra = rank_[static_cast<std::size_t>(tpos)];
        std::int32_t rb = rank_[static_cast<std::size_t>(n_ + 1 + ppos)];
        if (ra > rb) std::swap(ra, rb);
        const std::size_t lo = static_cast<std::size_t>(ra) + 1;
        const std::size_t hi = static_cast<std::size_t>(rb);
        const int t = std::bit_width(hi - lo + 1) - 1;
        return std::min(rmq_[t][lo], rmq_[t][hi - (std::size_t{1} << t) + 1]);
    }

private:
    std::int64_t n_;
    std::int64_t m_;
    std::vector<std::int32_t> sa_;
    std::vector<std::int32_t> rank_;
    std::vector<std::vector<std::int32_t>> rmq_;
};

inline LceIndex build_lce_index(const EncodedText& text, const EncodedPattern& pattern) {
    return LceIndex(text, pattern);
}

/// Mismatches between T[tstart..tstart+len) and P[pstart..pstart+len),
/// counted by jumping across common extensions; gives up past `cap` and
/// returns cap+1. Performs at most cap+1 LCE queries, accrued into
/// `lce_queries` when given. The pattern range must lie inside one island.
inline std::int64_t kangaroo_count(const LceIndex& idx, std::int64_t tstart, std::int64_t pstart,
                                   std::int64_t len, std::int64_t cap,
                                   std::uint64_t* lce_queries = nullptr) {
    if (len < 0 || tstart < 0 || pstart < 0 || tstart + len > idx.text_length() ||
        pstart + len > idx.pattern_length()) {
        throw std::out_of_range("kangaroo_count: range outside text or pattern");
    }
    if (cap < 0) throw std::invalid_argument("kangaroo_count: negative cap");

    std::int64_t mismatches = 0;
    std::int64_t pos = 0;
    while (pos < len) {
        if (lce_queries) ++*lce_queries;
        std::int64_t ext = idx.lce(tstart + pos, pstart + pos);
        if (ext > len - pos) ext = len - pos;
        pos += ext;
        if (pos >= len) break;
        ++mismatches;
        if (mismatches > cap) break;
        ++pos;
    }
    return mismatches;
}

}  // namespace kmwild

#endif  // KMWILD_LCE_INDEX_HPP
