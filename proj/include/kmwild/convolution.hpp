#ifndef KMWILD_CONVOLUTION_HPP
#define KMWILD_CONVOLUTION_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmwild/text_model.hpp"

namespace kmwild {

/// Sequence of non-negative integers fed to the correlation engine.
using IntSeq = std::vector<std::int64_t>;

/// One value per alignment, stored 0-based.
using ScoreArray = std::vector<std::int64_t>;

namespace detail {

// Number-theoretic transform modulo p = 29 * 2^57 + 1 (primitive root 3).
// Every correlation whose true outputs stay below p is reconstructed exactly,
// which is what the zero-tests downstream rely on. Arithmetic is Montgomery
// form with R = 2^64.
inline constexpr std::uint64_t kNttPrime = 4179340454199820289ULL;
inline constexpr std::uint64_t kNttRoot = 3;

inline constexpr std::uint64_t ntt_mont_nprime() {
    // -p^{-1} mod 2^64 via Newton iteration.
    std::uint64_t inv = kNttPrime;
    for (int i = 0; i < 5; ++i) inv *= 2 - kNttPrime * inv;
    return ~inv + 1;
}

inline constexpr std::uint64_t kMontNPrime = ntt_mont_nprime();

inline std::uint64_t mont_mul(std::uint64_t a, std::uint64_t b) {
    using u128 = unsigned __int128;
    const u128 t = static_cast<u128>(a) * b;
    const std::uint64_t m = static_cast<std::uint64_t>(t) * kMontNPrime;
    std::uint64_t u =
        static_cast<std::uint64_t>((t + static_cast<u128>(m) * kNttPrime) >> 64);
    if (u >= kNttPrime) u -= kNttPrime;
    return u;
}

inline std::uint64_t mont_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    if (s >= kNttPrime) s -= kNttPrime;
    return s;
}

inline std::uint64_t mont_sub(std::uint64_t a, std::uint64_t b) {
    return a >= b ? a - b : a + kNttPrime - b;
}

inline std::uint64_t to_mont(std::uint64_t x) {
    // R^2 mod p = 2^128 mod p, computed once.
    static const std::uint64_t r2 = [] {
        using u128 = unsigned __int128;
        return static_cast<std::uint64_t>(((~u128{0}) % kNttPrime + 1) % kNttPrime);
    }();
    return mont_mul(x, r2);
}

inline std::uint64_t from_mont(std::uint64_t x) { return mont_mul(x, 1); }

inline std::uint64_t mont_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = to_mont(1);
    while (exp > 0) {
        if (exp & 1) result = mont_mul(result, base);
        base = mont_mul(base, base);
        exp >>= 1;
    }
    return result;
}

// In-place transform of a power-of-two-sized vector in Montgomery form.
inline void ntt(std::vector<std::uint64_t>& a, bool invert) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint64_t wlen = mont_pow(to_mont(kNttRoot), (kNttPrime - 1) / len);
        if (invert) wlen = mont_pow(wlen, kNttPrime - 2);
        for (std::size_t i = 0; i < n; i += len) {
            std::uint64_t w = to_mont(1);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::uint64_t u = a[i + j];
                const std::uint64_t v = mont_mul(a[i + j + len / 2], w);
                a[i + j] = mont_add(u, v);
                a[i + j + len / 2] = mont_sub(u, v);
                w = mont_mul(w, wlen);
            }
        }
    }
    if (invert) {
        const std::uint64_t inv_n = mont_pow(to_mont(n), kNttPrime - 2);
        for (auto& x : a) x = mont_mul(x, inv_n);
    }
}

// True iff len * maxa * maxb stays below the exact range of the engine.
inline bool output_bound_fits(std::uint64_t maxa, std::uint64_t maxb, std::uint64_t len) {
    using u128 = unsigned __int128;
    if (maxa == 0 || maxb == 0 || len == 0) return true;
    const u128 limit = kNttPrime - 1;
    const u128 ab = static_cast<u128>(maxa) * maxb;
    if (ab > limit) return false;
    return ab <= limit / len;
}

inline std::int64_t checked_max(const IntSeq& v, const char* who) {
    std::int64_t mx = 0;
    for (std::int64_t x : v) {
        if (x < 0) {
            throw std::invalid_argument(std::string(who) + ": negative value in input sequence");
        }
        mx = std::max(mx, x);
    }
    return mx;
}

}  // namespace detail

/// Kernels at or below this length skip the transform and sum directly.
inline constexpr std::size_t kDirectCorrelationCutoff = 64;

/// Exact sliding dot product: out[i] = sum_j a[i+j] * b[j], |b| <= |a|.
/// Output length |a| - |b| + 1. `work_units` (optional) accrues |a| + |out|,
/// one unit per sequence element touched, independent of the internal path.
inline IntSeq correlate(const IntSeq& a, const IntSeq& b,
                        std::uint64_t* work_units = nullptr) {
    if (b.empty()) throw std::invalid_argument("correlate: empty kernel");
    if (b.size() > a.size()) {
        throw std::invalid_argument("correlate: kernel longer than sequence");
    }
    const std::int64_t maxa = detail::checked_max(a, "correlate");
    const std::int64_t maxb = detail::checked_max(b, "correlate");
    if (!detail::output_bound_fits(static_cast<std::uint64_t>(maxa),
                                   static_cast<std::uint64_t>(maxb), b.size())) {
        throw std::overflow_error(
            "correlate: output bound " + std::to_string(b.size()) + " * " +
            std::to_string(maxa) + " * " + std::to_string(maxb) +
            " exceeds the exact integer range of the engine (p = " +
            std::to_string(detail::kNttPrime) + ")");
    }

    const std::size_t out_len = a.size() - b.size() + 1;
    IntSeq out(out_len, 0);
    if (work_units) *work_units += a.size() + out_len;

    if (b.size() <= kDirectCorrelationCutoff) {
        for (std::size_t i = 0; i < out_len; ++i) {
            std::int64_t acc = 0;
            for (std::size_t j = 0; j < b.size(); ++j) acc += a[i + j] * b[j];
            out[i] = acc;
        }
        return out;
    }

    // Overlap-save blocks of cyclic NTT convolutions against the reversed
    // kernel. Product coefficients below |b|-1 wrap around and are dropped;
    // coefficient t in [|b|-1, N-1] is the correlation at block_start + t - (|b|-1).
    const std::size_t m = b.size();
    const std::size_t full = std::bit_ceil(a.size());
    const std::size_t block = std::min(full, std::max<std::size_t>(std::bit_ceil(4 * m), 2048));
    const std::size_t step = block - m + 1;

    std::vector<std::uint64_t> kernel(block, 0);
    for (std::size_t j = 0; j < m; ++j) {
        kernel[j] = detail::to_mont(static_cast<std::uint64_t>(b[m - 1 - j]));
    }
    detail::ntt(kernel, false);

    std::vector<std::uint64_t> buf(block);
    for (std::size_t start = 0; start < out_len; start += step) {
        for (std::size_t t = 0; t < block; ++t) {
            const std::size_t src = start + t;
            buf[t] = src < a.size() ? detail::to_mont(static_cast<std::uint64_t>(a[src])) : 0;
        }
        detail::ntt(buf, false);
        for (std::size_t t = 0; t < block; ++t) buf[t] = detail::mont_mul(buf[t], kernel[t]);
        detail::ntt(buf, true);
        const std::size_t count = std::min(step, out_len - start);
        for (std::size_t t = 0; t < count; ++t) {
            out[start + t] = static_cast<std::int64_t>(detail::from_mont(buf[m - 1 + t]));
        }
    }
    return out;
}

/// Number of matches contributed by character `c` to every alignment:
/// out[i] = |{j : P[j] = c and T[i+j] = c}|, via one correlation of the
/// indicator sequences of `c` in T and P.
inline ScoreArray match_counts_for_char(const EncodedText& text, const EncodedPattern& pattern,
                                        code_t c, std::uint64_t* work_units = nullptr) {
    if (c < 1) throw std::invalid_argument("match_counts_for_char: code must be >= 1");
    if (pattern.m() > text.n()) {
        throw std::invalid_argument("match_counts_for_char: pattern longer than text");
    }
    IntSeq t(text.codes.size());
    IntSeq p(pattern.codes.size());
    for (std::size_t i = 0; i < text.codes.size(); ++i) t[i] = text.codes[i] == c ? 1 : 0;
    for (std::size_t j = 0; j < pattern.codes.size(); ++j) p[j] = pattern.codes[j] == c ? 1 : 0;
    return correlate(t, p, work_units);
}

/// Wildcard-aware exact-match score per alignment:
///   out[i] = sum_j (T[i+j] - Pseg[j])^2 * T[i+j] * Pseg[j]
/// which is 0 exactly where Pseg occurs (wildcards matching anything).
/// Expanded into the three correlations t^3*p - 2*t^2*p^2 + t*p^3.
inline ScoreArray exact_match_scores(const EncodedText& text, const EncodedPattern& seg,
                                     std::uint64_t* work_units = nullptr) {
    const std::int64_t n = text.n();
    const std::int64_t m = seg.m();
    if (m == 0) throw std::invalid_argument("exact_match_scores: empty segment");
    if (m > n) throw std::invalid_argument("exact_match_scores: segment longer than text");

    std::int64_t mx = 0;
    for (code_t c : text.codes) mx = std::max<std::int64_t>(mx, c);
    for (code_t c : seg.codes) {
        if (c < 0) throw std::invalid_argument("exact_match_scores: negative code");
        mx = std::max<std::int64_t>(mx, c);
    }
    // The cubic terms are bounded by m * mx^4; that bound must stay exact.
    {
        using u128 = unsigned __int128;
        const u128 limit = detail::kNttPrime - 1;
        const std::uint64_t umx = static_cast<std::uint64_t>(mx);
        bool fits = true;
        if (umx > 0) {
            u128 bound = static_cast<u128>(umx) * umx;
            if (bound > limit / umx) {
                fits = false;
            } else {
                bound *= umx;
                if (bound > limit / umx) {
                    fits = false;
                } else {
                    bound *= umx;
                    fits = bound <= limit / static_cast<std::uint64_t>(m);
                }
            }
        }
        if (!fits) {
            throw std::overflow_error(
                "exact_match_scores: m * sigma^4 = " + std::to_string(m) + " * " +
                std::to_string(mx) + "^4 exceeds the exact integer range of the engine");
        }
    }

    const auto nsz = static_cast<std::size_t>(n);
    const auto msz = static_cast<std::size_t>(m);
    IntSeq t1(nsz), t2(nsz), t3(nsz), p1(msz), p2(msz), p3(msz);
    for (std::size_t i = 0; i < nsz; ++i) {
        const std::int64_t t = text.codes[i];
        t1[i] = t;
        t2[i] = t * t;
        t3[i] = t * t * t;
    }
    for (std::size_t j = 0; j < msz; ++j) {
        const std::int64_t p = seg.codes[j];
        p1[j] = p;
        p2[j] = p * p;
        p3[j] = p * p * p;
    }

    const IntSeq c31 = correlate(t3, p1, work_units);
    const IntSeq c22 = correlate(t2, p2, work_units);
    const IntSeq c13 = correlate(t1, p3, work_units);

    ScoreArray out(c31.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = c31[i] - 2 * c22[i] + c13[i];
    }
    return out;
}

}  // namespace kmwild

#endif  // KMWILD_CONVOLUTION_HPP
