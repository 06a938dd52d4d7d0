// Minimal library walkthrough: search a small text for a wildcard pattern at
// a few mismatch thresholds and print what the matcher reports back.

#include <cstdio>

#include <kmwild/kmwild.hpp>

int main() {
    const std::string text = "the quick brown fox jumps over the lazy dog";
    const std::string pattern = "th? l?zy";

    for (std::int64_t k : {0, 1, 2}) {
        kmwild::MatchQuery query;
        query.k = k;
        query.with_distances = true;
        const kmwild::MatchReport report = kmwild::match_k_mismatches(text, pattern, query);

        std::printf("k=%lld  strategy=%s path=%s  matches=%zu\n", static_cast<long long>(k),
                    kmwild::to_string(report.diag.strategy), kmwild::to_string(report.diag.path),
                    report.positions.size());
        for (std::size_t t = 0; t < report.positions.size(); ++t) {
            std::printf("  position %lld  distance %lld\n",
                        static_cast<long long>(report.positions[t]),
                        static_cast<long long>(report.distances[t]));
        }
    }
    return 0;
}
