#pragma once

// Small helpers for the benchmark and statistics modes of the CLI.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <sys/resource.h>

namespace lzkkp::tools {

// Median of the samples; the mean of the two middle values for even counts.
inline double median(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size() / 2;
    return xs.size() % 2 ? xs[m] : (xs[m - 1] + xs[m]) / 2.0;
}

inline double seconds_per_gib(double seconds, std::uint64_t bytes) {
    if (bytes == 0) return 0.0;
    return seconds * static_cast<double>(std::uint64_t{1} << 30) / static_cast<double>(bytes);
}

// Resident-set high-water mark of this process in KiB.
inline long peak_rss_kib() {
    rusage ru{};
    if (getrusage(RUSAGE_SELF, &ru) != 0) return -1;
    return ru.ru_maxrss;
}

inline std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct CorpusRow {
    std::string name;
    std::uint64_t n = 0;
    std::size_t sigma = 0;
    std::uint64_t z = 0;
};

inline std::string corpus_header() {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-24s %14s %9s %6s %12s %9s", "name", "n", "n/2^20", "sigma",
                  "z", "n/z");
    return buf;
}

// One line per file; an empty file gets dashes for the undefined ratio.
inline std::string corpus_line(const CorpusRow& r) {
    char buf[200];
    const std::string ratio = r.z ? fixed2(static_cast<double>(r.n) / static_cast<double>(r.z)) : "-";
    std::snprintf(buf, sizeof buf, "%-24s %14llu %9s %6zu %12llu %9s", r.name.c_str(),
                  static_cast<unsigned long long>(r.n),
                  fixed2(static_cast<double>(r.n) / (1 << 20)).c_str(), r.sigma,
                  static_cast<unsigned long long>(r.z), ratio.c_str());
    return buf;
}

}  // namespace lzkkp::tools
