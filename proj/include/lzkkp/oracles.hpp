#pragma once

// Brute-force reference implementations. They are transcriptions of the
// definitions and are used as ground truth by the tests; nothing in here is
// shared with the linear time algorithms.

#include <cstdint>
#include <vector>

#include "lzkkp/suffix_array.hpp"
#include "lzkkp/text.hpp"

namespace lzkkp::oracle {

struct Lpf {
    // Witness position (< i), or the symbol X[i] when ell == 0.
    std::uint64_t p = 0;
    std::uint64_t ell = 0;
};

// Longest previous factor at 1-based position i, by trying every p < i.
// The smallest p achieving the maximum is reported. Throws ArgumentError
// unless 1 <= i <= n.
Lpf brute_lpf(TextView text, std::uint64_t i);

// Greedy parse using brute_lpf at every phrase start.
Factorization brute_lz(TextView text);

// PSV/NSV in text order, 1-based, index 0 unused.
struct SmallerValues {
    std::vector<std::uint64_t> psv;
    std::vector<std::uint64_t> nsv;
};

// Quadratic scan for NSV/PSV over SA positions, mapped to text order through
// the inverse permutation.
SmallerValues brute_nsv_psv(std::span<const std::uint64_t> sa_entries);

template <IndexType Index>
SmallerValues brute_nsv_psv(const SuffixArray<Index>& sa) {
    std::vector<std::uint64_t> e(sa.entries().begin(), sa.entries().end());
    return brute_nsv_psv(e);
}

}  // namespace lzkkp::oracle
