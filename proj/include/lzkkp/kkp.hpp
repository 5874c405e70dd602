#pragma once

// Linear time LZ77 factorization from a suffix array.
//
// Every algorithm here derives, for each text position i, the two text
// positions PSV[i] and NSV[i]: the closest earlier-starting suffixes that
// precede and follow suffix i in lexicographic order. One of them is always a
// longest previous factor source, so a phrase starting at i is found by
// comparing characters against both (lz_factor_step). The variants differ in
// how the PSV/NSV values are produced and stored:
//
//   kkp3   SA + interleaved PSV/NSV array, stack kept in the scanned prefix
//          of SA. Destroys SA.
//   kkp3s  like kkp3 but the stack is simulated through PSV pointers. SA is
//          left intact and read once, in order.
//   kkp2s  SA + one array: NSV first, then PSV recovered while the array is
//          turned into Phi. Destroys SA, returns Phi.
//   kkp2n  SA + one array: PSV first, stack simulated through it, array is
//          turned into Phi^-1. SA left intact and read once.
//   kkp2b  kkp2n with a fixed-size buffer caching the top of the stack.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "lzkkp/suffix_array.hpp"
#include "lzkkp/text.hpp"

namespace lzkkp {

enum class Algorithm { kkp3, kkp3s, kkp2s, kkp2n, kkp2b };

std::string_view algorithm_name(Algorithm a) noexcept;
// Throws ArgumentError on an unknown name.
Algorithm parse_algorithm(std::string_view name);
// True for the algorithms that overwrite SA with their stack.
constexpr bool consumes_sa(Algorithm a) noexcept {
    return a == Algorithm::kkp3 || a == Algorithm::kkp2s;
}

// 65536 entries: 256 KiB at 32-bit.
inline constexpr std::size_t kDefaultBufferEntries = 65536;

// Optional instrumentation filled in by every algorithm.
struct ParseCounters {
    // Byte comparisons performed while evaluating phrase lengths.
    std::uint64_t comparisons = 0;
    // Largest stack depth (explicit or simulated) during the SA pass.
    std::uint64_t max_stack_depth = 0;
    // SA entries read.
    std::uint64_t sa_reads = 0;
};

struct FactorStep {
    Factor factor;
    std::uint64_t next;  // start of the following phrase
};

// Computes the phrase starting at i given psv = PSV[i] and nsv = NSV[i]
// (either may be 0). The psv candidate wins only if its match is strictly
// longer. `comparisons`, when non-null, is incremented by the number of byte
// comparisons made.
FactorStep lz_factor_step(TextView text, std::uint64_t i, std::uint64_t psv,
                          std::uint64_t nsv, std::uint64_t* comparisons = nullptr);

// PSV/NSV in text order, stored as adjacent pairs: slot 2i is PSV[i] and
// slot 2i+1 is NSV[i], for i in [1..n].
template <IndexType Index>
class SmallerValueArrays {
public:
    SmallerValueArrays() = default;
    explicit SmallerValueArrays(std::size_t n) : pairs_(2 * (n + 1), 0) {}

    std::size_t size() const noexcept { return pairs_.empty() ? 0 : pairs_.size() / 2 - 1; }
    Index psv(std::size_t i) const noexcept { return pairs_[2 * i]; }
    Index nsv(std::size_t i) const noexcept { return pairs_[2 * i + 1]; }
    Index& psv(std::size_t i) noexcept { return pairs_[2 * i]; }
    Index& nsv(std::size_t i) noexcept { return pairs_[2 * i + 1]; }
    std::span<const Index> pairs() const noexcept { return pairs_; }

    friend bool operator==(const SmallerValueArrays&, const SmallerValueArrays&) = default;

private:
    LargeVector<Index> pairs_;
};

template <IndexType Index>
struct FactorizationWithPhi {
    Factorization factorization;
    PhiArray<Index> phi;  // Phi for kkp2s, Phi^-1 for kkp2n
};

// First phase of kkp3: one pass over SA, stack in SA. Destroys SA.
template <IndexType Index>
SmallerValueArrays<Index> kkp3_smaller_values(SuffixArray<Index>& sa,
                                              ParseCounters* counters = nullptr);

template <IndexType Index>
Factorization kkp3(TextView text, SuffixArray<Index>& sa, ParseCounters* counters = nullptr);

template <IndexType Index>
Factorization kkp3_stackless(TextView text, const SuffixArray<Index>& sa,
                             ParseCounters* counters = nullptr);

template <IndexType Index>
FactorizationWithPhi<Index> kkp2s(TextView text, SuffixArray<Index>& sa,
                                  ParseCounters* counters = nullptr);

template <IndexType Index>
FactorizationWithPhi<Index> kkp2n(TextView text, const SuffixArray<Index>& sa,
                                  ParseCounters* counters = nullptr);

// Throws ArgumentError if buffer_entries < 2.
template <IndexType Index>
Factorization kkp2b(TextView text, const SuffixArray<Index>& sa,
                    std::size_t buffer_entries = kDefaultBufferEntries,
                    ParseCounters* counters = nullptr);

// Dispatch by name. kkp3 and kkp2s destroy `sa`; the others only read it.
Factorization factorize(TextView text, AnySuffixArray& sa, Algorithm algorithm,
                        std::size_t buffer_entries = kDefaultBufferEntries,
                        ParseCounters* counters = nullptr);

// A one-pass, forward-only source of SA[1..n].
class SaStream {
public:
    virtual ~SaStream() = default;
    // Stores the next entry and returns true, or returns false at the end.
    virtual bool next(std::uint64_t& value) = 0;
};

// Reads SA[1..n] from `source` exactly once, in order. Only the
// non-destructive algorithms (kkp3s, kkp2n, kkp2b) can stream. Throws
// FormatError if the stream holds fewer or more than n entries or an entry
// outside [1..n], ArgumentError for a destructive algorithm.
Factorization factorize_streaming(TextView text, SaStream& source, Algorithm algorithm,
                                  std::size_t buffer_entries = kDefaultBufferEntries,
                                  ParseCounters* counters = nullptr);

}  // namespace lzkkp
