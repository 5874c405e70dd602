#pragma once

// Suffix array, inverse suffix array and Phi construction and validation.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lzkkp/large_vector.hpp"
#include "lzkkp/text.hpp"

namespace lzkkp {

template <class I>
concept IndexType = std::same_as<I, std::uint32_t> || std::same_as<I, std::uint64_t>;

// SA[1..n] holding 1-based text positions, plus the two sentinel slots SA[0]
// and SA[n+1] that the stack-in-SA algorithms write to.
template <IndexType Index>
class SuffixArray {
public:
    using index_type = Index;

    SuffixArray() : slots_(2, 0) {}
    explicit SuffixArray(std::size_t n) : slots_(n + 2, 0) {}

    // Takes SA[1..n] as given.
    static SuffixArray from_entries(std::span<const Index> entries) {
        SuffixArray sa(entries.size());
        std::copy(entries.begin(), entries.end(), sa.slots_.begin() + 1);
        return sa;
    }

    std::size_t size() const noexcept { return slots_.size() - 2; }

    // Valid for k in [0, n+1].
    Index& operator[](std::size_t k) noexcept { return slots_[k]; }
    const Index& operator[](std::size_t k) const noexcept { return slots_[k]; }

    // SA[1..n].
    std::span<Index> entries() noexcept { return {slots_.data() + 1, size()}; }
    std::span<const Index> entries() const noexcept { return {slots_.data() + 1, size()}; }

    // All n+2 slots including the sentinels.
    std::span<Index> slots() noexcept { return slots_; }
    std::span<const Index> slots() const noexcept { return slots_; }

    // Compares SA[1..n] only.
    friend bool operator==(const SuffixArray& a, const SuffixArray& b) {
        return std::ranges::equal(a.entries(), b.entries());
    }

private:
    LargeVector<Index> slots_;
};

using SuffixArray32 = SuffixArray<std::uint32_t>;
using SuffixArray64 = SuffixArray<std::uint64_t>;

// SA whose entry width was picked at build or load time.
using AnySuffixArray = std::variant<SuffixArray32, SuffixArray64>;

// Phi[0..n]: Phi[i] is the lexicographic predecessor of suffix i,
// Phi[SA[1]] = 0 and Phi[0] = SA[n]. The same layout is used for its inverse.
template <IndexType Index>
using PhiArray = LargeVector<Index>;

// Entry width used for a text of length n: 4 bytes below 2^31, else 8.
constexpr unsigned index_width_for(std::uint64_t n) noexcept {
    return n < (std::uint64_t{1} << 31) ? 4 : 8;
}

// Reference builder: comparison sort of suffixes.
template <IndexType Index>
SuffixArray<Index> build_sa_naive(TextView text);

// SA-IS (induced sorting), linear time.
template <IndexType Index>
SuffixArray<Index> build_sa_fast(TextView text);

// build_sa_fast at the width chosen by index_width_for.
AnySuffixArray build_suffix_array(TextView text);

// ISA[1..n] in a vector of size n+1 (slot 0 unused, 0). Throws
// ValidationError if SA[1..n] is not a permutation of 1..n.
template <IndexType Index>
std::vector<Index> build_isa(const SuffixArray<Index>& sa);

// One pass over SA, no ISA. Throws ValidationError like build_isa.
template <IndexType Index>
PhiArray<Index> build_phi(const SuffixArray<Index>& sa);

struct Diagnostic {
    std::size_t index = 0;  // first offending SA index (1-based)
    std::string message;
};

// Full suffix comparison at or below this length; above it, a fixed number
// of random adjacent pairs are compared.
inline constexpr std::size_t kFullValidationLimit = std::size_t{1} << 20;
inline constexpr std::size_t kSampledPairs = std::size_t{1} << 16;

// nullopt when `sa` is the suffix array of `text`.
template <IndexType Index>
std::optional<Diagnostic> validate_sa(TextView text, const SuffixArray<Index>& sa,
                                      std::uint64_t sample_seed = 0x5eed);

std::optional<Diagnostic> validate_sa(TextView text, const AnySuffixArray& sa);

inline std::size_t size_of(const AnySuffixArray& sa) {
    return std::visit([](const auto& s) { return s.size(); }, sa);
}

}  // namespace lzkkp
