#pragma once

// Texts, LZ77 factors and factorizations.
//
// All positions that cross this header are 1-based: the first byte of a text
// is position 1, and position 0 is reserved for "no such suffix".

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lzkkp {

using Byte = std::uint8_t;

// Read-only view of a text X[1..n]; byte i (1-based) is view[i - 1].
using TextView = std::span<const Byte>;

inline TextView as_text(std::string_view s) noexcept {
    return {reinterpret_cast<const Byte*>(s.data()), s.size()};
}

// Owning text buffer.
class Text {
public:
    Text() = default;
    explicit Text(std::vector<Byte> bytes) : bytes_(std::move(bytes)) {}
    explicit Text(std::string_view s) : bytes_(s.begin(), s.end()) {}

    std::size_t size() const noexcept { return bytes_.size(); }
    bool empty() const noexcept { return bytes_.empty(); }
    TextView view() const noexcept { return bytes_; }
    operator TextView() const noexcept { return bytes_; }
    const std::vector<Byte>& bytes() const noexcept { return bytes_; }

    // 1-based access.
    Byte at(std::uint64_t pos) const { return bytes_.at(pos - 1); }

    friend bool operator==(const Text&, const Text&) = default;

private:
    std::vector<Byte> bytes_;
};

// One LZ77 phrase: either a literal byte (the leftmost occurrence of a
// symbol) or a copy of `len` bytes starting at the earlier position `pos`.
class Factor {
public:
    static constexpr Factor literal(Byte symbol) noexcept { return Factor(symbol, 0); }
    static constexpr Factor copy(std::uint64_t pos, std::uint64_t len) noexcept {
        return Factor(pos, len);
    }

    constexpr bool is_literal() const noexcept { return len_ == 0; }
    constexpr bool is_copy() const noexcept { return len_ != 0; }

    // Only meaningful for literals.
    constexpr Byte symbol() const noexcept { return static_cast<Byte>(pos_); }
    // Only meaningful for copies.
    constexpr std::uint64_t pos() const noexcept { return pos_; }
    // 0 for literals.
    constexpr std::uint64_t len() const noexcept { return len_; }
    // Number of text bytes the phrase covers.
    constexpr std::uint64_t span() const noexcept { return len_ == 0 ? 1 : len_; }

    friend constexpr bool operator==(const Factor&, const Factor&) = default;

private:
    // Literals keep the symbol in pos_, the same overloading as the (p, 0)
    // pair used for special factors.
    constexpr Factor(std::uint64_t pos, std::uint64_t len) noexcept : pos_(pos), len_(len) {}

    std::uint64_t pos_;
    std::uint64_t len_;
};

std::string to_string(const Factor& f);

struct FactorizationStats {
    std::uint64_t z = 0;
    // n / z; empty when n == 0.
    std::optional<double> n_over_z;
};

// Ordered phrase list of a text of length source_len.
class Factorization {
public:
    Factorization() = default;
    Factorization(std::vector<Factor> factors, std::uint64_t source_len)
        : factors_(std::move(factors)), source_len_(source_len) {}

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    std::uint64_t source_len() const noexcept { return source_len_; }
    std::size_t size() const noexcept { return factors_.size(); }
    bool empty() const noexcept { return factors_.empty(); }
    const Factor& operator[](std::size_t k) const noexcept { return factors_[k]; }
    auto begin() const noexcept { return factors_.begin(); }
    auto end() const noexcept { return factors_.end(); }

    // 1-based starting position of every phrase, reconstructed greedily.
    std::vector<std::uint64_t> starts() const;

    // Throws MalformedFactorization unless the phrase spans tile [1..n] and
    // every copy source lies strictly before its phrase.
    void check_tiling() const;

    friend bool operator==(const Factorization&, const Factorization&) = default;

private:
    std::vector<Factor> factors_;
    std::uint64_t source_len_ = 0;
};

// Builder used by the parsing algorithms.
class FactorizationBuilder {
public:
    explicit FactorizationBuilder(std::uint64_t source_len) : source_len_(source_len) {}
    void reserve(std::size_t z) { factors_.reserve(z); }
    void push(Factor f) { factors_.push_back(f); }
    Factorization finish() && { return Factorization(std::move(factors_), source_len_); }

private:
    std::vector<Factor> factors_;
    std::uint64_t source_len_;
};

// Length of the longest common prefix of suffixes i and j (1-based). Either
// position may be 0, in which case the result is 0. Throws ArgumentError for
// positions beyond n.
std::uint64_t lcp(TextView text, std::uint64_t i, std::uint64_t j);

// Rebuilds the text. Copies are expanded byte by byte so that self-overlapping
// sources such as (1, 4) after "z" work. Throws MalformedFactorization.
Text decode(const Factorization& f);

FactorizationStats stats(const Factorization& f);

// "13.77" style ratio, or "-" for an empty text.
std::string format_ratio(const FactorizationStats& s);

// Number of distinct byte values.
std::size_t alphabet_size(TextView text) noexcept;

// Checks that every copy factor is a genuine earlier occurrence in `text` and
// that the phrases tile it. Returns a description of the first problem.
std::optional<std::string> verify_against(const Factorization& f, TextView text);

}  // namespace lzkkp
