#include "lzkkp/text.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "lzkkp/error.hpp"

namespace lzkkp {

std::string to_string(const Factor& f) {
    if (f.is_literal()) {
        return "(" + std::string(1, static_cast<char>(f.symbol())) + ",0)";
    }
    return "(" + std::to_string(f.pos()) + "," + std::to_string(f.len()) + ")";
}

std::vector<std::uint64_t> Factorization::starts() const {
    std::vector<std::uint64_t> out;
    out.reserve(factors_.size());
    std::uint64_t i = 1;
    for (const Factor& f : factors_) {
        out.push_back(i);
        i += f.span();
    }
    return out;
}

void Factorization::check_tiling() const {
    std::uint64_t i = 1;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        const Factor& f = factors_[k];
        if (f.is_copy() && (f.pos() == 0 || f.pos() >= i)) {
            throw MalformedFactorization("factor " + std::to_string(k) + " at position " +
                                         std::to_string(i) + " copies from position " +
                                         std::to_string(f.pos()) + ", not an earlier one");
        }
        i += f.span();
        if (i - 1 > source_len_) {
            throw MalformedFactorization("factor " + std::to_string(k) + " runs past the end (n=" +
                                         std::to_string(source_len_) + ")");
        }
    }
    if (i - 1 != source_len_) {
        throw MalformedFactorization("factors cover " + std::to_string(i - 1) + " bytes, expected " +
                                     std::to_string(source_len_));
    }
}

std::uint64_t lcp(TextView text, std::uint64_t i, std::uint64_t j) {
    const std::uint64_t n = text.size();
    if (i > n || j > n) {
        throw ArgumentError("lcp: position out of range [0.." + std::to_string(n) + "]");
    }
    if (i == 0 || j == 0) return 0;
    std::uint64_t k = 0;
    const std::uint64_t limit = n + 1 - std::max(i, j);
    while (k < limit && text[i - 1 + k] == text[j - 1 + k]) ++k;
    return k;
}

Text decode(const Factorization& f) {
    std::vector<Byte> out;
    out.reserve(f.source_len());
    for (std::size_t k = 0; k < f.size(); ++k) {
        const Factor& fac = f[k];
        if (fac.is_literal()) {
            out.push_back(fac.symbol());
            continue;
        }
        const std::uint64_t start = out.size() + 1;
        if (fac.pos() == 0 || fac.pos() >= start) {
            throw MalformedFactorization("factor " + std::to_string(k) + " copies from position " +
                                         std::to_string(fac.pos()) + " at position " +
                                         std::to_string(start));
        }
        if (fac.len() > f.source_len() - out.size()) {
            throw MalformedFactorization("factor " + std::to_string(k) + " runs past the end");
        }
        // Byte by byte: the source may overlap the bytes being produced.
        std::size_t src = fac.pos() - 1;
        for (std::uint64_t t = 0; t < fac.len(); ++t) out.push_back(out[src++]);
    }
    if (out.size() != f.source_len()) {
        throw MalformedFactorization("decoded " + std::to_string(out.size()) +
                                     " bytes, expected " + std::to_string(f.source_len()));
    }
    return Text(std::move(out));
}

FactorizationStats stats(const Factorization& f) {
    FactorizationStats s;
    s.z = f.size();
    if (f.source_len() > 0 && s.z > 0) {
        s.n_over_z = static_cast<double>(f.source_len()) / static_cast<double>(s.z);
    }
    return s;
}

std::string format_ratio(const FactorizationStats& s) {
    if (!s.n_over_z) return "-";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", *s.n_over_z);
    return buf;
}

std::size_t alphabet_size(TextView text) noexcept {
    std::array<bool, 256> seen{};
    std::size_t count = 0;
    for (Byte b : text) {
        if (!seen[b]) {
            seen[b] = true;
            ++count;
        }
    }
    return count;
}

std::optional<std::string> verify_against(const Factorization& f, TextView text) {
    if (f.source_len() != text.size()) {
        return "source length " + std::to_string(f.source_len()) + " differs from text length " +
               std::to_string(text.size());
    }
    std::uint64_t i = 1;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const Factor& fac = f[k];
        if (i > text.size()) return "factor " + std::to_string(k) + " starts past the end";
        if (fac.is_literal()) {
            if (text[i - 1] != fac.symbol()) {
                return "literal factor " + std::to_string(k) + " does not match text at " +
                       std::to_string(i);
            }
        } else {
            if (fac.pos() == 0 || fac.pos() >= i) {
                return "factor " + std::to_string(k) + " source " + std::to_string(fac.pos()) +
                       " is not before " + std::to_string(i);
            }
            if (fac.len() > text.size() - i + 1) {
                return "factor " + std::to_string(k) + " runs past the end";
            }
            for (std::uint64_t t = 0; t < fac.len(); ++t) {
                if (text[fac.pos() - 1 + t] != text[i - 1 + t]) {
                    return "factor " + std::to_string(k) + " is not an occurrence at " +
                           std::to_string(i);
                }
            }
        }
        i += fac.span();
    }
    if (i - 1 != text.size()) return "factors do not cover the text";
    return std::nullopt;
}

}  // namespace lzkkp
