#include "lzkkp/suffix_array.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <type_traits>

#include "lzkkp/error.hpp"

namespace lzkkp {

namespace {

bool suffix_less(TextView text, std::size_t a, std::size_t b) {
    // 0-based starts.
    return std::lexicographical_compare(text.begin() + a, text.end(), text.begin() + b,
                                        text.end());
}

// Induced sorting (SA-IS) over an integer string with symbols in
// [0, upper]. Returns 0-based starting positions. No sentinel is required:
// the virtual end of string sorts before every symbol.
template <class S, class Str>
std::vector<S> sa_is(const Str& s, S upper) {
    const S n = static_cast<S>(s.size());
    if (n == 0) return {};
    if (n == 1) return {0};
    if (n < 10) {
        std::vector<S> sa(n);
        std::iota(sa.begin(), sa.end(), S{0});
        std::sort(sa.begin(), sa.end(), [&](S a, S b) {
            return std::lexicographical_compare(s.begin() + a, s.end(), s.begin() + b, s.end());
        });
        return sa;
    }

    std::vector<S> sa(n);
    // true: S-type, false: L-type. The last suffix is L-type.
    std::vector<bool> ls(n);
    for (S i = n - 2; i >= 0; --i) {
        ls[i] = (s[i] == s[i + 1]) ? ls[i + 1] : (s[i] < s[i + 1]);
    }
    std::vector<S> sum_l(upper + 1), sum_s(upper + 1);
    for (S i = 0; i < n; ++i) {
        if (!ls[i]) {
            ++sum_s[s[i]];
        } else {
            ++sum_l[s[i] + 1];
        }
    }
    for (S c = 0; c <= upper; ++c) {
        sum_s[c] += sum_l[c];
        if (c < upper) sum_l[c + 1] += sum_s[c];
    }

    std::vector<S> buf(upper + 1);
    auto induce = [&](const std::vector<S>& lms) {
        std::fill(sa.begin(), sa.end(), S{-1});
        std::copy(sum_s.begin(), sum_s.end(), buf.begin());
        for (S d : lms) {
            if (d == n) continue;
            sa[buf[s[d]]++] = d;
        }
        std::copy(sum_l.begin(), sum_l.end(), buf.begin());
        sa[buf[s[n - 1]]++] = n - 1;
        for (S i = 0; i < n; ++i) {
            const S v = sa[i];
            if (v >= 1 && !ls[v - 1]) sa[buf[s[v - 1]]++] = v - 1;
        }
        std::copy(sum_l.begin(), sum_l.end(), buf.begin());
        for (S i = n - 1; i >= 0; --i) {
            const S v = sa[i];
            if (v >= 1 && ls[v - 1]) sa[--buf[s[v - 1] + 1]] = v - 1;
        }
    };

    std::vector<S> lms_map(n + 1, S{-1});
    S m = 0;
    for (S i = 1; i < n; ++i) {
        if (!ls[i - 1] && ls[i]) lms_map[i] = m++;
    }
    std::vector<S> lms;
    lms.reserve(m);
    for (S i = 1; i < n; ++i) {
        if (!ls[i - 1] && ls[i]) lms.push_back(i);
    }

    induce(lms);

    if (m) {
        std::vector<S> sorted_lms;
        sorted_lms.reserve(m);
        for (S v : sa) {
            if (lms_map[v] != -1) sorted_lms.push_back(v);
        }
        std::vector<S> rec_s(m);
        S rec_upper = 0;
        rec_s[lms_map[sorted_lms[0]]] = 0;
        for (S k = 1; k < m; ++k) {
            S l = sorted_lms[k - 1], r = sorted_lms[k];
            const S end_l = (lms_map[l] + 1 < m) ? lms[lms_map[l] + 1] : n;
            const S end_r = (lms_map[r] + 1 < m) ? lms[lms_map[r] + 1] : n;
            bool same = true;
            if (end_l - l != end_r - r) {
                same = false;
            } else {
                while (l < end_l) {
                    if (s[l] != s[r]) break;
                    ++l;
                    ++r;
                }
                if (l == n || s[l] != s[r]) same = false;
            }
            if (!same) ++rec_upper;
            rec_s[lms_map[sorted_lms[k]]] = rec_upper;
        }
        lms_map = {};
        const std::vector<S> rec_sa = sa_is<S>(rec_s, rec_upper);
        for (S k = 0; k < m; ++k) sorted_lms[k] = lms[rec_sa[k]];
        induce(sorted_lms);
    }
    return sa;
}

template <IndexType Index>
void check_permutation(std::span<const Index> entries, std::vector<bool>& seen) {
    const std::size_t n = entries.size();
    seen.assign(n + 1, false);
    for (std::size_t k = 0; k < n; ++k) {
        const Index v = entries[k];
        if (v < 1 || v > n || seen[v]) {
            throw ValidationError("suffix array is not a permutation at " + std::to_string(k + 1));
        }
        seen[v] = true;
    }
}

}  // namespace

template <IndexType Index>
SuffixArray<Index> build_sa_naive(TextView text) {
    const std::size_t n = text.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return suffix_less(text, a, b); });
    SuffixArray<Index> sa(n);
    for (std::size_t k = 0; k < n; ++k) sa[k + 1] = static_cast<Index>(order[k] + 1);
    return sa;
}

template <IndexType Index>
SuffixArray<Index> build_sa_fast(TextView text) {
    const std::size_t n = text.size();
    if (sizeof(Index) == 4 && n >= (std::uint64_t{1} << 31)) {
        throw ArgumentError("text too long for a 32-bit suffix array");
    }
    using S = std::make_signed_t<Index>;
    const std::vector<S> sa0 = sa_is<S>(text, S{255});
    SuffixArray<Index> sa(n);
    for (std::size_t k = 0; k < n; ++k) sa[k + 1] = static_cast<Index>(sa0[k] + 1);
    return sa;
}

AnySuffixArray build_suffix_array(TextView text) {
    if (index_width_for(text.size()) == 4) return build_sa_fast<std::uint32_t>(text);
    return build_sa_fast<std::uint64_t>(text);
}

template <IndexType Index>
std::vector<Index> build_isa(const SuffixArray<Index>& sa) {
    const std::size_t n = sa.size();
    std::vector<bool> seen;
    check_permutation(sa.entries(), seen);
    std::vector<Index> isa(n + 1, 0);
    for (std::size_t k = 1; k <= n; ++k) isa[sa[k]] = static_cast<Index>(k);
    return isa;
}

template <IndexType Index>
PhiArray<Index> build_phi(const SuffixArray<Index>& sa) {
    const std::size_t n = sa.size();
    std::vector<bool> seen;
    check_permutation(sa.entries(), seen);
    PhiArray<Index> phi(n + 1, 0);
    Index prev = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        phi[sa[k]] = prev;
        prev = sa[k];
    }
    phi[0] = prev;
    return phi;
}

template <IndexType Index>
std::optional<Diagnostic> validate_sa(TextView text, const SuffixArray<Index>& sa,
                                      std::uint64_t sample_seed) {
    const std::size_t n = sa.size();
    if (n != text.size()) {
        return Diagnostic{0, "length mismatch: suffix array has " + std::to_string(n) +
                                 " entries, text has " + std::to_string(text.size())};
    }
    std::vector<bool> seen(n + 1, false);
    for (std::size_t k = 1; k <= n; ++k) {
        const Index v = sa[k];
        if (v < 1 || v > n || seen[v]) {
            return Diagnostic{k, "not a permutation at " + std::to_string(k)};
        }
        seen[v] = true;
    }
    seen = {};

    // Adjacent suffixes a = SA[k], b = SA[k+1] are ordered iff X[a] < X[b],
    // or X[a] == X[b] and suffix a+1 ranks below suffix b+1 (the empty suffix
    // n+1 ranking lowest). Given a permutation this is exact over all pairs.
    std::vector<Index> rank(n + 2, 0);
    for (std::size_t k = 1; k <= n; ++k) rank[sa[k]] = static_cast<Index>(k);
    auto pair_ok = [&](std::size_t k) {
        const std::size_t a = sa[k], b = sa[k + 1];
        if (text[a - 1] != text[b - 1]) return text[a - 1] < text[b - 1];
        return rank[a + 1] < rank[b + 1];
    };

    if (n <= kFullValidationLimit) {
        for (std::size_t k = 1; k < n; ++k) {
            if (!pair_ok(k)) return Diagnostic{k, "order violated at " + std::to_string(k)};
        }
        return std::nullopt;
    }
    std::mt19937_64 rng(sample_seed);
    std::uniform_int_distribution<std::size_t> pick(1, n - 1);
    std::size_t first_bad = 0;
    for (std::size_t s = 0; s < kSampledPairs; ++s) {
        const std::size_t k = pick(rng);
        if (!pair_ok(k) && (first_bad == 0 || k < first_bad)) first_bad = k;
    }
    if (first_bad != 0) {
        return Diagnostic{first_bad, "order violated at " + std::to_string(first_bad)};
    }
    return std::nullopt;
}

std::optional<Diagnostic> validate_sa(TextView text, const AnySuffixArray& sa) {
    return std::visit([&](const auto& s) { return validate_sa(text, s); }, sa);
}

#define LZKKP_INSTANTIATE(I)                                                            \
    template SuffixArray<I> build_sa_naive<I>(TextView);                                \
    template SuffixArray<I> build_sa_fast<I>(TextView);                                 \
    template std::vector<I> build_isa<I>(const SuffixArray<I>&);                        \
    template PhiArray<I> build_phi<I>(const SuffixArray<I>&);                           \
    template std::optional<Diagnostic> validate_sa<I>(TextView, const SuffixArray<I>&, \
                                                      std::uint64_t);
LZKKP_INSTANTIATE(std::uint32_t)
LZKKP_INSTANTIATE(std::uint64_t)
#undef LZKKP_INSTANTIATE

}  // namespace lzkkp
