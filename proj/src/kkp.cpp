#include "lzkkp/kkp.hpp"

#include <algorithm>
#include <array>

#include "lzkkp/error.hpp"

namespace lzkkp {

namespace {

constexpr std::array<std::pair<std::string_view, Algorithm>, 5> kAlgorithmNames = {{
    {"kkp3", Algorithm::kkp3},
    {"kkp3s", Algorithm::kkp3s},
    {"kkp2s", Algorithm::kkp2s},
    {"kkp2n", Algorithm::kkp2n},
    {"kkp2b", Algorithm::kkp2b},
}};

void require_length(TextView text, std::size_t sa_size) {
    if (text.size() != sa_size) {
        throw ArgumentError("suffix array has " + std::to_string(sa_size) +
                            " entries but the text has " + std::to_string(text.size()) + " bytes");
    }
}

// Shared by all variants once PSV/NSV for position i are known.
struct PhraseParser {
    TextView text;
    FactorizationBuilder out;
    std::uint64_t comparisons = 0;

    explicit PhraseParser(TextView t) : text(t), out(t.size()) {}

    std::uint64_t step(std::uint64_t i, std::uint64_t psv, std::uint64_t nsv) {
        FactorStep s = lz_factor_step(text, i, psv, nsv, &comparisons);
        out.push(s.factor);
        return s.next;
    }

    Factorization finish(ParseCounters* counters) && {
        if (counters) counters->comparisons = comparisons;
        return std::move(out).finish();
    }
};

void record(ParseCounters* counters, std::uint64_t depth, std::uint64_t reads) {
    if (counters) {
        counters->max_stack_depth = depth;
        counters->sa_reads = reads;
    }
}

[[noreturn]] void duplicate_entry(std::uint64_t value) {
    throw ValidationError("suffix array entry " + std::to_string(value) + " occurs twice");
}

// Phase one of kkp3s. `next_entry()` yields SA[1..n] in order. The stack is
// the chain top, PSV[top], PSV[PSV[top]], ... down to 0, so no explicit stack
// is stored. NSV values still 0 when the pass ends belong to suffixes that
// were on the stack at the end and have no next smaller value.
template <IndexType Index, class Next>
SmallerValueArrays<Index> stackless_smaller_values(std::size_t n, Next&& next_entry,
                                                   ParseCounters* counters) {
    SmallerValueArrays<Index> sv(n);
    Index top = 0;
    std::uint64_t depth = 0, max_depth = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        const Index x = next_entry();
        while (top > x) {
            sv.nsv(top) = x;
            top = sv.psv(top);
            --depth;
        }
        if (top == x) duplicate_entry(x);
        sv.psv(x) = top;
        top = x;
        max_depth = std::max(max_depth, ++depth);
    }
    record(counters, max_depth, n);
    return sv;
}

template <IndexType Index>
Factorization parse_with(TextView text, const SmallerValueArrays<Index>& sv,
                         ParseCounters* counters) {
    PhraseParser parser(text);
    const std::size_t n = text.size();
    for (std::uint64_t i = 1; i <= n;) i = parser.step(i, sv.psv(i), sv.nsv(i));
    return std::move(parser).finish(counters);
}

// Phase one of kkp2n: Phi^-1[x] = PSV[x], with the stack simulated through
// those same pointers.
template <IndexType Index, class Next>
PhiArray<Index> psv_first(std::size_t n, Next&& next_entry, ParseCounters* counters) {
    PhiArray<Index> phi_inv(n + 1, 0);
    Index top = 0;
    std::uint64_t depth = 0, max_depth = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        const Index x = next_entry();
        while (top > x) {
            top = phi_inv[top];
            --depth;
        }
        if (top == x) duplicate_entry(x);
        phi_inv[x] = top;
        top = x;
        max_depth = std::max(max_depth, ++depth);
    }
    record(counters, max_depth, n);
    return phi_inv;
}

// As psv_first, with the top of the stack cached in a buffer of `capacity`
// entries. A full buffer drops its bottom half; an exhausted one is refilled
// to half capacity by following the PSV pointers from the new top.
template <IndexType Index, class Next>
PhiArray<Index> psv_first_buffered(std::size_t n, Next&& next_entry, std::size_t capacity,
                                   ParseCounters* counters) {
    PhiArray<Index> phi_inv(n + 1, 0);
    std::vector<Index> buffer(capacity);
    const std::size_t half = capacity / 2;
    std::size_t size = 0;  // buffer[size - 1] == top whenever top != 0
    Index top = 0;
    std::uint64_t depth = 0, max_depth = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        const Index x = next_entry();
        while (top > x) {
            --depth;
            if (size > 1) {
                top = buffer[--size - 1];
                continue;
            }
            top = phi_inv[top];
            size = 0;
            if (top != 0) {
                // Walk down half a buffer's worth, then lay it out bottom-up.
                Index v = top;
                while (v != 0 && size < half) {
                    buffer[size++] = v;
                    v = phi_inv[v];
                }
                std::reverse(buffer.begin(), buffer.begin() + size);
            }
        }
        if (top == x) duplicate_entry(x);
        phi_inv[x] = top;
        if (size == capacity) {
            std::copy(buffer.begin() + half, buffer.end(), buffer.begin());
            size = capacity - half;
        }
        buffer[size++] = x;
        top = x;
        max_depth = std::max(max_depth, ++depth);
    }
    record(counters, max_depth, n);
    return phi_inv;
}

// Phase two of kkp2n/kkp2b. Before round t, phi_inv[0..t-1] is Phi^-1
// restricted to suffixes 1..t-1 and phi_inv[t..n] still holds PSV. Inserting
// suffix t between PSV[t] and its current successor NSV[t] keeps that true.
template <IndexType Index>
Factorization parse_psv_first(TextView text, PhiArray<Index>& phi_inv, ParseCounters* counters) {
    PhraseParser parser(text);
    const std::size_t n = text.size();
    phi_inv[0] = 0;
    std::uint64_t next = 1;
    for (std::size_t t = 1; t <= n; ++t) {
        const Index psv = phi_inv[t];
        const Index nsv = phi_inv[psv];
        if (t == next) next = parser.step(t, psv, nsv);
        phi_inv[t] = nsv;
        phi_inv[psv] = static_cast<Index>(t);
    }
    return std::move(parser).finish(counters);
}

template <IndexType Index>
auto memory_source(const SuffixArray<Index>& sa) {
    return [p = sa.entries().data()]() mutable { return *p++; };
}

// Adapts a virtual SaStream; checks each entry and the stream length.
template <IndexType Index>
class CheckedStream {
public:
    CheckedStream(SaStream& s, std::size_t n) : stream_(s), n_(n) {}

    Index operator()() {
        std::uint64_t v = 0;
        if (!stream_.next(v)) {
            throw FormatError("suffix array stream ended after " + std::to_string(read_) +
                              " of " + std::to_string(n_) + " entries");
        }
        ++read_;
        if (v < 1 || v > n_) {
            throw FormatError("suffix array stream entry " + std::to_string(read_) + " is " +
                              std::to_string(v) + ", outside [1.." + std::to_string(n_) + "]");
        }
        return static_cast<Index>(v);
    }

    void expect_end() {
        std::uint64_t v = 0;
        if (stream_.next(v)) {
            throw FormatError("suffix array stream holds more than " + std::to_string(n_) +
                              " entries");
        }
    }

private:
    SaStream& stream_;
    std::size_t n_;
    std::size_t read_ = 0;
};

template <IndexType Index>
Factorization stream_with(TextView text, SaStream& source, Algorithm algorithm,
                          std::size_t buffer_entries, ParseCounters* counters) {
    const std::size_t n = text.size();
    CheckedStream<Index> in(source, n);
    try {
        switch (algorithm) {
            case Algorithm::kkp3s: {
                auto sv = stackless_smaller_values<Index>(n, in, counters);
                in.expect_end();
                return parse_with(text, sv, counters);
            }
            case Algorithm::kkp2n: {
                auto phi_inv = psv_first<Index>(n, in, counters);
                in.expect_end();
                return parse_psv_first(text, phi_inv, counters);
            }
            case Algorithm::kkp2b: {
                auto phi_inv = psv_first_buffered<Index>(n, in, buffer_entries, counters);
                in.expect_end();
                return parse_psv_first(text, phi_inv, counters);
            }
            default:
                break;
        }
    } catch (const ValidationError& e) {
        throw FormatError(e.what());
    }
    throw ArgumentError("unreachable");
}

}  // namespace

std::string_view algorithm_name(Algorithm a) noexcept {
    for (const auto& [name, value] : kAlgorithmNames) {
        if (value == a) return name;
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    for (const auto& [n, value] : kAlgorithmNames) {
        if (n == name) return value;
    }
    throw ArgumentError("unknown algorithm '" + std::string(name) +
                        "' (expected kkp3, kkp3s, kkp2s, kkp2n or kkp2b)");
}

FactorStep lz_factor_step(TextView text, std::uint64_t i, std::uint64_t psv, std::uint64_t nsv,
                          std::uint64_t* comparisons) {
    const std::uint64_t n = text.size();
    if (i < 1 || i > n) {
        throw ArgumentError("phrase start " + std::to_string(i) + " outside [1.." +
                            std::to_string(n) + "]");
    }
    if (psv >= i || nsv >= i) {
        throw ValidationError("candidate source at or after position " + std::to_string(i));
    }
    // Suffixes as 0-based pointers; both candidates start before i, so the
    // match at i is bounded by the length of suffix i alone.
    const Byte* cur = text.data() + (i - 1);
    const std::uint64_t limit = n - i + 1;
    std::uint64_t cmp = 0;
    std::uint64_t p = 0, ell = 0;

    if (psv == 0 && nsv == 0) {
        // no earlier suffix at all
    } else if (psv == 0 || nsv == 0) {
        p = psv == 0 ? nsv : psv;
        const Byte* src = text.data() + (p - 1);
        while (ell < limit && (++cmp, cur[ell] == src[ell])) ++ell;
    } else {
        // Suffix i sits between psv and nsv in lexicographic order, so the
        // shorter of its two matches is lcp(psv, nsv). Only the longer one
        // needs extending past that point.
        const Byte* prev = text.data() + (psv - 1);
        const Byte* succ = text.data() + (nsv - 1);
        std::uint64_t m = 0;
        while (m < limit && (++cmp, prev[m] == succ[m])) ++m;
        if (m < limit && (++cmp, cur[m] == prev[m])) {
            p = psv;
            ell = m + 1;
            while (ell < limit && (++cmp, cur[ell] == prev[ell])) ++ell;
        } else {
            p = nsv;
            ell = m;
            while (ell < limit && (++cmp, cur[ell] == succ[ell])) ++ell;
        }
    }
    if (comparisons) *comparisons += cmp;
    if (ell == 0) return {Factor::literal(*cur), i + 1};
    return {Factor::copy(p, ell), i + ell};
}

template <IndexType Index>
SmallerValueArrays<Index> kkp3_smaller_values(SuffixArray<Index>& sa, ParseCounters* counters) {
    const std::size_t n = sa.size();
    SmallerValueArrays<Index> sv(n);
    Index* s = sa.slots().data();
    s[0] = 0;      // bottom of stack
    s[n + 1] = 0;  // flushes the stack at the end
    std::size_t top = 0;
    std::uint64_t max_depth = 0;
    for (std::size_t i = 1; i <= n + 1; ++i) {
        const Index x = s[i];
        while (s[top] > x) {
            sv.nsv(s[top]) = x;
            sv.psv(s[top]) = s[top - 1];
            --top;
        }
        // Pushing overwrites the scanned prefix; top < i always holds.
        s[++top] = x;
        max_depth = std::max<std::uint64_t>(max_depth, top);
    }
    // The sentinel push at i = n+1 is not a suffix.
    record(counters, std::min<std::uint64_t>(max_depth, n), n);
    return sv;
}

template <IndexType Index>
Factorization kkp3(TextView text, SuffixArray<Index>& sa, ParseCounters* counters) {
    require_length(text, sa.size());
    const SmallerValueArrays<Index> sv = kkp3_smaller_values(sa, counters);
    return parse_with(text, sv, counters);
}

template <IndexType Index>
Factorization kkp3_stackless(TextView text, const SuffixArray<Index>& sa,
                             ParseCounters* counters) {
    require_length(text, sa.size());
    const auto sv = stackless_smaller_values<Index>(sa.size(), memory_source(sa), counters);
    return parse_with(text, sv, counters);
}

template <IndexType Index>
FactorizationWithPhi<Index> kkp2s(TextView text, SuffixArray<Index>& sa,
                                  ParseCounters* counters) {
    require_length(text, sa.size());
    const std::size_t n = sa.size();
    PhiArray<Index> phi(n + 1, 0);
    Index* s = sa.slots().data();
    s[0] = 0;
    s[n + 1] = 0;
    std::size_t top = 0;
    std::uint64_t max_depth = 0;
    for (std::size_t i = 1; i <= n + 1; ++i) {
        const Index x = s[i];
        while (s[top] > x) {
            phi[s[top]] = x;  // NSV of the popped suffix
            --top;
        }
        s[++top] = x;
        max_depth = std::max<std::uint64_t>(max_depth, top);
    }
    record(counters, std::min<std::uint64_t>(max_depth, n), n);

    // Before round t, phi[0..t-1] is Phi restricted to suffixes 1..t-1 and
    // phi[t..n] is NSV[t..n]. PSV[t] is the current predecessor of NSV[t].
    PhraseParser parser(text);
    phi[0] = 0;
    std::uint64_t next = 1;
    for (std::size_t t = 1; t <= n; ++t) {
        const Index nsv = phi[t];
        const Index psv = phi[nsv];
        if (t == next) next = parser.step(t, psv, nsv);
        phi[t] = psv;
        phi[nsv] = static_cast<Index>(t);
    }
    return {std::move(parser).finish(counters), std::move(phi)};
}

template <IndexType Index>
FactorizationWithPhi<Index> kkp2n(TextView text, const SuffixArray<Index>& sa,
                                  ParseCounters* counters) {
    require_length(text, sa.size());
    PhiArray<Index> phi_inv = psv_first<Index>(sa.size(), memory_source(sa), counters);
    Factorization f = parse_psv_first(text, phi_inv, counters);
    return {std::move(f), std::move(phi_inv)};
}

template <IndexType Index>
Factorization kkp2b(TextView text, const SuffixArray<Index>& sa, std::size_t buffer_entries,
                    ParseCounters* counters) {
    if (buffer_entries < 2) {
        throw ArgumentError("kkp2b needs a stack buffer of at least 2 entries");
    }
    require_length(text, sa.size());
    PhiArray<Index> phi_inv =
        psv_first_buffered<Index>(sa.size(), memory_source(sa), buffer_entries, counters);
    return parse_psv_first(text, phi_inv, counters);
}

Factorization factorize(TextView text, AnySuffixArray& any_sa, Algorithm algorithm,
                        std::size_t buffer_entries, ParseCounters* counters) {
    return std::visit(
        [&](auto& sa) -> Factorization {
            switch (algorithm) {
                case Algorithm::kkp3: return kkp3(text, sa, counters);
                case Algorithm::kkp3s: return kkp3_stackless(text, sa, counters);
                case Algorithm::kkp2s: return kkp2s(text, sa, counters).factorization;
                case Algorithm::kkp2n: return kkp2n(text, sa, counters).factorization;
                case Algorithm::kkp2b: return kkp2b(text, sa, buffer_entries, counters);
            }
            throw ArgumentError("unknown algorithm");
        },
        any_sa);
}

Factorization factorize_streaming(TextView text, SaStream& source, Algorithm algorithm,
                                  std::size_t buffer_entries, ParseCounters* counters) {
    if (consumes_sa(algorithm)) {
        throw ArgumentError(std::string(algorithm_name(algorithm)) +
                            " keeps its stack in the suffix array and cannot stream it");
    }
    if (algorithm == Algorithm::kkp2b && buffer_entries < 2) {
        throw ArgumentError("kkp2b needs a stack buffer of at least 2 entries");
    }
    if (index_width_for(text.size()) == 4) {
        return stream_with<std::uint32_t>(text, source, algorithm, buffer_entries, counters);
    }
    return stream_with<std::uint64_t>(text, source, algorithm, buffer_entries, counters);
}

#define LZKKP_INSTANTIATE(I)                                                                     \
    template SmallerValueArrays<I> kkp3_smaller_values<I>(SuffixArray<I>&, ParseCounters*);     \
    template Factorization kkp3<I>(TextView, SuffixArray<I>&, ParseCounters*);                  \
    template Factorization kkp3_stackless<I>(TextView, const SuffixArray<I>&, ParseCounters*);  \
    template FactorizationWithPhi<I> kkp2s<I>(TextView, SuffixArray<I>&, ParseCounters*);       \
    template FactorizationWithPhi<I> kkp2n<I>(TextView, const SuffixArray<I>&, ParseCounters*); \
    template Factorization kkp2b<I>(TextView, const SuffixArray<I>&, std::size_t,               \
                                    ParseCounters*);
LZKKP_INSTANTIATE(std::uint32_t)
LZKKP_INSTANTIATE(std::uint64_t)
#undef LZKKP_INSTANTIATE

}  // namespace lzkkp
