#include "lzkkp/oracles.hpp"

#include "lzkkp/error.hpp"

namespace lzkkp::oracle {

Lpf brute_lpf(TextView text, std::uint64_t i) {
    const std::uint64_t n = text.size();
    if (i < 1 || i > n) {
        throw ArgumentError("brute_lpf: position " + std::to_string(i) + " outside [1.." +
                            std::to_string(n) + "]");
    }
    Lpf best{text[i - 1], 0};
    for (std::uint64_t p = 1; p < i; ++p) {
        std::uint64_t ell = 0;
        while (i + ell <= n && text[p - 1 + ell] == text[i - 1 + ell]) ++ell;
        if (ell > best.ell) best = {p, ell};
    }
    return best;
}

Factorization brute_lz(TextView text) {
    std::vector<Factor> factors;
    std::uint64_t i = 1;
    while (i <= text.size()) {
        const Lpf l = brute_lpf(text, i);
        if (l.ell == 0) {
            factors.push_back(Factor::literal(text[i - 1]));
            i += 1;
        } else {
            factors.push_back(Factor::copy(l.p, l.ell));
            i += l.ell;
        }
    }
    return Factorization(std::move(factors), text.size());
}

SmallerValues brute_nsv_psv(std::span<const std::uint64_t> sa) {
    const std::size_t n = sa.size();
    // SA[1..n] is sa[0..n-1] here.
    auto SA = [&](std::size_t k) { return sa[k - 1]; };

    std::vector<std::size_t> nsv_l(n + 1, 0), psv_l(n + 1, 0);
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t j = k + 1; j <= n; ++j) {
            if (SA(j) < SA(k)) {
                nsv_l[k] = j;
                break;
            }
        }
        for (std::size_t j = k - 1; j >= 1; --j) {
            if (SA(j) < SA(k)) {
                psv_l[k] = j;
                break;
            }
        }
    }

    std::vector<std::size_t> isa(n + 1, 0);
    for (std::size_t k = 1; k <= n; ++k) isa[SA(k)] = k;

    SmallerValues out;
    out.nsv.assign(n + 1, 0);
    out.psv.assign(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        if (nsv_l[isa[i]] != 0) out.nsv[i] = SA(nsv_l[isa[i]]);
        if (psv_l[isa[i]] != 0) out.psv[i] = SA(psv_l[isa[i]]);
    }
    return out;
}

}  // namespace lzkkp::oracle
