#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "lzkkp/error.hpp"
#include "lzkkp/suffix_array.hpp"
#include "test_support.hpp"

using namespace lzkkp;

namespace {

template <IndexType I>
std::vector<I> entries_of(const SuffixArray<I>& sa) {
    return {sa.entries().begin(), sa.entries().end()};
}

// Sortedness by direct pairwise comparison of suffixes.
bool strictly_sorted(TextView text, const SuffixArray32& sa) {
    for (std::size_t k = 1; k < sa.size(); ++k) {
        const auto a = text.subspan(sa[k] - 1), b = text.subspan(sa[k + 1] - 1);
        if (!std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("naive builder on small inputs") {
    CHECK(entries_of(build_sa_naive<std::uint32_t>(as_text("aaa"))) ==
          std::vector<std::uint32_t>{3, 2, 1});
    CHECK(build_sa_naive<std::uint32_t>(as_text("")).size() == 0);
    const TextView x = as_text("zzzzzipzip");
    const auto sa = build_sa_naive<std::uint32_t>(x);
    CHECK(strictly_sorted(x, sa));
    // "ipzip" < "ip" is false: "ip" (9) sorts first.
    CHECK(entries_of(sa) == std::vector<std::uint32_t>{9, 6, 10, 7, 8, 5, 4, 3, 2, 1});
}

TEST_CASE("sentinel slots are part of the allocation") {
    auto sa = build_sa_fast<std::uint32_t>(as_text("banana"));
    CHECK(sa.slots().size() == 8);
    CHECK(sa[0] == 0);
    CHECK(sa[7] == 0);
}

TEST_CASE("fast builder equals naive builder exhaustively over {a,b} up to length 10") {
    std::size_t count = 0;
    test::for_each_string(10, 2, [&](const Text& t) {
        ++count;
        REQUIRE(build_sa_fast<std::uint32_t>(t) == build_sa_naive<std::uint32_t>(t));
    });
    CHECK(count == 2047);
}

TEST_CASE("fast builder equals naive builder on random strings") {
    std::mt19937_64 rng(42);
    const unsigned sigmas[] = {1, 2, 3, 4, 26, 256};
    for (int k = 0; k < 1000; ++k) {
        const Text t = test::random_text(rng, rng() % 4097, sigmas[k % 6]);
        const auto fast = build_sa_fast<std::uint32_t>(t);
        REQUIRE(fast == build_sa_naive<std::uint32_t>(t));
    }
}

TEST_CASE("fast builder on (ab)^k and 64-bit width") {
    for (std::size_t k : {1, 2, 5, 50, 333}) {
        std::string s;
        for (std::size_t j = 0; j < k; ++j) s += "ab";
        const TextView t = as_text(s);
        const auto sa = build_sa_fast<std::uint32_t>(t);
        CHECK(sa == build_sa_naive<std::uint32_t>(t));
        // All suffixes starting with 'a' (odd positions) come first, the
        // shortest first.
        for (std::size_t r = 1; r <= k; ++r) CHECK(sa[r] == 2 * (k - r) + 1);
        for (std::size_t r = 1; r <= k; ++r) CHECK(sa[k + r] == 2 * (k - r) + 2);
        const auto sa64 = build_sa_fast<std::uint64_t>(t);
        CHECK(std::ranges::equal(sa64.entries(), sa.entries()));
    }
    CHECK(build_sa_fast<std::uint32_t>(as_text("")).size() == 0);
}

TEST_CASE("index width selection") {
    CHECK(index_width_for(0) == 4);
    CHECK(index_width_for((std::uint64_t{1} << 31) - 1) == 4);
    CHECK(index_width_for(std::uint64_t{1} << 31) == 8);
    CHECK(std::holds_alternative<SuffixArray32>(build_suffix_array(as_text("abc"))));
}

TEST_CASE("inverse suffix array") {
    const auto a = SuffixArray32::from_entries(std::vector<std::uint32_t>{3, 2, 1});
    CHECK(build_isa(a) == std::vector<std::uint32_t>{0, 3, 2, 1});
    const auto b = SuffixArray32::from_entries(std::vector<std::uint32_t>{2, 3, 1});
    CHECK(build_isa(b) == std::vector<std::uint32_t>{0, 3, 1, 2});
    const auto bad = SuffixArray32::from_entries(std::vector<std::uint32_t>{2, 2, 1});
    CHECK_THROWS_AS(build_isa(bad), ValidationError);
    const auto range = SuffixArray32::from_entries(std::vector<std::uint32_t>{4, 2, 1});
    CHECK_THROWS_AS(build_isa(range), ValidationError);
}

TEST_CASE("property: isa inverts random permutations") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<std::uint32_t> p(rng() % 300);
        std::iota(p.begin(), p.end(), 1u);
        std::shuffle(p.begin(), p.end(), rng);
        const auto sa = SuffixArray32::from_entries(p);
        const auto isa = build_isa(sa);
        for (std::size_t k = 1; k <= p.size(); ++k) REQUIRE(isa[sa[k]] == k);
    }
}

TEST_CASE("phi for n = 1 and the worked example") {
    const auto one = SuffixArray32::from_entries(std::vector<std::uint32_t>{1});
    CHECK(build_phi(one) == PhiArray<std::uint32_t>{1, 0});

    const TextView x = as_text("zzzzzipzip");
    const auto sa = build_sa_fast<std::uint32_t>(x);
    const auto phi = build_phi(sa);
    // One cycle through all of 0..n.
    std::vector<bool> seen(phi.size(), false);
    std::size_t v = 0, steps = 0;
    do {
        REQUIRE_FALSE(seen[v]);
        seen[v] = true;
        v = phi[v];
        ++steps;
    } while (v != 0);
    CHECK(steps == x.size() + 1);
    CHECK(build_phi(SuffixArray32()) == PhiArray<std::uint32_t>{0});
}

TEST_CASE("property: following phi from 0 lists suffixes in descending order") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const Text t = test::random_text(rng, 1 + rng() % 300, 1 + rng() % 5);
        const auto phi = build_phi(build_sa_fast<std::uint32_t>(t));
        std::vector<std::size_t> order;
        for (std::size_t v = phi[0]; v != 0; v = phi[v]) order.push_back(v);
        REQUIRE(order.size() == t.size());
        std::vector<std::size_t> sorted(t.size());
        std::iota(sorted.begin(), sorted.end(), std::size_t{1});
        std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
            const auto sa_ = t.view().subspan(a - 1), sb = t.view().subspan(b - 1);
            return std::lexicographical_compare(sb.begin(), sb.end(), sa_.begin(), sa_.end());
        });
        REQUIRE(order == sorted);
    }
}

TEST_CASE("validate_sa") {
    const TextView x = as_text("zzzzzipzip");
    auto sa = build_sa_fast<std::uint32_t>(x);
    CHECK_FALSE(validate_sa(x, sa).has_value());

    SUBCASE("duplicate entry") {
        auto bad = sa;
        bad[4] = bad[3];
        const auto d = validate_sa(x, bad);
        REQUIRE(d.has_value());
        CHECK(d->index == 4);
        CHECK(d->message == "not a permutation at 4");
    }
    SUBCASE("swapped adjacent entries") {
        for (std::size_t k = 1; k < x.size(); ++k) {
            auto bad = sa;
            std::swap(bad[k], bad[k + 1]);
            const auto d = validate_sa(x, bad);
            REQUIRE(d.has_value());
            CHECK(d->message.starts_with("order violated at "));
            CHECK(d->index <= k);
        }
    }
    SUBCASE("length mismatch") {
        CHECK(validate_sa(as_text("zzzzzipzi"), sa).has_value());
    }
}

TEST_CASE("validate_sa above the full-check threshold samples pairs") {
    std::mt19937_64 rng(5);
    const Text t = test::random_text(rng, kFullValidationLimit + 1000, 4);
    auto sa = build_sa_fast<std::uint32_t>(t);
    CHECK_FALSE(validate_sa(t, sa).has_value());
    // Swapping every other adjacent pair breaks about half of all pairs, so
    // the sample cannot miss it.
    for (std::size_t k = 1; k + 1 <= t.size(); k += 2) std::swap(sa[k], sa[k + 1]);
    const auto d = validate_sa(t, sa);
    REQUIRE(d.has_value());
    CHECK(d->message.starts_with("order violated"));
}
