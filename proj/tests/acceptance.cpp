// Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//
//   acceptance            run criteria 1-10
//   acceptance 2 7        run only the listed criteria
//
// Criterion 10 reads LZKKP_CORPUS_DIR and is skipped when it is unset or
// holds none of the corpus files.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lzkkp/formats.hpp"
#include "lzkkp/kkp.hpp"
#include "lzkkp/oracles.hpp"
#include "lzkkp/suffix_array.hpp"
#include "test_support.hpp"

using namespace lzkkp;
namespace fs = std::filesystem;

namespace {

using Sa = SuffixArray32;
using Outcome = std::optional<std::string>;  // nullopt: pass; otherwise the reason

struct Skip {
    std::string why;
};

const Factorization kWorked({Factor::literal('z'), Factor::copy(1, 4), Factor::literal('i'),
                             Factor::literal('p'), Factor::copy(5, 3)},
                            10);

// The randomized corpus shared by criteria 3, 5 and 6.
const std::vector<Text>& random_corpus() {
    static const std::vector<Text> corpus = [] {
        std::mt19937_64 rng(20241016);
        const unsigned sigmas[] = {1, 2, 4, 26, 256};
        std::vector<Text> out;
        for (int k = 0; k < 1000; ++k) {
            std::uniform_int_distribution<std::size_t> len(1, 10000);
            out.push_back(test::random_text(rng, len(rng), sigmas[k % 5]));
        }
        return out;
    }();
    return corpus;
}

std::vector<Text> adversarial_runs() {
    std::vector<Text> out;
    for (std::size_t n : {1, 2, 3, 10, 100, 1000, 4097, 65536, 300000, 1 << 20}) {
        out.push_back(test::a_run_then_b(n));
    }
    return out;
}

Outcome check_against_oracle(const Text& t, const Sa& sa) {
    const Factorization oracle = oracle::brute_lz(t);
    for (const auto& [name, f] : test::run_all(t.view(), sa)) {
        if (auto why = test::agrees_with_oracle(f, oracle, t); !why.empty()) {
            return name + ": " + why;
        }
        if (decode(f) != t) return name + ": decode differs from the input";
    }
    return std::nullopt;
}

std::string describe(const Text& t) {
    std::string s(t.view().begin(), t.view().begin() + std::min<std::size_t>(t.size(), 24));
    for (char& c : s) {
        if (c < 0x20 || c > 0x7e) c = '?';
    }
    return "n=" + std::to_string(t.size()) + " \"" + s + (t.size() > 24 ? "...\"" : "\"");
}

// 1. Worked example across every configuration.
Outcome worked_example() {
    const TextView x = as_text("zzzzzipzip");
    const Sa sa = build_sa_fast<std::uint32_t>(x);
    for (const auto& [name, f] : test::run_all(x, sa, {2, 65536})) {
        if (f != kWorked) return name + " gave a different factorization";
    }
    return std::nullopt;
}

// 2. Every short string over {a,b} and {a,b,c}.
Outcome exhaustive() {
    Outcome result;
    std::size_t count = 0;
    auto visit = [&](const Text& t) {
        if (result) return;
        ++count;
        if (auto why = check_against_oracle(t, build_sa_fast<std::uint32_t>(t))) {
            result = describe(t) + ": " + *why;
        }
    };
    test::for_each_string(12, 2, visit);
    test::for_each_string(8, 3, visit);
    if (!result && count != 8191 + 9841) return "visited " + std::to_string(count) + " strings";
    return result;
}

// 3. Random strings, including the NSV/PSV arrays kkp3 builds.
Outcome randomized() {
    for (const Text& t : random_corpus()) {
        const Sa sa = build_sa_fast<std::uint32_t>(t);
        if (auto why = check_against_oracle(t, sa)) return describe(t) + ": " + *why;
        const auto expected = oracle::brute_nsv_psv(sa);
        Sa work = sa;
        const auto sv = kkp3_smaller_values(work);
        for (std::size_t i = 1; i <= t.size(); ++i) {
            if (sv.psv(i) != expected.psv[i] || sv.nsv(i) != expected.nsv[i]) {
                return describe(t) + ": kkp3 NSV/PSV differ at " + std::to_string(i);
            }
        }
    }
    return std::nullopt;
}

// Deterministic >= 64 MiB sample of real files from the system.
std::optional<fs::path> build_real_file(const fs::path& dir) {
    constexpr std::uintmax_t kTarget = std::uintmax_t{64} << 20;
    std::vector<fs::path> files;
    for (const char* root : {"/usr/lib", "/usr/share", "/usr/include", "/usr/bin"}) {
        std::error_code ec;
        for (auto it = fs::recursive_directory_iterator(
                 root, fs::directory_options::skip_permission_denied, ec);
             !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
            if (it->is_regular_file(ec) && !it->is_symlink(ec)) files.push_back(it->path());
        }
    }
    std::sort(files.begin(), files.end());
    const fs::path out_path = dir / "real.bin";
    std::ofstream out(out_path, std::ios::binary);
    std::uintmax_t written = 0;
    for (const auto& p : files) {
        if (written >= kTarget) break;
        std::ifstream in(p, std::ios::binary);
        if (!in) continue;
        out << in.rdbuf();
        out.clear();
        written = static_cast<std::uintmax_t>(out.tellp());
    }
    out.close();
    if (written < kTarget) return std::nullopt;
    fs::resize_file(out_path, kTarget);
    return out_path;
}

// 4. Round trip on a large real file, through both output formats.
Outcome round_trip() {
    test::TempDir dir;
    const auto path = build_real_file(dir.path());
    if (!path) return "could not collect 64 MiB of system files";
    const Text t = read_text_file(*path);
    const Sa sa = build_sa_fast<std::uint32_t>(t);
    std::printf("    real file: %zu bytes, sigma=%zu\n", t.size(), alphabet_size(t));
    std::optional<Factorization> first;
    for (const auto& [name, f] : test::run_all(t.view(), sa, {kDefaultBufferEntries})) {
        if (decode(f) != t) return name + ": decode differs";
        if (first && f != *first) return name + ": differs from kkp3";
        if (!first) first = f;
    }
    std::printf("    z=%zu n/z=%s\n", first->size(), format_ratio(stats(*first)).c_str());
    for (FactorFormat fmt : {FactorFormat::text, FactorFormat::binary}) {
        write_factors_file(dir / "f", *first, fmt);
        if (decode(read_factors_file(dir / "f")) != t) {
            return std::string(fmt == FactorFormat::text ? "text" : "binary") +
                   " file does not decode to the input";
        }
    }
    // The earlier criteria decode every other input as well.
    for (const Text& r : random_corpus()) {
        const Sa rs = build_sa_fast<std::uint32_t>(r);
        if (decode(kkp3_stackless(r, rs)) != r) return describe(r) + ": decode differs";
    }
    return std::nullopt;
}

// 5. kkp2s returns Phi.
Outcome phi_side_effect() {
    for (const Text& t : random_corpus()) {
        Sa sa = build_sa_fast<std::uint32_t>(t);
        const auto phi = build_phi(sa);
        if (kkp2s(t, sa).phi != phi) return describe(t) + ": returned array differs from Phi";
    }
    return std::nullopt;
}

// 6. The SA is bit-identical after kkp2n and kkp3s.
Outcome non_destructive() {
    auto check = [](const Text& t) -> Outcome {
        const Sa sa = build_sa_fast<std::uint32_t>(t);
        Sa work = sa;
        kkp2n(t, work);
        if (!std::ranges::equal(work.slots(), sa.slots())) return describe(t) + ": kkp2n wrote SA";
        kkp3_stackless(t, work);
        if (!std::ranges::equal(work.slots(), sa.slots())) return describe(t) + ": kkp3s wrote SA";
        kkp2b(t, work, 2);
        if (!std::ranges::equal(work.slots(), sa.slots())) return describe(t) + ": kkp2b wrote SA";
        return std::nullopt;
    };
    for (const Text& t : random_corpus()) {
        if (auto why = check(t)) return why;
    }
    for (const Text& t : adversarial_runs()) {
        if (auto why = check(t)) return why;
    }
    return std::nullopt;
}

// 7. kkp2b output does not depend on the buffer size.
Outcome buffer_independence() {
    const std::size_t sizes[] = {2, 3, 4, 8, 64, 1024, 65536, std::size_t{1} << 20};
    std::vector<Text> inputs(random_corpus().begin(), random_corpus().begin() + 100);
    for (Text& t : adversarial_runs()) inputs.push_back(std::move(t));
    for (const Text& t : inputs) {
        const Sa sa = build_sa_fast<std::uint32_t>(t);
        const Factorization ref = kkp2b(t, sa, sizes[0]);
        if (decode(ref) != t) return describe(t) + ": decode differs";
        for (std::size_t b : sizes) {
            if (kkp2b(t, sa, b) != ref) return describe(t) + ": buffer " + std::to_string(b);
        }
    }
    return std::nullopt;
}

// Counts reads from an underlying stream.
class CountingStream final : public SaStream {
public:
    explicit CountingStream(SaStream& inner) : inner_(inner) {}
    bool next(std::uint64_t& v) override {
        const bool ok = inner_.next(v);
        if (ok) ++reads_;
        return ok;
    }
    std::uint64_t reads() const { return reads_; }

private:
    SaStream& inner_;
    std::uint64_t reads_ = 0;
};

// 8. Streaming reads every SA entry exactly once, straight from a file.
Outcome single_pass() {
    test::TempDir dir;
    std::vector<Text> inputs = {Text("zzzzzipzip")};
    for (std::size_t k = 0; k < 50; ++k) inputs.push_back(random_corpus()[k]);
    inputs.push_back(test::a_run_then_b(100000));
    for (const Text& t : inputs) {
        const Sa sa = build_sa_fast<std::uint32_t>(t);
        write_sa_file(dir / "x.sa", AnySuffixArray(sa));
        const Factorization ref = kkp3_stackless(t, sa);
        for (Algorithm a : {Algorithm::kkp3s, Algorithm::kkp2n, Algorithm::kkp2b}) {
            SaFileStream file(dir / "x.sa", 1024);
            CountingStream counting(file);
            ParseCounters c;
            const Factorization f = factorize_streaming(t, counting, a, 8, &c);
            const std::string who = describe(t) + " " + std::string(algorithm_name(a));
            if (counting.reads() != t.size()) {
                return who + ": " + std::to_string(counting.reads()) + " reads";
            }
            if (c.sa_reads != t.size()) return who + ": counter says " + std::to_string(c.sa_reads);
            if (f != ref) return who + ": differs from the in-memory parse";
        }
    }
    return std::nullopt;
}

// 9. Time grows linearly from 2^25 to 2^26, comparisons stay within 3n.
Outcome linearity() {
    constexpr int kReps = 5;
    std::mt19937_64 rng(99);
    const Text big = test::random_text(rng, std::size_t{1} << 26, 256);
    const Text half(std::vector<Byte>(big.view().begin(), big.view().begin() + (1 << 25)));

    auto median_time = [&](const Text& t, const Sa& sa, Algorithm a, std::string& err) {
        std::vector<double> times;
        for (int r = 0; r < kReps; ++r) {
            // Destructive algorithms get a fresh copy, outside the timed region.
            std::optional<Sa> work;
            if (consumes_sa(a)) work.emplace(sa);
            ParseCounters c;
            const auto t0 = std::chrono::steady_clock::now();
            Factorization f;
            switch (a) {
                case Algorithm::kkp3: f = kkp3(t, *work, &c); break;
                case Algorithm::kkp3s: f = kkp3_stackless(t, sa, &c); break;
                case Algorithm::kkp2s: f = kkp2s(t, *work, &c).factorization; break;
                case Algorithm::kkp2n: f = kkp2n(t, sa, &c).factorization; break;
                case Algorithm::kkp2b: f = kkp2b(t, sa, kDefaultBufferEntries, &c); break;
            }
            times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                                .count());
            if (c.comparisons > 3 * t.size()) {
                err = std::string(algorithm_name(a)) + ": " + std::to_string(c.comparisons) +
                      " comparisons > 3n";
            }
        }
        std::sort(times.begin(), times.end());
        return times[kReps / 2];
    };

    const Sa sa_half = build_sa_fast<std::uint32_t>(half);
    const Sa sa_big = build_sa_fast<std::uint32_t>(big);
    Outcome result;
    for (Algorithm a : {Algorithm::kkp3, Algorithm::kkp3s, Algorithm::kkp2s, Algorithm::kkp2n,
                        Algorithm::kkp2b}) {
        std::string err;
        const double t1 = median_time(half, sa_half, a, err);
        const double t2 = median_time(big, sa_big, a, err);
        const double ratio = t2 / t1;
        std::printf("    %-6s 2^25: %.3fs  2^26: %.3fs  ratio %.2f\n",
                    std::string(algorithm_name(a)).c_str(), t1, t2, ratio);
        std::fflush(stdout);
        if (!err.empty() && !result) result = err;
        if (ratio > 2.5 && !result) {
            result = std::string(algorithm_name(a)) + ": time ratio " + std::to_string(ratio);
        }
    }
    return result;
}

// 10. Average phrase length on the optional corpus.
Outcome corpus() {
    const char* dir = std::getenv("LZKKP_CORPUS_DIR");
    if (!dir || !*dir) throw Skip{"LZKKP_CORPUS_DIR not set"};
    constexpr std::uint64_t kPrefix = std::uint64_t{150} << 20;
    const std::pair<const char*, double> expected[] = {
        {"english", 13.77}, {"dna", 14.65}, {"sources", 17.67}};
    std::size_t found = 0;
    Outcome result;
    for (const auto& [name, want] : expected) {
        std::optional<fs::path> path;
        std::error_code ec;
        for (const auto& e : fs::directory_iterator(dir, ec)) {
            const std::string fn = e.path().filename().string();
            if (fn == name || fn.rfind(std::string(name) + ".", 0) == 0) {
                if (!path || fn == name) path = e.path();
            }
        }
        if (!path) continue;
        ++found;
        Text full = read_text_file(*path);
        const Text t = full.size() > kPrefix
                           ? Text(std::vector<Byte>(full.view().begin(), full.view().begin() + kPrefix))
                           : std::move(full);
        const Sa sa = build_sa_fast<std::uint32_t>(t);
        const double got = *stats(kkp2b(t, sa, kDefaultBufferEntries)).n_over_z;
        std::printf("    %-8s n=%zu n/z=%.2f (expected %.2f)\n", name, t.size(), got, want);
        if (std::abs(got - want) > 0.01 + 1e-9 && !result) {
            result = std::string(name) + ": n/z " + std::to_string(got);
        }
    }
    if (!found) throw Skip{"no corpus files in " + std::string(dir)};
    return result;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "worked example, every algorithm", worked_example},
        {2, "exhaustive oracle equivalence ({a,b}^<=12, {a,b,c}^<=8)", exhaustive},
        {3, "randomized oracle equivalence incl. NSV/PSV arrays", randomized},
        {4, "round trip incl. a 64 MiB real file", round_trip},
        {5, "kkp2s returns Phi", phi_side_effect},
        {6, "kkp2n/kkp3s leave the SA bit-identical", non_destructive},
        {7, "kkp2b independent of buffer size", buffer_independence},
        {8, "streaming reads exactly n SA entries", single_pass},
        {9, "linear time 2^25 -> 2^26 (ratio <= 2.5), comparisons <= 3n", linearity},
        {10, "corpus n/z (optional)", corpus},
    };
    std::set<int> wanted;
    for (int k = 1; k < argc; ++k) wanted.insert(std::atoi(argv[k]));

    int failures = 0;
    for (const Criterion& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        std::string skip;
        try {
            outcome = c.run();
        } catch (const Skip& s) {
            skip = s.why;
        } catch (const std::exception& e) {
            outcome = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!skip.empty()) {
            std::printf("[SKIP] criterion %d: %s (%s)\n", c.id, c.title, skip.c_str());
        } else if (outcome) {
            ++failures;
            std::printf("[FAIL] criterion %d: %s: %s\n", c.id, c.title, outcome->c_str());
        } else {
            std::printf("[PASS] criterion %d: %s (%.1fs)\n", c.id, c.title, secs);
        }
        std::fflush(stdout);
    }
    return failures ? 1 : 0;
}
