// lzkkp: LZ77 factorization from the command line.
//
//   lzkkp factorize|stats|verify|bench --algo <name> --input <path>
//         [--sa <path>] [--sa-stream] [--buffer <entries>]
//         [--output <path>] [--format text|binary|none] [--reps <k>]
//
// Exit status: 0 success, 1 verification failure, 2 I/O, format or usage
// errors.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bench_util.hpp"
#include "lzkkp/lzkkp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitError = 2;

struct TextFree {
    void operator()(lzkkp_text* p) const { lzkkp_text_free(p); }
};
struct SaFree {
    void operator()(lzkkp_sa* p) const { lzkkp_sa_free(p); }
};
struct FactFree {
    void operator()(lzkkp_factorization* p) const { lzkkp_fact_free(p); }
};
using TextPtr = std::unique_ptr<lzkkp_text, TextFree>;
using SaPtr = std::unique_ptr<lzkkp_sa, SaFree>;
using FactPtr = std::unique_ptr<lzkkp_factorization, FactFree>;

// Carries a failed status up to main().
class CliError : public std::runtime_error {
public:
    CliError(int code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    int code() const { return code_; }

private:
    int code_;
};

void check(lzkkp_status s, const std::string& what) {
    if (s == LZKKP_OK) return;
    throw CliError(kExitError, what + ": " + lzkkp_status_string(s) + ": " + lzkkp_last_error());
}

struct RunConfig {
    std::vector<std::string> inputs;
    std::string algo = "kkp2b";
    std::string sa_path;
    bool sa_stream = false;
    std::size_t buffer = LZKKP_DEFAULT_BUFFER_ENTRIES;
    std::string output;
    std::string format = "text";
    std::string factors_path;
    int reps = 5;
};

bool destructive(lzkkp_algorithm a) { return a == LZKKP_KKP3 || a == LZKKP_KKP2S; }

lzkkp_algorithm algorithm_of(const RunConfig& cfg) {
    lzkkp_algorithm a;
    check(lzkkp_algorithm_from_name(cfg.algo.c_str(), &a), "--algo");
    if (cfg.sa_stream) {
        if (cfg.sa_path.empty()) throw CliError(kExitError, "--sa-stream needs --sa <path>");
        if (destructive(a)) {
            throw CliError(kExitError, cfg.algo + " overwrites the suffix array and cannot stream it;"
                                                  " use kkp3s, kkp2n or kkp2b");
        }
    }
    return a;
}

const std::string& single_input(const RunConfig& cfg) {
    if (cfg.inputs.size() != 1) throw CliError(kExitError, "exactly one --input is required");
    return cfg.inputs.front();
}

TextPtr load_text(const std::string& path) {
    lzkkp_text* t = nullptr;
    check(lzkkp_text_from_file(path.c_str(), &t), path);
    return TextPtr(t);
}

// Loads the SA from the cache file when it exists and matches the text,
// otherwise builds it (and fills the cache if a path was given).
SaPtr obtain_sa(const lzkkp_text* text, const std::string& cache) {
    lzkkp_sa* sa = nullptr;
    if (!cache.empty() && std::filesystem::exists(cache)) {
        check(lzkkp_sa_load(cache.c_str(), &sa), cache);
        SaPtr owned(sa);
        uint64_t n = 0;
        check(lzkkp_sa_length(sa, &n), cache);
        if (n != lzkkp_text_length(text)) {
            throw CliError(kExitError, cache + ": suffix array is for n=" + std::to_string(n) +
                                           ", input has n=" +
                                           std::to_string(lzkkp_text_length(text)));
        }
        return owned;
    }
    check(lzkkp_sa_build(text, &sa), "building suffix array");
    SaPtr owned(sa);
    if (!cache.empty()) check(lzkkp_sa_save(sa, cache.c_str()), cache);
    return owned;
}

struct Run {
    FactPtr factors;
    lzkkp_counters counters{};
    double seconds = 0;
};

// One factorization of `text`. The SA is taken from (or cached to)
// cfg.sa_path; in streaming mode it is read from that file during the run.
Run factorize_once(const RunConfig& cfg, lzkkp_algorithm algo, const lzkkp_text* text,
                   lzkkp_sa* sa) {
    Run run;
    lzkkp_factorization* f = nullptr;
    const auto t0 = std::chrono::steady_clock::now();
    if (cfg.sa_stream) {
        check(lzkkp_factorize_stream(text, cfg.sa_path.c_str(), algo, cfg.buffer, &f, &run.counters),
              "factorize");
    } else {
        check(lzkkp_factorize(text, sa, algo, cfg.buffer, LZKKP_CONSUME_SA, &f, &run.counters),
              "factorize");
    }
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    run.factors.reset(f);
    return run;
}

SaPtr prepare_sa(const RunConfig& cfg, const lzkkp_text* text) {
    if (cfg.sa_stream) {
        // Make sure the file exists; the run itself streams it.
        if (!std::filesystem::exists(cfg.sa_path)) obtain_sa(text, cfg.sa_path);
        return nullptr;
    }
    return obtain_sa(text, cfg.sa_path);
}

std::string ratio_string(const lzkkp_factorization* f) {
    uint64_t z = 0;
    double r = 0;
    lzkkp_fact_stats(f, &z, &r);
    return std::isnan(r) ? "-" : lzkkp::tools::fixed2(r);
}

void print_summary(std::FILE* to, const RunConfig& cfg, const lzkkp_factorization* f,
                   const Run& run) {
    uint64_t z = 0;
    lzkkp_fact_stats(f, &z, nullptr);
    std::fprintf(to, "algorithm=%s\n", cfg.algo.c_str());
    std::fprintf(to, "n=%llu\n", static_cast<unsigned long long>(lzkkp_fact_source_length(f)));
    std::fprintf(to, "z=%llu\n", static_cast<unsigned long long>(z));
    std::fprintf(to, "n/z=%s\n", ratio_string(f).c_str());
    std::fprintf(to, "time_s=%.6f\n", run.seconds);
    std::fprintf(to, "comparisons=%llu\n", static_cast<unsigned long long>(run.counters.comparisons));
    std::fprintf(to, "peak_rss_kib=%ld (measured)\n", lzkkp::tools::peak_rss_kib());
}

int run_factorize(const RunConfig& cfg) {
    const lzkkp_algorithm algo = algorithm_of(cfg);
    TextPtr text = load_text(single_input(cfg));
    SaPtr sa = prepare_sa(cfg, text.get());
    Run run = factorize_once(cfg, algo, text.get(), sa.get());

    std::FILE* summary = stdout;
    if (cfg.format == "none") {
    } else if (cfg.output.empty() || cfg.output == "-") {
        if (cfg.format != "text") throw CliError(kExitError, "binary output needs --output <path>");
        check(lzkkp_fact_write_text(
                  run.factors.get(),
                  [](const char* d, size_t len, void*) { std::fwrite(d, 1, len, stdout); }, nullptr),
              "writing factors");
        std::fflush(stdout);
        summary = stderr;
    } else {
        check(lzkkp_fact_save(run.factors.get(), cfg.output.c_str(),
                              cfg.format == "binary" ? LZKKP_FORMAT_BINARY : LZKKP_FORMAT_TEXT),
              cfg.output);
    }
    print_summary(summary, cfg, run.factors.get(), run);
    return kExitOk;
}

int run_verify(const RunConfig& cfg) {
    TextPtr text = load_text(single_input(cfg));
    FactPtr factors;
    if (!cfg.factors_path.empty()) {
        lzkkp_factorization* f = nullptr;
        check(lzkkp_fact_load(cfg.factors_path.c_str(), &f), cfg.factors_path);
        factors.reset(f);
    } else {
        const lzkkp_algorithm algo = algorithm_of(cfg);
        SaPtr sa = prepare_sa(cfg, text.get());
        factors = factorize_once(cfg, algo, text.get(), sa.get()).factors;
    }
    int equal = 0;
    check(lzkkp_fact_verify(factors.get(), text.get(), &equal), "verify");
    if (equal) {
        std::printf("OK\n");
        return kExitOk;
    }
    const char* why = lzkkp_last_error();
    std::printf("MISMATCH%s%s\n", *why ? ": " : "", why);
    return kExitVerify;
}

int run_bench(const RunConfig& cfg) {
    if (cfg.reps < 1) throw CliError(kExitError, "--reps must be at least 1");
    const lzkkp_algorithm algo = algorithm_of(cfg);
    TextPtr text = load_text(single_input(cfg));
    SaPtr sa = prepare_sa(cfg, text.get());

    std::vector<double> times;
    uint64_t z = 0;
    for (int r = 0; r < cfg.reps; ++r) {
        // A fresh copy per run for the algorithms that overwrite SA; the copy
        // is not timed.
        SaPtr work;
        lzkkp_sa* target = sa.get();
        if (sa && destructive(algo)) {
            lzkkp_sa* c = nullptr;
            check(lzkkp_sa_clone(sa.get(), &c), "copying suffix array");
            work.reset(c);
            target = c;
        }
        Run run = factorize_once(cfg, algo, text.get(), target);
        times.push_back(run.seconds);
        lzkkp_fact_stats(run.factors.get(), &z, nullptr);
    }
    const double med = lzkkp::tools::median(times);
    const uint64_t n = lzkkp_text_length(text.get());
    std::printf("algorithm=%s\n", cfg.algo.c_str());
    std::printf("n=%llu\n", static_cast<unsigned long long>(n));
    std::printf("z=%llu\n", static_cast<unsigned long long>(z));
    std::printf("buffer=%zu\n", cfg.buffer);
    std::printf("reps=%d\n", cfg.reps);
    std::printf("runs_s=");
    for (std::size_t k = 0; k < times.size(); ++k) std::printf("%s%.6f", k ? "," : "", times[k]);
    std::printf("\nmedian_s=%.6f\n", med);
    std::printf("s_per_GiB=%.3f\n", lzkkp::tools::seconds_per_gib(med, n));
    std::printf("peak_rss_kib=%ld (measured)\n", lzkkp::tools::peak_rss_kib());
    return kExitOk;
}

int run_corpus_stats(const RunConfig& cfg) {
    if (cfg.inputs.empty()) throw CliError(kExitError, "stats needs at least one --input");
    const lzkkp_algorithm algo = algorithm_of(cfg);
    std::printf("%s\n", lzkkp::tools::corpus_header().c_str());
    int status = kExitOk;
    for (const std::string& path : cfg.inputs) {
        try {
            TextPtr text = load_text(path);
            lzkkp::tools::CorpusRow row;
            row.name = std::filesystem::path(path).filename().string();
            row.n = lzkkp_text_length(text.get());
            row.sigma = lzkkp_text_alphabet_size(text.get());
            SaPtr sa = obtain_sa(text.get(), "");
            lzkkp_factorization* f = nullptr;
            check(lzkkp_factorize(text.get(), sa.get(), algo, cfg.buffer, LZKKP_CONSUME_SA, &f,
                                  nullptr),
                  path);
            FactPtr owned(f);
            lzkkp_fact_stats(f, &row.z, nullptr);
            std::printf("%s\n", lzkkp::tools::corpus_line(row).c_str());
        } catch (const CliError& e) {
            std::fprintf(stderr, "lzkkp: %s\n", e.what());
            status = kExitError;
        }
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear time LZ77 factorization from a suffix array"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub, bool many_inputs) {
        if (many_inputs) {
            sub->add_option("--input,inputs", cfg.inputs, "Input files")->required();
        } else {
            sub->add_option("--input", cfg.inputs, "Input file")->required()->expected(1);
        }
        sub->add_option("--algo", cfg.algo, "kkp3, kkp3s, kkp2s, kkp2n or kkp2b")
            ->capture_default_str();
        sub->add_option("--buffer", cfg.buffer, "kkp2b stack buffer entries")
            ->capture_default_str()
            ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
    };
    auto sa_options = [&](CLI::App* sub) {
        sub->add_option("--sa", cfg.sa_path,
                        "Suffix array file; loaded if present, otherwise built and saved");
        sub->add_flag("--sa-stream", cfg.sa_stream,
                      "Stream the suffix array file in one pass instead of loading it");
    };

    CLI::App* fact = app.add_subcommand("factorize", "Compute and write the factorization");
    common(fact, false);
    sa_options(fact);
    fact->add_option("--output", cfg.output, "Output file (default: stdout, text format)");
    fact->add_option("--format", cfg.format, "text, binary or none")
        ->check(CLI::IsMember({"text", "binary", "none"}))
        ->capture_default_str();

    CLI::App* stats = app.add_subcommand("stats", "Per-file n, sigma, z and n/z");
    common(stats, true);

    CLI::App* verify = app.add_subcommand("verify", "Check that decoding reproduces the input");
    common(verify, false);
    sa_options(verify);
    verify->add_option("--factors", cfg.factors_path,
                       "Verify this factorization file instead of computing one");

    CLI::App* bench = app.add_subcommand("bench", "Median running time over repeated runs");
    common(bench, false);
    sa_options(bench);
    bench->add_option("--reps", cfg.reps, "Repetitions")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitError;
    }

    try {
        if (*fact) return run_factorize(cfg);
        if (*stats) return run_corpus_stats(cfg);
        if (*verify) return run_verify(cfg);
        if (*bench) return run_bench(cfg);
    } catch (const CliError& e) {
        std::fprintf(stderr, "lzkkp: %s\n", e.what());
        return e.code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "lzkkp: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
