#include "lzkkp/lzkkp.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "lzkkp/error.hpp"
#include "lzkkp/formats.hpp"
#include "lzkkp/kkp.hpp"

struct lzkkp_text {
    lzkkp::Text text;
};

struct lzkkp_sa {
    std::optional<lzkkp::AnySuffixArray> sa;  // empty once consumed
};

struct lzkkp_factorization {
    lzkkp::Factorization f;
};

namespace {

thread_local std::string g_last_error;

lzkkp_status fail(lzkkp_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Runs `body`, translating exceptions to status codes.
template <class Body>
lzkkp_status guarded(Body&& body) noexcept {
    try {
        g_last_error.clear();
        return body();
    } catch (const lzkkp::ArgumentError& e) {
        return fail(LZKKP_E_ARGUMENT, e.what());
    } catch (const lzkkp::IoError& e) {
        return fail(LZKKP_E_IO, e.what());
    } catch (const lzkkp::FormatError& e) {
        return fail(LZKKP_E_FORMAT, e.what());
    } catch (const lzkkp::MalformedFactorization& e) {
        return fail(LZKKP_E_MALFORMED, e.what());
    } catch (const lzkkp::ValidationError& e) {
        return fail(LZKKP_E_VALIDATION, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LZKKP_E_NOMEM, "out of memory");
    } catch (const std::exception& e) {
        return fail(LZKKP_E_INTERNAL, e.what());
    } catch (...) {
        return fail(LZKKP_E_INTERNAL, "unknown error");
    }
}

lzkkp::Algorithm to_cpp(lzkkp_algorithm a) {
    switch (a) {
        case LZKKP_KKP3: return lzkkp::Algorithm::kkp3;
        case LZKKP_KKP3S: return lzkkp::Algorithm::kkp3s;
        case LZKKP_KKP2S: return lzkkp::Algorithm::kkp2s;
        case LZKKP_KKP2N: return lzkkp::Algorithm::kkp2n;
        case LZKKP_KKP2B: return lzkkp::Algorithm::kkp2b;
    }
    throw lzkkp::ArgumentError("unknown algorithm id " + std::to_string(static_cast<int>(a)));
}

lzkkp_algorithm to_c(lzkkp::Algorithm a) {
    switch (a) {
        case lzkkp::Algorithm::kkp3: return LZKKP_KKP3;
        case lzkkp::Algorithm::kkp3s: return LZKKP_KKP3S;
        case lzkkp::Algorithm::kkp2s: return LZKKP_KKP2S;
        case lzkkp::Algorithm::kkp2n: return LZKKP_KKP2N;
        case lzkkp::Algorithm::kkp2b: return LZKKP_KKP2B;
    }
    return LZKKP_KKP3;
}

const lzkkp::AnySuffixArray& live(const lzkkp_sa* sa) {
    if (!sa) throw lzkkp::ArgumentError("null suffix array handle");
    if (!sa->sa) throw std::logic_error("spent");
    return *sa->sa;
}

#define LZKKP_REQUIRE(cond, msg) \
    do {                         \
        if (!(cond)) return fail(LZKKP_E_ARGUMENT, msg); \
    } while (0)

#define LZKKP_REQUIRE_LIVE(sa) \
    do {                       \
        if ((sa) && !(sa)->sa) \
            return fail(LZKKP_E_STATE, "suffix array was consumed by a destructive algorithm"); \
    } while (0)

void copy_counters(const lzkkp::ParseCounters& c, lzkkp_counters* out) {
    if (out) *out = {c.comparisons, c.max_stack_depth, c.sa_reads};
}

}  // namespace

extern "C" {

const char* lzkkp_version(void) { return "1.0.0"; }

const char* lzkkp_last_error(void) { return g_last_error.c_str(); }

const char* lzkkp_status_string(lzkkp_status status) {
    switch (status) {
        case LZKKP_OK: return "ok";
        case LZKKP_E_ARGUMENT: return "invalid argument";
        case LZKKP_E_IO: return "i/o error";
        case LZKKP_E_FORMAT: return "format error";
        case LZKKP_E_MALFORMED: return "malformed factorization";
        case LZKKP_E_VALIDATION: return "validation failed";
        case LZKKP_E_STATE: return "handle already consumed";
        case LZKKP_E_NOMEM: return "out of memory";
        case LZKKP_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* lzkkp_algorithm_name(lzkkp_algorithm algorithm) {
    switch (algorithm) {
        case LZKKP_KKP3: return "kkp3";
        case LZKKP_KKP3S: return "kkp3s";
        case LZKKP_KKP2S: return "kkp2s";
        case LZKKP_KKP2N: return "kkp2n";
        case LZKKP_KKP2B: return "kkp2b";
    }
    return nullptr;
}

lzkkp_status lzkkp_algorithm_from_name(const char* name, lzkkp_algorithm* out) {
    LZKKP_REQUIRE(name && out, "null argument");
    return guarded([&] {
        *out = to_c(lzkkp::parse_algorithm(name));
        return LZKKP_OK;
    });
}

lzkkp_status lzkkp_text_from_memory(const uint8_t* data, size_t len, lzkkp_text** out) {
    LZKKP_REQUIRE(out && (data || len == 0), "null argument");
    return guarded([&] {
        std::vector<lzkkp::Byte> bytes(data, data + len);
        *out = new lzkkp_text{lzkkp::Text(std::move(bytes))};
        return LZKKP_OK;
    });
}

lzkkp_status lzkkp_text_from_file(const char* path, lzkkp_text** out) {
    LZKKP_REQUIRE(path && out, "null argument");
    return guarded([&] {
        *out = new lzkkp_text{lzkkp::read_text_file(path)};
        return LZKKP_OK;
    });
}

size_t lzkkp_text_length(const lzkkp_text* text) { return text ? text->text.size() : 0; }

const uint8_t* lzkkp_text_data(const lzkkp_text* text) {
    return text ? text->text.bytes().data() : nullptr;
}

size_t lzkkp_text_alphabet_size(const lzkkp_text* text) {
    return text ? lzkkp::alphabet_size(text->text) : 0;
}

void lzkkp_text_free(lzkkp_text* text) { delete text; }

lzkkp_status lzkkp_sa_build(const lzkkp_text* text, lzkkp_sa** out) {
    LZKKP_REQUIRE(text && out, "null argument");
    return guarded([&] {
        *out = new lzkkp_sa{lzkkp::build_suffix_array(text->text)};
        return LZKKP_OK;
    });
}

lzkkp_status lzkkp_sa_load(const char* path, lzkkp_sa** out) {
    LZKKP_REQUIRE(path && out, "null argument");
    return guarded([&] {
        *out = new lzkkp_sa{lzkkp::read_sa_file(path)};
        return LZKKP_OK;
    });
}

lzkkp_status lzkkp_sa_save(const lzkkp_sa* sa, const char* path) {
    LZKKP_REQUIRE(sa && path, "null argument");
    LZKKP_REQUIRE_LIVE(sa);
    return guarded([&] {
        lzkkp::write_sa_file(path, live(sa));
        return LZKKP_OK;
    });
}

lzkkp_status lzkkp_sa_clone(const lzkkp_sa* sa, lzkkp_sa** out) {
    LZKKP_REQUIRE(sa && out, "null argument");
    LZKKP_REQUIRE_LIVE(sa);
    return guarded([&] {
        *out = new lzkkp_sa{live(sa)};
        return LZKKP_OK;
    });
}

lzkkp_status lzkkp_sa_length(const lzkkp_sa* sa, uint64_t* out) {
    LZKKP_REQUIRE(sa && out, "null argument");
    LZKKP_REQUIRE_LIVE(sa);
    *out = lzkkp::size_of(*sa->sa);
    return LZKKP_OK;
}

lzkkp_status lzkkp_sa_width(const lzkkp_sa* sa, unsigned* out) {
    LZKKP_REQUIRE(sa && out, "null argument");
    LZKKP_REQUIRE_LIVE(sa);
    *out = sa->sa->index() == 0 ? 4u : 8u;
    return LZKKP_OK;
}

lzkkp_status lzkkp_sa_get(const lzkkp_sa* sa, uint64_t k, uint64_t* out) {
    LZKKP_REQUIRE(sa && out, "null argument");
    LZKKP_REQUIRE_LIVE(sa);
    const uint64_t n = lzkkp::size_of(*sa->sa);
    LZKKP_REQUIRE(k >= 1 && k <= n, "suffix array index out of range");
    *out = std::visit([&](const auto& s) -> uint64_t { return s[k]; }, *sa->sa);
    return LZKKP_OK;
}

lzkkp_status lzkkp_sa_validate(const lzkkp_text* text, const lzkkp_sa* sa, char* diagnostic,
                               size_t capacity) {
    LZKKP_REQUIRE(text && sa, "null argument");
    LZKKP_REQUIRE_LIVE(sa);
    return guarded([&] {
        const auto diag = lzkkp::validate_sa(text->text, live(sa));
        if (!diag) return LZKKP_OK;
        if (diagnostic && capacity > 0) {
            const size_t len = std::min(capacity - 1, diag->message.size());
            std::memcpy(diagnostic, diag->message.data(), len);
            diagnostic[len] = '\0';
        }
        return fail(LZKKP_E_VALIDATION, diag->message);
    });
}

void lzkkp_sa_free(lzkkp_sa* sa) { delete sa; }

lzkkp_status lzkkp_factorize(const lzkkp_text* text, lzkkp_sa* sa, lzkkp_algorithm algorithm,
                             size_t buffer_entries, unsigned flags, lzkkp_factorization** out,
                             lzkkp_counters* counters) {
    LZKKP_REQUIRE(text && sa && out, "null argument");
    LZKKP_REQUIRE_LIVE(sa);
    return guarded([&] {
        const lzkkp::Algorithm algo = to_cpp(algorithm);
        if (buffer_entries == 0) buffer_entries = lzkkp::kDefaultBufferEntries;
        lzkkp::ParseCounters c;
        lzkkp::Factorization f;
        if (lzkkp::consumes_sa(algo) && !(flags & LZKKP_CONSUME_SA)) {
            lzkkp::AnySuffixArray copy = *sa->sa;
            f = lzkkp::factorize(text->text, copy, algo, buffer_entries, &c);
        } else {
            f = lzkkp::factorize(text->text, *sa->sa, algo, buffer_entries, &c);
            if (lzkkp::consumes_sa(algo)) sa->sa.reset();
        }
        copy_counters(c, counters);
        *out = new lzkkp_factorization{std::move(f)};
        return LZKKP_OK;
    });
}

lzkkp_status lzkkp_factorize_stream(const lzkkp_text* text, const char* sa_path,
                                    lzkkp_algorithm algorithm, size_t buffer_entries,
                                    lzkkp_factorization** out, lzkkp_counters* counters) {
    LZKKP_REQUIRE(text && sa_path && out, "null argument");
    return guarded([&] {
        lzkkp::SaFileStream stream(sa_path);
        if (stream.length() != text->text.size()) {
            throw lzkkp::FormatError("suffix array file is for n=" +
                                     std::to_string(stream.length()) + ", text has n=" +
                                     std::to_string(text->text.size()));
        }
        if (buffer_entries == 0) buffer_entries = lzkkp::kDefaultBufferEntries;
        lzkkp::ParseCounters c;
        lzkkp::Factorization f =
            lzkkp::factorize_streaming(text->text, stream, to_cpp(algorithm), buffer_entries, &c);
        copy_counters(c, counters);
        *out = new lzkkp_factorization{std::move(f)};
        return LZKKP_OK;
    });
}

size_t lzkkp_fact_count(const lzkkp_factorization* f) { return f ? f->f.size() : 0; }

uint64_t lzkkp_fact_source_length(const lzkkp_factorization* f) {
    return f ? f->f.source_len() : 0;
}

lzkkp_status lzkkp_fact_get(const lzkkp_factorization* f, size_t k, lzkkp_factor* out) {
    LZKKP_REQUIRE(f && out, "null argument");
    LZKKP_REQUIRE(k < f->f.size(), "factor index out of range");
    const lzkkp::Factor& fac = f->f[k];
    if (fac.is_literal()) {
        *out = {1, fac.symbol(), 0, 0};
    } else {
        *out = {0, 0, fac.pos(), fac.len()};
    }
    return LZKKP_OK;
}

lzkkp_status lzkkp_fact_stats(const lzkkp_factorization* f, uint64_t* z, double* n_over_z) {
    LZKKP_REQUIRE(f, "null argument");
    const lzkkp::FactorizationStats s = lzkkp::stats(f->f);
    if (z) *z = s.z;
    if (n_over_z) *n_over_z = s.n_over_z.value_or(std::numeric_limits<double>::quiet_NaN());
    return LZKKP_OK;
}

lzkkp_status lzkkp_fact_decode(const lzkkp_factorization* f, lzkkp_text** out) {
    LZKKP_REQUIRE(f && out, "null argument");
    return guarded([&] {
        *out = new lzkkp_text{lzkkp::decode(f->f)};
        return LZKKP_OK;
    });
}

lzkkp_status lzkkp_fact_verify(const lzkkp_factorization* f, const lzkkp_text* text, int* equal) {
    LZKKP_REQUIRE(f && text && equal, "null argument");
    return guarded([&] {
        *equal = 0;
        try {
            *equal = lzkkp::decode(f->f) == text->text ? 1 : 0;
        } catch (const lzkkp::MalformedFactorization& e) {
            g_last_error = e.what();
        }
        return LZKKP_OK;
    });
}

lzkkp_status lzkkp_fact_save(const lzkkp_factorization* f, const char* path, lzkkp_format format) {
    LZKKP_REQUIRE(f && path, "null argument");
    LZKKP_REQUIRE(format == LZKKP_FORMAT_TEXT || format == LZKKP_FORMAT_BINARY, "bad format");
    return guarded([&] {
        lzkkp::write_factors_file(path, f->f,
                                  format == LZKKP_FORMAT_BINARY ? lzkkp::FactorFormat::binary
                                                                : lzkkp::FactorFormat::text);
        return LZKKP_OK;
    });
}

lzkkp_status lzkkp_fact_write_text(const lzkkp_factorization* f, lzkkp_write_fn write, void* user) {
    LZKKP_REQUIRE(f && write, "null argument");
    return guarded([&] {
        // Chunked so large factorizations never sit in memory twice.
        std::ostringstream chunk;
        std::size_t k = 0;
        while (k < f->f.size()) {
            const std::size_t end = std::min(f->f.size(), k + 4096);
            std::vector<lzkkp::Factor> part(f->f.begin() + k, f->f.begin() + end);
            chunk.str({});
            lzkkp::write_factors_text(chunk, lzkkp::Factorization(std::move(part), 0));
            const std::string s = chunk.str();
            write(s.data(), s.size(), user);
            k = end;
        }
        return LZKKP_OK;
    });
}

lzkkp_status lzkkp_fact_load(const char* path, lzkkp_factorization** out) {
    LZKKP_REQUIRE(path && out, "null argument");
    return guarded([&] {
        *out = new lzkkp_factorization{lzkkp::read_factors_file(path)};
        return LZKKP_OK;
    });
}

void lzkkp_fact_free(lzkkp_factorization* f) { delete f; }

}  // extern "C"
