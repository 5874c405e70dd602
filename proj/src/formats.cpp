#include "lzkkp/formats.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "lzkkp/error.hpp"

namespace lzkkp {

namespace {

void put_le(std::ostream& out, std::uint64_t v, unsigned width) {
    char b[8];
    for (unsigned k = 0; k < width; ++k) b[k] = static_cast<char>((v >> (8 * k)) & 0xff);
    out.write(b, width);
}

std::uint64_t get_le(const char* b, unsigned width) {
    std::uint64_t v = 0;
    for (unsigned k = 0; k < width; ++k) {
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[k])) << (8 * k);
    }
    return v;
}

// Reads exactly `len` bytes or reports how many arrived.
std::size_t read_some(std::istream& in, char* dst, std::size_t len) {
    in.read(dst, static_cast<std::streamsize>(len));
    return static_cast<std::size_t>(in.gcount());
}

struct Header {
    unsigned width;
    std::uint64_t n;
};

void write_header(std::ostream& out, const std::array<char, 8>& magic, unsigned width,
                  std::uint64_t n) {
    out.write(magic.data(), magic.size());
    out.put(static_cast<char>(width));
    put_le(out, n, 8);
}

Header read_header(std::istream& in, const std::array<char, 8>& magic, const char* what) {
    char h[kHeaderSize];
    if (read_some(in, h, kHeaderSize) != kHeaderSize) {
        throw FormatError(std::string(what) + ": truncated header");
    }
    if (!std::equal(magic.begin(), magic.end(), h)) {
        throw FormatError(std::string(what) + ": bad magic");
    }
    const unsigned width = static_cast<unsigned char>(h[8]);
    if (width != 4 && width != 8) {
        throw FormatError(std::string(what) + ": entry width " + std::to_string(width) +
                          " (expected 4 or 8)");
    }
    return {width, get_le(h + 9, 8)};
}

template <IndexType Index>
void write_entries(std::ostream& out, std::span<const Index> entries) {
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(entries.data()),
                  static_cast<std::streamsize>(entries.size_bytes()));
    } else {
        for (Index v : entries) put_le(out, v, sizeof(Index));
    }
}

template <IndexType Index>
SuffixArray<Index> read_entries(std::istream& in, std::uint64_t n) {
    std::vector<Index> entries;
    constexpr std::size_t kChunk = std::size_t{1} << 16;
    std::vector<char> buf(kChunk * sizeof(Index));
    while (entries.size() < n) {
        const std::size_t want = static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, n - entries.size()));
        const std::size_t got = read_some(in, buf.data(), want * sizeof(Index));
        if (got != want * sizeof(Index)) {
            throw FormatError("suffix array file: body holds " +
                              std::to_string(entries.size() + got / sizeof(Index)) + " of " +
                              std::to_string(n) + " entries");
        }
        for (std::size_t k = 0; k < want; ++k) {
            entries.push_back(static_cast<Index>(get_le(buf.data() + k * sizeof(Index), sizeof(Index))));
        }
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw FormatError("suffix array file: trailing bytes after " + std::to_string(n) +
                          " entries");
    }
    return SuffixArray<Index>::from_entries(entries);
}

std::uint64_t parse_number(std::string_view s, std::size_t line) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw FormatError("line " + std::to_string(line) + ": '" + std::string(s) +
                          "' is not a number");
    }
    return v;
}

Byte unescape(std::string_view s, std::size_t line) {
    if (s.size() == 1 && s[0] != '\\') return static_cast<Byte>(s[0]);
    if (s == "\\\\") return '\\';
    if (s.size() == 4 && s[0] == '\\' && s[1] == 'x') {
        unsigned v = 0;
        auto [ptr, ec] = std::from_chars(s.data() + 2, s.data() + 4, v, 16);
        if (ec == std::errc() && ptr == s.data() + 4) return static_cast<Byte>(v);
    }
    throw FormatError("line " + std::to_string(line) + ": bad literal '" + std::string(s) + "'");
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + path.string());
    return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

Text read_text_file(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::vector<Byte> bytes;
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (!ec) bytes.reserve(size);
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        bytes.insert(bytes.end(), buf, buf + in.gcount());
    }
    if (in.bad()) throw IoError("read failed: " + path.string());
    return Text(std::move(bytes));
}

void write_sa(std::ostream& out, const AnySuffixArray& any) {
    std::visit(
        [&](const auto& sa) {
            using Index = typename std::decay_t<decltype(sa)>::index_type;
            write_header(out, kSaMagic, sizeof(Index), sa.size());
            write_entries<Index>(out, sa.entries());
        },
        any);
}

AnySuffixArray read_sa(std::istream& in) {
    const Header h = read_header(in, kSaMagic, "suffix array file");
    if (h.width == 4) return read_entries<std::uint32_t>(in, h.n);
    return read_entries<std::uint64_t>(in, h.n);
}

void write_sa_file(const std::filesystem::path& path, const AnySuffixArray& sa) {
    std::ofstream out = open_out(path);
    write_sa(out, sa);
    finish_write(out, path);
}

AnySuffixArray read_sa_file(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    return read_sa(in);
}

SaFileStream::SaFileStream(const std::filesystem::path& path, std::size_t buffer_entries)
    : in_(open_in(path)) {
    const Header h = read_header(in_, kSaMagic, "suffix array file");
    n_ = h.n;
    width_ = h.width;
    buf_.resize(std::max<std::size_t>(buffer_entries, 1) * width_);
}

bool SaFileStream::refill() {
    // A partial entry can only sit at end of file: hand out the whole entries
    // before it first, then fail on every later call.
    if (truncated_) throw FormatError("suffix array file: partial entry at the end of the body");
    buf_len_ = read_some(in_, buf_.data(), buf_.size());
    buf_pos_ = 0;
    if (buf_len_ % width_ != 0) {
        truncated_ = true;
        buf_len_ -= buf_len_ % width_;
        if (buf_len_ == 0) return refill();
    }
    return buf_len_ > 0;
}

bool SaFileStream::next(std::uint64_t& value) {
    if (buf_pos_ == buf_len_ && !refill()) return false;
    value = get_le(buf_.data() + buf_pos_, width_);
    buf_pos_ += width_;
    return true;
}

std::string escape_byte(Byte b) {
    if (b > 0x20 && b < 0x7f && b != '\\') return std::string(1, static_cast<char>(b));
    if (b == '\\') return "\\\\";
    static constexpr char kHex[] = "0123456789abcdef";
    return {'\\', 'x', kHex[b >> 4], kHex[b & 0xf]};
}

void write_factors_text(std::ostream& out, const Factorization& f) {
    for (const Factor& fac : f) {
        if (fac.is_literal()) {
            out << escape_byte(fac.symbol()) << " 0\n";
        } else {
            out << fac.pos() << ' ' << fac.len() << '\n';
        }
    }
}

Factorization read_factors_text(std::istream& in) {
    std::vector<Factor> factors;
    std::uint64_t n = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t sp = line.find(' ');
        if (sp == std::string::npos || line.find(' ', sp + 1) != std::string::npos) {
            throw FormatError("line " + std::to_string(lineno) + ": expected two fields");
        }
        const std::string_view first(line.data(), sp);
        const std::string_view second(line.data() + sp + 1, line.size() - sp - 1);
        const std::uint64_t len = parse_number(second, lineno);
        if (len == 0) {
            factors.push_back(Factor::literal(unescape(first, lineno)));
            n += 1;
        } else {
            factors.push_back(Factor::copy(parse_number(first, lineno), len));
            n += len;
        }
    }
    return Factorization(std::move(factors), n);
}

void write_factors_binary(std::ostream& out, const Factorization& f) {
    const unsigned width = index_width_for(f.source_len());
    write_header(out, kFactorMagic, width, f.source_len());
    for (const Factor& fac : f) {
        if (fac.is_literal()) {
            out.put(0);
            out.put(static_cast<char>(fac.symbol()));
        } else {
            out.put(1);
            put_le(out, fac.pos(), width);
            put_le(out, fac.len(), width);
        }
    }
}

Factorization read_factors_binary(std::istream& in) {
    const Header h = read_header(in, kFactorMagic, "factorization file");
    std::vector<Factor> factors;
    char b[16];
    for (;;) {
        const int tag = in.get();
        if (tag == std::char_traits<char>::eof()) break;
        if (tag == 0) {
            if (read_some(in, b, 1) != 1) throw FormatError("factorization file: truncated literal");
            factors.push_back(Factor::literal(static_cast<Byte>(b[0])));
        } else if (tag == 1) {
            if (read_some(in, b, 2 * h.width) != 2 * h.width) {
                throw FormatError("factorization file: truncated copy");
            }
            const std::uint64_t pos = get_le(b, h.width);
            const std::uint64_t len = get_le(b + h.width, h.width);
            if (len == 0) throw FormatError("factorization file: copy of length 0");
            factors.push_back(Factor::copy(pos, len));
        } else {
            throw FormatError("factorization file: unknown tag " + std::to_string(tag));
        }
    }
    return Factorization(std::move(factors), h.n);
}

void write_factors_file(const std::filesystem::path& path, const Factorization& f,
                        FactorFormat format) {
    std::ofstream out = open_out(path);
    if (format == FactorFormat::binary) {
        write_factors_binary(out, f);
    } else {
        write_factors_text(out, f);
    }
    finish_write(out, path);
}

Factorization read_factors_file(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    char head[8] = {};
    const std::size_t got = read_some(in, head, sizeof head);
    in.clear();
    in.seekg(0);
    if (got == sizeof head && std::equal(kFactorMagic.begin(), kFactorMagic.end(), head)) {
        return read_factors_binary(in);
    }
    return read_factors_text(in);
}

}  // namespace lzkkp
