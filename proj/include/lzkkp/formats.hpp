#pragma once

// On-disk formats.
//
// Suffix array file (all integers little-endian):
//   8 bytes  magic "KKPSA\x01\0\0"
//   1 byte   entry width, 4 or 8
//   8 bytes  n
//   n entries of `width` bytes, SA[1..n] as 1-based positions
//
// Binary factorization file:
//   8 bytes  magic "KKPLZ\x01\0\0"
//   1 byte   integer width, 4 or 8
//   8 bytes  source length n
//   per factor: tag byte 0 followed by the literal byte, or tag byte 1
//   followed by pos and len as `width`-byte integers; up to end of file
//
// Text factorization: one factor per line. A literal is written as its
// escaped byte followed by " 0"; a copy as "pos len". Printable ASCII other
// than space and backslash stands for itself, "\\" is a backslash and every
// other byte is "\xHH".

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include "lzkkp/kkp.hpp"
#include "lzkkp/suffix_array.hpp"
#include "lzkkp/text.hpp"

namespace lzkkp {

inline constexpr std::array<char, 8> kSaMagic = {'K', 'K', 'P', 'S', 'A', '\x01', '\0', '\0'};
inline constexpr std::array<char, 8> kFactorMagic = {'K', 'K', 'P', 'L', 'Z', '\x01', '\0', '\0'};
inline constexpr std::size_t kHeaderSize = 17;

enum class FactorFormat { text, binary };

// Throws IoError.
Text read_text_file(const std::filesystem::path& path);

void write_sa(std::ostream& out, const AnySuffixArray& sa);
// Throws FormatError on a bad header, a truncated body or trailing bytes.
AnySuffixArray read_sa(std::istream& in);

void write_sa_file(const std::filesystem::path& path, const AnySuffixArray& sa);
AnySuffixArray read_sa_file(const std::filesystem::path& path);

// Streams SA[1..n] out of a suffix array file through a fixed read buffer.
// Each entry is read from disk once.
class SaFileStream final : public SaStream {
public:
    // Reads and checks the header. Throws IoError or FormatError.
    explicit SaFileStream(const std::filesystem::path& path, std::size_t buffer_entries = 1 << 16);

    std::uint64_t length() const noexcept { return n_; }
    unsigned width() const noexcept { return width_; }

    bool next(std::uint64_t& value) override;

private:
    bool refill();

    std::ifstream in_;
    std::uint64_t n_ = 0;
    unsigned width_ = 4;
    std::vector<char> buf_;
    std::size_t buf_pos_ = 0;
    std::size_t buf_len_ = 0;
    bool truncated_ = false;
};

std::string escape_byte(Byte b);

void write_factors_text(std::ostream& out, const Factorization& f);
// The source length is recovered from the phrase spans. Throws FormatError.
Factorization read_factors_text(std::istream& in);

void write_factors_binary(std::ostream& out, const Factorization& f);
Factorization read_factors_binary(std::istream& in);

void write_factors_file(const std::filesystem::path& path, const Factorization& f,
                        FactorFormat format);
// Detects the format from the magic bytes.
Factorization read_factors_file(const std::filesystem::path& path);

}  // namespace lzkkp
