#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "adic/common.hpp"
#include "adic/digits.hpp"

namespace adic {

// Digit-stream file formats.
//
// ASCII: one character per digit, '0'..'9', no separators, optional trailing
// newline.
//
// Packed (radix 4 only): 16-byte header
//   bytes 0..3   magic "ADIC"
//   byte  4      radix (u8)
//   byte  5      flags (u8, zero)
//   bytes 6..13  digit count (u64, little-endian)
//   bytes 14..15 reserved (zero)
// followed by 2 bits per digit, little-endian within each byte.

inline std::string to_ascii(const std::vector<int>& digits) {
  std::string out;
  out.reserve(digits.size());
  for (int d : digits) out += static_cast<char>('0' + d);
  return out;
}

// Throws SpecError naming the byte offset of the first bad character.
inline std::vector<int> parse_ascii(std::string_view text, int radix) {
  std::vector<int> digits;
  digits.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      for (std::size_t j = i; j < text.size(); ++j)
        if (text[j] != '\n')
          throw SpecError("bad digit character at byte offset " + std::to_string(j));
      break;
    }
    if (c < '0' || c >= static_cast<char>('0' + radix))
      throw SpecError("bad digit character at byte offset " + std::to_string(i));
    digits.push_back(c - '0');
  }
  return digits;
}

inline std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open file: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return bytes;
}

inline void write_file_bytes(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SpecError("cannot open file for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw SpecError("write failed: " + path);
}

inline std::vector<int> read_ascii_file(const std::string& path, int radix) {
  return parse_ascii(read_file_bytes(path), radix);
}

inline void write_ascii_file(const std::string& path, DigitStream& stream,
                             std::uint64_t count, bool trailing_newline = true) {
  std::string bytes;
  bytes.reserve(count + 1);
  for (std::uint64_t i = 0; i < count; ++i)
    bytes += static_cast<char>('0' + stream.next());
  if (trailing_newline) bytes += '\n';
  write_file_bytes(path, bytes);
}

inline constexpr char kPackedMagic[4] = {'A', 'D', 'I', 'C'};

inline std::string pack_digits(const std::vector<int>& digits, int radix) {
  if (radix != 4) throw SpecError("packed format is defined for radix 4 only");
  std::string bytes(16 + (digits.size() + 3) / 4, '\0');
  std::memcpy(bytes.data(), kPackedMagic, 4);
  bytes[4] = static_cast<char>(radix);
  bytes[5] = 0;
  const std::uint64_t n = digits.size();
  for (int i = 0; i < 8; ++i)
    bytes[6 + static_cast<std::size_t>(i)] = static_cast<char>((n >> (8 * i)) & 0xff);
  for (std::size_t i = 0; i < digits.size(); ++i)
    bytes[16 + i / 4] |= static_cast<char>(digits[i] << (2 * (i % 4)));
  return bytes;
}

inline std::vector<int> unpack_digits(std::string_view bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kPackedMagic, 4) != 0)
    throw SpecError("not a packed digit stream (bad header)");
  const int radix = static_cast<unsigned char>(bytes[4]);
  if (radix != 4) throw SpecError("packed stream has unsupported radix");
  if (bytes[5] != 0) throw SpecError("packed stream has unknown flags");
  std::uint64_t n = 0;
  for (int i = 7; i >= 0; --i)
    n = (n << 8) | static_cast<unsigned char>(bytes[6 + static_cast<std::size_t>(i)]);
  if (bytes.size() < 16 + (n + 3) / 4)
    throw SpecError("packed stream truncated");
  std::vector<int> digits;
  digits.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i)
    digits.push_back((static_cast<unsigned char>(bytes[16 + i / 4]) >> (2 * (i % 4))) & 3);
  return digits;
}

inline void write_packed_file(const std::string& path, DigitStream& stream,
                              std::uint64_t count) {
  std::vector<int> digits = stream.advance(count);
  write_file_bytes(path, pack_digits(digits, stream.radix()));
}

inline std::vector<int> read_packed_file(const std::string& path) {
  return unpack_digits(read_file_bytes(path));
}

// Loads either format; packed is detected by its magic.
inline std::vector<int> read_stream_file(const std::string& path, int radix) {
  const std::string bytes = read_file_bytes(path);
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kPackedMagic, 4) == 0)
    return unpack_digits(bytes);
  return parse_ascii(bytes, radix);
}

}  // namespace adic
