#include "cfl/bits.hpp"

#include <bit>

namespace cfl {

unsigned field_width(std::uint64_t count) {
  if (count <= 2) return 1;
  return static_cast<unsigned>(std::bit_width(count - 1));
}

unsigned ceil_log2(std::uint64_t x) { return field_width(x < 2 ? 2 : x); }

void BitWriter::put(std::uint64_t value, unsigned width) {
  if (width < 64 && (value >> width) != 0)
    throw std::invalid_argument("BitWriter: value " + std::to_string(value) +
                                " does not fit in " + std::to_string(width) + " bits");
  for (unsigned i = width; i-- > 0;) {
    if (bits_ % 8 == 0) bytes_.push_back(0);
    if ((value >> i) & 1) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
    ++bits_;
  }
}

void BitWriter::put_gamma(std::uint64_t value) {
  if (value == UINT64_MAX) throw std::invalid_argument("BitWriter: gamma value too large");
  const auto x = value + 1;
  const unsigned len = static_cast<unsigned>(std::bit_width(x));
  put(0, len - 1);
  put(x, len);
}

std::string BitWriter::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (auto b : bytes_) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

BitReader::BitReader(std::vector<std::uint8_t> bytes, std::size_t bits)
    : bytes_(std::move(bytes)), bits_(bits) {
  if (bytes_.size() * 8 < bits_) throw DecodeError("bit count exceeds buffer");
}

BitReader BitReader::from_hex(const std::string& hex, std::size_t bits) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw DecodeError(std::string("bad hex digit '") + c + "'");
  };
  if (hex.size() % 2 != 0) throw DecodeError("odd-length hex string");
  std::vector<std::uint8_t> bytes;
  for (std::size_t i = 0; i < hex.size(); i += 2)
    bytes.push_back(static_cast<std::uint8_t>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
  return BitReader(std::move(bytes), bits);
}

std::uint64_t BitReader::get(unsigned width) {
  if (pos_ + width > bits_) throw DecodeError("read past end of encoding");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i, ++pos_)
    v = (v << 1) | ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u);
  return v;
}

std::uint64_t BitReader::get_gamma() {
  unsigned zeros = 0;
  while (!get_bool()) {
    if (++zeros >= 64) throw DecodeError("malformed gamma code");
  }
  const std::uint64_t x = (std::uint64_t{1} << zeros) | get(zeros);
  return x - 1;
}

}  // namespace cfl
