#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfl {

/// Number of bits needed to distinguish `count` values, i.e. ceil(log2(count)),
/// with a floor of one bit so that every field occupies space.
unsigned field_width(std::uint64_t count);

/// ceil(log2(max(x, 2))). Used for the size bounds quoted in terms of log n.
unsigned ceil_log2(std::uint64_t x);

/// Append-only bit sink for the canonical label encoding. Fields are written
/// most-significant bit first.
class BitWriter {
 public:
  void put(std::uint64_t value, unsigned width);
  void put_bool(bool b) { put(b ? 1 : 0, 1); }
  // Elias gamma code of value + 1.
  void put_gamma(std::uint64_t value);

  std::size_t size() const { return bits_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::string hex() const;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BitReader {
 public:
  BitReader(std::vector<std::uint8_t> bytes, std::size_t bits);
  static BitReader from_hex(const std::string& hex, std::size_t bits);

  std::uint64_t get(unsigned width);
  bool get_bool() { return get(1) != 0; }
  std::uint64_t get_gamma();
  std::size_t remaining() const { return bits_ - pos_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_;
  std::size_t pos_ = 0;
};

}  // namespace cfl
