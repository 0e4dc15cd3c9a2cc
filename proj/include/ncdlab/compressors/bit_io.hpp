#pragma once

#include <cstddef>
#include <cstdint>

#include "ncdlab/common/bytes.hpp"

namespace ncdlab::codec {

/// MSB-first bit packer appending to a byte vector.
class BitWriter {
 public:
  explicit BitWriter(Bytes& out) : out_(out) {}
  ~BitWriter() { flush(); }
  BitWriter(const BitWriter&) = delete;
  BitWriter& operator=(const BitWriter&) = delete;

  void put_bit(unsigned bit);
  /// Writes the low `count` bits of `value`, most significant first. count <= 64.
  void put_bits(std::uint64_t value, unsigned count);
  /// Pads the current byte with zeros.
  void flush();

 private:
  Bytes& out_;
  std::uint64_t acc_ = 0;  // only the low `filled_` bits are pending
  unsigned filled_ = 0;
};

/// MSB-first bit reader. Reading past the end throws CorruptStreamError
/// unless `zero_fill` is set, in which case missing bits read as 0.
class BitReader {
 public:
  explicit BitReader(ByteView in, bool zero_fill = false) : in_(in), zero_fill_(zero_fill) {}

  unsigned get_bit();
  std::uint64_t get_bits(unsigned count);
  std::size_t byte_position() const noexcept { return (bit_ + 7) / 8; }
  std::size_t bit_position() const noexcept { return bit_; }
  std::size_t size_bits() const noexcept { return in_.size() * 8; }

 private:
  ByteView in_;
  std::size_t bit_ = 0;
  bool zero_fill_;
};

void put_varint(Bytes& out, std::uint64_t v);
/// Reads a LEB128 value at `pos`, advancing it. Throws CorruptStreamError.
std::uint64_t get_varint(ByteView in, std::size_t& pos);

}  // namespace ncdlab::codec
