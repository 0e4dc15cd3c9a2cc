#include "ncdlab/compressors/bit_io.hpp"

#include "ncdlab/common/error.hpp"

namespace ncdlab::codec {

void BitWriter::put_bit(unsigned bit) { put_bits(bit & 1u, 1); }

void BitWriter::put_bits(std::uint64_t value, unsigned count) {
  if (count > 32) {
    put_bits(value >> 32, count - 32);
    count = 32;
  }
  if (count == 0) return;
  value &= (std::uint64_t{1} << count) - 1;
  acc_ = acc_ << count | value;
  filled_ += count;
  while (filled_ >= 8) {
    filled_ -= 8;
    out_.push_back(static_cast<std::uint8_t>(acc_ >> filled_));
  }
}

void BitWriter::flush() {
  if (filled_ == 0) return;
  out_.push_back(static_cast<std::uint8_t>(acc_ << (8 - filled_)));
  acc_ = 0;
  filled_ = 0;
}

unsigned BitReader::get_bit() {
  const std::size_t byte = bit_ / 8;
  if (byte >= in_.size()) {
    if (!zero_fill_) throw CorruptStreamError("bit stream truncated");
    ++bit_;
    return 0;
  }
  const unsigned bit = (in_[byte] >> (7 - bit_ % 8)) & 1u;
  ++bit_;
  return bit;
}

std::uint64_t BitReader::get_bits(unsigned count) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < count; ++i) v = (v << 1) | get_bit();
  return v;
}

void put_varint(Bytes& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint64_t get_varint(ByteView in, std::size_t& pos) {
  std::uint64_t v = 0;
  for (unsigned shift = 0; shift < 64; shift += 7) {
    if (pos >= in.size()) throw CorruptStreamError("truncated varint");
    const std::uint8_t b = in[pos++];
    v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
    if (!(b & 0x80)) return v;
  }
  throw CorruptStreamError("varint too long");
}

}  // namespace ncdlab::codec
