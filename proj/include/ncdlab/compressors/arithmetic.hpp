#pragma once

#include <cstdint>

#include "ncdlab/common/bytes.hpp"
#include "ncdlab/compressors/bit_io.hpp"

namespace ncdlab::codec {

/// Binary arithmetic coder with 62-bit registers (bit-plus-follow
/// renormalization). Symbol intervals are [low, high) out of `total`, with
/// total < 2^32.
class ArithmeticEncoder {
 public:
  explicit ArithmeticEncoder(Bytes& out) : bits_(out) {}

  void encode(std::uint32_t low, std::uint32_t high, std::uint32_t total);
  /// Emits the disambiguating tail bits and pads to a byte.
  void finish();

 private:
  void emit(unsigned bit);

  BitWriter bits_;
  std::uint64_t low_ = 0;
  std::uint64_t high_ = kTop;
  std::uint64_t pending_ = 0;

 public:
  static constexpr unsigned kBits = 62;
  static constexpr std::uint64_t kTop = (std::uint64_t{1} << kBits) - 1;
  static constexpr std::uint64_t kHalf = std::uint64_t{1} << (kBits - 1);
  static constexpr std::uint64_t kQuarter = std::uint64_t{1} << (kBits - 2);
};

class ArithmeticDecoder {
 public:
  explicit ArithmeticDecoder(ByteView in);

  /// Count in [0, total) identifying the next symbol's interval.
  std::uint32_t target(std::uint32_t total) const;
  void consume(std::uint32_t low, std::uint32_t high, std::uint32_t total);
  /// A complete stream is never read more than kBits - 1 bits past its
  /// end; reading further means the input was cut short.
  bool overran() const noexcept;

 private:
  BitReader bits_;
  std::uint64_t low_ = 0;
  std::uint64_t high_ = ArithmeticEncoder::kTop;
  std::uint64_t value_ = 0;
};

}  // namespace ncdlab::codec
