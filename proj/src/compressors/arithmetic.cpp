#include "ncdlab/compressors/arithmetic.hpp"

#include "ncdlab/common/error.hpp"

namespace ncdlab::codec {

using u128 = unsigned __int128;
using AE = ArithmeticEncoder;

void ArithmeticEncoder::emit(unsigned bit) {
  bits_.put_bit(bit);
  for (; pending_ > 0; --pending_) bits_.put_bit(!bit);
}

void ArithmeticEncoder::encode(std::uint32_t low, std::uint32_t high, std::uint32_t total) {
  const u128 range = static_cast<u128>(high_ - low_) + 1;
  high_ = low_ + static_cast<std::uint64_t>(range * high / total) - 1;
  low_ = low_ + static_cast<std::uint64_t>(range * low / total);
  for (;;) {
    if (high_ < kHalf) {
      emit(0);
    } else if (low_ >= kHalf) {
      emit(1);
      low_ -= kHalf;
      high_ -= kHalf;
    } else if (low_ >= kQuarter && high_ < kHalf + kQuarter) {
      ++pending_;
      low_ -= kQuarter;
      high_ -= kQuarter;
    } else {
      break;
    }
    low_ <<= 1;
    high_ = high_ << 1 | 1;
  }
}

void ArithmeticEncoder::finish() {
  ++pending_;
  emit(low_ < kQuarter ? 0 : 1);
  bits_.flush();
}

ArithmeticDecoder::ArithmeticDecoder(ByteView in) : bits_(in, /*zero_fill=*/true) {
  for (unsigned i = 0; i < AE::kBits; ++i) value_ = value_ << 1 | bits_.get_bit();
}

std::uint32_t ArithmeticDecoder::target(std::uint32_t total) const {
  const u128 range = static_cast<u128>(high_ - low_) + 1;
  const u128 offset = static_cast<u128>(value_ - low_) + 1;
  const u128 t = (offset * total - 1) / range;
  if (t >= total) throw CorruptStreamError("arithmetic decoder out of range");
  return static_cast<std::uint32_t>(t);
}

bool ArithmeticDecoder::overran() const noexcept {
  return bits_.bit_position() > bits_.size_bits() + AE::kBits - 1;
}

void ArithmeticDecoder::consume(std::uint32_t low, std::uint32_t high, std::uint32_t total) {
  const u128 range = static_cast<u128>(high_ - low_) + 1;
  high_ = low_ + static_cast<std::uint64_t>(range * high / total) - 1;
  low_ = low_ + static_cast<std::uint64_t>(range * low / total);
  for (;;) {
    if (high_ < AE::kHalf) {
    } else if (low_ >= AE::kHalf) {
      low_ -= AE::kHalf;
      high_ -= AE::kHalf;
      value_ -= AE::kHalf;
    } else if (low_ >= AE::kQuarter && high_ < AE::kHalf + AE::kQuarter) {
      low_ -= AE::kQuarter;
      high_ -= AE::kQuarter;
      value_ -= AE::kQuarter;
    } else {
      break;
    }
    low_ <<= 1;
    high_ = high_ << 1 | 1;
    value_ = value_ << 1 | bits_.get_bit();
  }
}

}  // namespace ncdlab::codec
