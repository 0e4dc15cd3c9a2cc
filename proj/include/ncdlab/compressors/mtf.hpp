#pragma once

#include <cstdint>
#include <vector>

#include "ncdlab/common/bytes.hpp"

namespace ncdlab::codec {

/// Move-to-front over an explicit alphabet. Throws ValidationError naming the
/// offset of the first byte missing from the alphabet.
std::vector<std::uint8_t> mtf_encode(ByteView data, ByteView alphabet);
Bytes mtf_decode(ByteView indices, ByteView alphabet);

/// The 256 byte values in ascending order.
const Bytes& identity_alphabet();

}  // namespace ncdlab::codec
