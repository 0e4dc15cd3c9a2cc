#pragma once

#include <cstdint>

#include "ncdlab/common/bytes.hpp"

namespace ncdlab::codec {

/// Byte-stuffed run-length format:
///   runs of 3..255 equal bytes b  -> kRleMarker, count, b
///   a literal kRleMarker          -> kRleMarker, 0
///   any other byte                -> itself
/// Longer runs are split into 255-byte chunks.
inline constexpr std::uint8_t kRleMarker = 0xFF;

Bytes rle_encode(ByteView data);
/// Throws CorruptStreamError on a truncated escape sequence.
Bytes rle_decode(ByteView encoded);

}  // namespace ncdlab::codec
