#include "ncdlab/compressors/rle.hpp"

#include <algorithm>

#include "ncdlab/common/error.hpp"

namespace ncdlab::codec {

Bytes rle_encode(ByteView data) {
  Bytes out;
  out.reserve(data.size());
  std::size_t i = 0;
  while (i < data.size()) {
    const std::uint8_t b = data[i];
    std::size_t run = 1;
    while (i + run < data.size() && data[i + run] == b && run < 255) ++run;
    if (run >= 3) {
      out.insert(out.end(), {kRleMarker, static_cast<std::uint8_t>(run), b});
    } else {
      for (std::size_t k = 0; k < run; ++k) {
        out.push_back(b);
        if (b == kRleMarker) out.push_back(0);
      }
    }
    i += run;
  }
  return out;
}

Bytes rle_decode(ByteView encoded) {
  Bytes out;
  out.reserve(encoded.size());
  std::size_t i = 0;
  while (i < encoded.size()) {
    const std::uint8_t b = encoded[i++];
    if (b != kRleMarker) {
      out.push_back(b);
      continue;
    }
    if (i >= encoded.size()) throw CorruptStreamError("RLE stream ends inside an escape");
    const std::uint8_t count = encoded[i++];
    if (count == 0) {
      out.push_back(kRleMarker);
      continue;
    }
    if (i >= encoded.size()) throw CorruptStreamError("RLE stream ends inside a run");
    out.insert(out.end(), count, encoded[i++]);
  }
  return out;
}

}  // namespace ncdlab::codec
