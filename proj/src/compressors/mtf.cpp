#include "ncdlab/compressors/mtf.hpp"

#include <algorithm>
#include <string>

#include "ncdlab/common/error.hpp"

namespace ncdlab::codec {

const Bytes& identity_alphabet() {
  static const Bytes alphabet = [] {
    Bytes a(256);
    for (int i = 0; i < 256; ++i) a[i] = static_cast<std::uint8_t>(i);
    return a;
  }();
  return alphabet;
}

std::vector<std::uint8_t> mtf_encode(ByteView data, ByteView alphabet) {
  Bytes list(alphabet.begin(), alphabet.end());
  std::vector<std::uint8_t> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto it = std::find(list.begin(), list.end(), data[i]);
    if (it == list.end())
      throw ValidationError("byte at offset " + std::to_string(i) + " is not in the MTF alphabet");
    out.push_back(static_cast<std::uint8_t>(it - list.begin()));
    std::rotate(list.begin(), it, it + 1);
  }
  return out;
}

Bytes mtf_decode(ByteView indices, ByteView alphabet) {
  Bytes list(alphabet.begin(), alphabet.end());
  Bytes out;
  out.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= list.size())
      throw CorruptStreamError("MTF index out of range at offset " + std::to_string(i));
    auto it = list.begin() + indices[i];
    out.push_back(*it);
    std::rotate(list.begin(), it, it + 1);
  }
  return out;
}

}  // namespace ncdlab::codec
