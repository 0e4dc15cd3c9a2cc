#include "ncdlab/textops/removal_map.hpp"

#include "ncdlab/common/error.hpp"

namespace ncdlab::text {

std::string Bitmap::to_pbm() const {
  std::string out = "P1\n" + std::to_string(width) + " " + std::to_string(height) + "\n";
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      if (c) out.push_back(' ');
      out.push_back(at(r, c) ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

Bitmap emit_removal_map(const TokenStream& doc, const RemovalSet& set, std::size_t width) {
  if (width == 0) throw ValidationError("removal map width must be at least 1");
  Bitmap map;
  map.width = width;
  for (auto word : doc.words()) map.black.push_back(!set.contains(word));
  map.height = (map.black.size() + width - 1) / width;
  map.black.resize(map.height * width, false);
  return map;
}

}  // namespace ncdlab::text
