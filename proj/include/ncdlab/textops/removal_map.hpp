#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ncdlab/textops/frequency_table.hpp"
#include "ncdlab/textops/tokenizer.hpp"

namespace ncdlab::text {

/// One pixel per word, row-major. `black` marks a word that survives.
struct Bitmap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<bool> black;

  bool at(std::size_t row, std::size_t col) const { return black[row * width + col]; }
  /// Plain PBM ("P1"); 1 is black. Padding pixels past the last word are white.
  std::string to_pbm() const;
};

Bitmap emit_removal_map(const TokenStream& doc, const RemovalSet& set, std::size_t width);

}  // namespace ncdlab::text
