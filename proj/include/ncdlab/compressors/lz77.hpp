#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ncdlab/common/bytes.hpp"

namespace ncdlab::codec {

/// (offset, length, next symbol). offset counts back from the cursor, so a
/// match against the previous byte has offset 1. offset == 0 iff length == 0.
struct Lz77Token {
  std::uint32_t offset = 0;
  std::uint32_t length = 0;
  std::uint8_t next = 0;

  bool operator==(const Lz77Token&) const = default;
};

struct Lz77Params {
  std::size_t search_size = 32 * 1024;
  std::size_t lookahead_size = 64;
  /// Upper bound on candidate positions examined per cursor for matches of
  /// three or more bytes; the nearest candidates are kept. Below the bound
  /// the longest match is exact.
  std::size_t max_candidates = 1024;
};

/// Greedy parse. Each token takes the longest match that starts in the
/// search buffer (it may run into the look-ahead), leaving room for the
/// next symbol; among equally long matches the farthest one wins.
std::vector<Lz77Token> lz77_encode(ByteView data, const Lz77Params& params = {});

/// Throws CorruptStreamError on an offset reaching before the output start
/// or an offset/length pair that violates the token invariants.
Bytes lz77_decode(const std::vector<Lz77Token>& tokens);

}  // namespace ncdlab::codec
