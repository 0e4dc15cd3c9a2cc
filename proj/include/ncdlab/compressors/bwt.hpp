#pragma once

#include <cstddef>

#include "ncdlab/common/bytes.hpp"

namespace ncdlab::codec {

struct BwtBlock {
  Bytes transformed;          ///< last column of the sorted rotation matrix
  std::size_t primary_index;  ///< row holding the original block
};

/// Sorts the cyclic rotations by prefix doubling. Identical rotations keep
/// their starting-position order. Throws ValidationError on an empty block.
BwtBlock bwt_forward(ByteView block);
Bytes bwt_inverse(const BwtBlock& block);

}  // namespace ncdlab::codec
