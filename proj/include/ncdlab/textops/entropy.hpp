#pragma once

#include <span>

namespace ncdlab::text {

/// Shannon entropy in bits, -sum p log2 p, with 0 log 0 = 0.
/// Throws ValidationError on negative entries or a sum off 1 by more than 1e-9.
double entropy(std::span<const double> probs);

}  // namespace ncdlab::text
