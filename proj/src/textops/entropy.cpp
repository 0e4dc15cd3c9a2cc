#include "ncdlab/textops/entropy.hpp"

#include <cmath>
#include <string>

#include "ncdlab/common/error.hpp"

namespace ncdlab::text {

double entropy(std::span<const double> probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ValidationError("probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ValidationError("probabilities sum to " + std::to_string(sum) + ", expected 1");
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

}  // namespace ncdlab::text
