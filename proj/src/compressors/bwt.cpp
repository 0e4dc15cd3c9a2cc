#include "ncdlab/compressors/bwt.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include "ncdlab/common/error.hpp"

namespace ncdlab::codec {

BwtBlock bwt_forward(ByteView block) {
  const std::size_t n = block.size();
  if (n == 0) throw ValidationError("BWT of an empty block");

  // Prefix doubling over cyclic rotations with counting sorts: after the
  // round for span h, `order` lists rotations by their first 2h symbols and
  // `cls` holds their equivalence classes.
  std::vector<std::uint32_t> order(n), cls(n), shifted(n), next_cls(n);
  std::vector<std::uint32_t> bucket(std::max<std::size_t>(n, 256) + 1);
  {
    std::array<std::uint32_t, 257> count{};
    for (auto b : block) ++count[b + 1u];
    for (std::size_t c = 1; c < count.size(); ++c) count[c] += count[c - 1];
    for (std::size_t i = 0; i < n; ++i) order[count[block[i]]++] = static_cast<std::uint32_t>(i);
    cls[order[0]] = 0;
    for (std::size_t i = 1; i < n; ++i)
      cls[order[i]] = cls[order[i - 1]] + (block[order[i]] != block[order[i - 1]]);
  }
  for (std::size_t span = 1; cls[order[n - 1]] + 1 < n && span < n; span <<= 1) {
    for (std::size_t i = 0; i < n; ++i)
      shifted[i] = static_cast<std::uint32_t>((order[i] + n - span % n) % n);
    const std::size_t classes = cls[order[n - 1]] + 1;
    std::fill(bucket.begin(), bucket.begin() + classes + 1, 0);
    for (auto r : shifted) ++bucket[cls[r] + 1];
    for (std::size_t c = 1; c <= classes; ++c) bucket[c] += bucket[c - 1];
    for (auto r : shifted) order[bucket[cls[r]]++] = r;
    next_cls[order[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const auto a = order[i - 1], b = order[i];
      const bool differs = cls[a] != cls[b] || cls[(a + span) % n] != cls[(b + span) % n];
      next_cls[b] = next_cls[a] + (differs ? 1u : 0u);
    }
    cls.swap(next_cls);
  }
  // Identical rotations (periodic blocks) are ordered by starting position.
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && cls[order[j]] == cls[order[i]]) ++j;
    if (j - i > 1) std::sort(order.begin() + i, order.begin() + j);
    i = j;
  }

  BwtBlock out{Bytes(n), 0};
  for (std::size_t i = 0; i < n; ++i) {
    out.transformed[i] = block[(order[i] + n - 1) % n];
    if (order[i] == 0) out.primary_index = i;
  }
  return out;
}

Bytes bwt_inverse(const BwtBlock& block) {
  const auto& last = block.transformed;
  const std::size_t n = last.size();
  if (n == 0) return {};
  if (block.primary_index >= n) throw CorruptStreamError("BWT primary index out of range");

  std::array<std::size_t, 257> start{};
  for (auto c : last) ++start[c + 1u];
  for (std::size_t c = 1; c < start.size(); ++c) start[c] += start[c - 1];

  // lf[i]: row whose rotation begins with last[i].
  std::vector<std::uint32_t> lf(n);
  std::array<std::size_t, 256> seen{};
  for (std::size_t i = 0; i < n; ++i) lf[i] = static_cast<std::uint32_t>(start[last[i]] + seen[last[i]]++);

  Bytes out(n);
  std::size_t row = block.primary_index;
  for (std::size_t k = n; k-- > 0;) {
    out[k] = last[row];
    row = lf[row];
  }
  return out;
}

}  // namespace ncdlab::codec
