#include "ncdlab/compressors/lz77.hpp"

#include <algorithm>
#include <array>

#include "ncdlab/common/error.hpp"

namespace ncdlab::codec {
namespace {

// All positions of a k-gram key, sorted by (key, position), packed so a
// single lower_bound finds the first occurrence at or after a position.
class OccurrenceIndex {
 public:
  OccurrenceIndex(ByteView data, unsigned gram) : data_(data), gram_(gram) {
    if (data.size() < gram) return;
    const std::size_t count = data.size() - gram + 1;
    // LSD radix sort on the key bytes; positions start ascending and each
    // pass is stable, so equal keys stay in position order.
    std::vector<std::uint32_t> order(count), scratch(count);
    for (std::size_t p = 0; p < count; ++p) order[p] = static_cast<std::uint32_t>(p);
    for (unsigned digit = gram; digit-- > 0;) {
      std::array<std::size_t, 257> bucket{};
      for (auto p : order) ++bucket[data[p + digit] + 1u];
      for (std::size_t b = 1; b < bucket.size(); ++b) bucket[b] += bucket[b - 1];
      for (auto p : order) scratch[bucket[data[p + digit]]++] = p;
      order.swap(scratch);
    }
    entries_.reserve(count);
    for (auto p : order) entries_.push_back(key(p) << 32 | p);
  }

  std::uint64_t key(std::size_t p) const {
    std::uint64_t k = 0;
    for (unsigned i = 0; i < gram_; ++i) k = k << 8 | data_[p + i];
    return k;
  }

  // Range of entries with the key at `cursor` and position in [from, cursor).
  std::pair<std::size_t, std::size_t> window(std::size_t cursor, std::size_t from) const {
    const std::uint64_t k = key(cursor) << 32;
    const auto lo = std::lower_bound(entries_.begin(), entries_.end(), k | from);
    const auto hi = std::lower_bound(lo, entries_.end(), k | cursor);
    return {static_cast<std::size_t>(lo - entries_.begin()),
            static_cast<std::size_t>(hi - entries_.begin())};
  }

  std::size_t position(std::size_t i) const { return entries_[i] & 0xffffffffu; }

 private:
  ByteView data_;
  unsigned gram_;
  std::vector<std::uint64_t> entries_;
};

}  // namespace

std::vector<Lz77Token> lz77_encode(ByteView data, const Lz77Params& params) {
  if (params.search_size == 0 || params.lookahead_size == 0)
    throw ValidationError("LZ77 buffer sizes must be at least 1");
  if (data.size() >= (std::size_t{1} << 32)) throw ValidationError("LZ77 input exceeds 4 GiB");

  const std::size_t n = data.size();
  const OccurrenceIndex singles(data, 1), pairs(data, 2), triples(data, 3);
  std::vector<Lz77Token> tokens;

  auto extend = [&](std::size_t cand, std::size_t cursor, std::size_t limit) {
    std::size_t len = 0;
    while (len < limit && data[cand + len] == data[cursor + len]) ++len;
    return len;
  };

  std::size_t cursor = 0;
  while (cursor < n) {
    const std::size_t max_len = std::min(params.lookahead_size - 1, n - cursor - 1);
    const std::size_t from = cursor > params.search_size ? cursor - params.search_size : 0;
    std::size_t best_len = 0, best_pos = 0;

    if (max_len >= 3) {
      auto [lo, hi] = triples.window(cursor, from);
      if (hi - lo > params.max_candidates) lo = hi - params.max_candidates;
      for (std::size_t i = lo; i < hi; ++i) {
        const std::size_t cand = triples.position(i);
        const std::size_t len = extend(cand, cursor, max_len);
        if (len > best_len) {
          best_len = len;
          best_pos = cand;
          if (len == max_len) break;
        }
      }
    }
    if (best_len == 0 && max_len >= 2) {
      auto [lo, hi] = pairs.window(cursor, from);
      if (lo < hi) {
        best_pos = pairs.position(lo);
        best_len = extend(best_pos, cursor, max_len);
      }
    }
    if (best_len == 0 && max_len >= 1) {
      auto [lo, hi] = singles.window(cursor, from);
      if (lo < hi) {
        best_pos = singles.position(lo);
        best_len = 1;
      }
    }

    Lz77Token t;
    if (best_len > 0) {
      t.offset = static_cast<std::uint32_t>(cursor - best_pos);
      t.length = static_cast<std::uint32_t>(best_len);
    }
    t.next = data[cursor + best_len];
    tokens.push_back(t);
    cursor += best_len + 1;
  }
  return tokens;
}

Bytes lz77_decode(const std::vector<Lz77Token>& tokens) {
  Bytes out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if ((t.offset == 0) != (t.length == 0))
      throw CorruptStreamError("token " + std::to_string(i) + " has mismatched offset/length");
    if (t.offset > out.size())
      throw CorruptStreamError("token " + std::to_string(i) + " points before the stream start");
    const std::size_t start = out.size() - t.offset;
    for (std::size_t k = 0; k < t.length; ++k) out.push_back(out[start + k]);
    out.push_back(t.next);
  }
  return out;
}

}  // namespace ncdlab::codec
