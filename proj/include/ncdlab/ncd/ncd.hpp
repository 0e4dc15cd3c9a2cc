#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "ncdlab/common/bytes.hpp"
#include "ncdlab/compressors/backend.hpp"

namespace ncdlab::ncd {

/// 128-bit content fingerprint; collisions are treated as impossible.
struct Fingerprint {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t size = 0;
  bool operator==(const Fingerprint&) const = default;
};

class Hasher {
 public:
  void update(ByteView data);
  Fingerprint digest() const;

 private:
  std::uint64_t a_ = 0x9e3779b97f4a7c15ULL;
  std::uint64_t b_ = 0xc2b2ae3d27d4eb4fULL;
  std::uint64_t size_ = 0;
};

Fingerprint fingerprint(ByteView data);

/// Compressed lengths keyed by (backend config, content). Safe to share
/// between threads; two workers racing on the same key both compute it and
/// store the same value.
class CompressedLengthCache {
 public:
  std::size_t length(const codec::Backend& backend, ByteView data);
  /// C(xy) without materializing the key separately from the input.
  std::size_t length_of_concat(const codec::Backend& backend, ByteView x, ByteView y);

  std::size_t size() const;
  std::uint64_t hits() const;
  std::uint64_t misses() const;

 private:
  struct Key {
    std::string config;
    Fingerprint content;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  std::optional<std::size_t> lookup(const Key& key);
  void store(Key key, std::size_t value);

  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, std::size_t, KeyHash> map_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
};

/// max{C(xy) - C(x), C(yx) - C(y)} / max{C(x), C(y)} over raw
/// concatenations. Throws ValidationError when either input is empty.
double ncd(const codec::Backend& backend, ByteView x, ByteView y,
           CompressedLengthCache* cache = nullptr);

/// The formula applied to already known lengths.
double ncd_from_lengths(std::size_t cx, std::size_t cy, std::size_t cxy, std::size_t cyx);

}  // namespace ncdlab::ncd
