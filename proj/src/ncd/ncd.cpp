#include "ncdlab/ncd/ncd.hpp"

#include <algorithm>
#include <mutex>

#include "ncdlab/common/error.hpp"

namespace ncdlab::ncd {
namespace {

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

}  // namespace

// Two independent multiply-rotate lanes over the byte stream. Streaming, so
// hashing x then y equals hashing their concatenation.
void Hasher::update(ByteView data) {
  for (auto byte : data) {
    a_ = (a_ ^ byte) * 0x100000001b3ULL;
    b_ = ((b_ << 7 | b_ >> 57) ^ byte) * 0x9fb21c651e98df25ULL;
  }
  size_ += data.size();
}

Fingerprint Hasher::digest() const {
  return {mix(a_ ^ size_), mix(b_ + size_ * 0x9e3779b97f4a7c15ULL), size_};
}

Fingerprint fingerprint(ByteView data) {
  Hasher h;
  h.update(data);
  return h.digest();
}

std::size_t CompressedLengthCache::KeyHash::operator()(const Key& k) const noexcept {
  return std::hash<std::string>{}(k.config) ^ k.content.lo;
}

std::optional<std::size_t> CompressedLengthCache::lookup(const Key& key) {
  std::shared_lock lock(mutex_);
  auto it = map_.find(key);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void CompressedLengthCache::store(Key key, std::size_t value) {
  std::unique_lock lock(mutex_);
  map_.emplace(std::move(key), value);
}

std::size_t CompressedLengthCache::length(const codec::Backend& backend, ByteView data) {
  Key key{backend.config_id(), fingerprint(data)};
  if (auto hit = lookup(key)) {
    ++hits_;
    return *hit;
  }
  const std::size_t value = backend.compressed_len(data);
  ++misses_;
  store(std::move(key), value);
  return value;
}

std::size_t CompressedLengthCache::length_of_concat(const codec::Backend& backend, ByteView x,
                                                    ByteView y) {
  Hasher h;
  h.update(x);
  h.update(y);
  Key key{backend.config_id(), h.digest()};
  if (auto hit = lookup(key)) {
    ++hits_;
    return *hit;
  }
  const std::size_t value = backend.compressed_len(concat(x, y));
  ++misses_;
  store(std::move(key), value);
  return value;
}

std::size_t CompressedLengthCache::size() const {
  std::shared_lock lock(mutex_);
  return map_.size();
}

std::uint64_t CompressedLengthCache::hits() const { return hits_.load(); }
std::uint64_t CompressedLengthCache::misses() const { return misses_.load(); }

double ncd_from_lengths(std::size_t cx, std::size_t cy, std::size_t cxy, std::size_t cyx) {
  const double gain_x = static_cast<double>(cxy) - static_cast<double>(cx);
  const double gain_y = static_cast<double>(cyx) - static_cast<double>(cy);
  return std::max(gain_x, gain_y) / static_cast<double>(std::max(cx, cy));
}

double ncd(const codec::Backend& backend, ByteView x, ByteView y, CompressedLengthCache* cache) {
  if (x.empty() || y.empty()) throw ValidationError("NCD of an empty input");
  if (cache) {
    return ncd_from_lengths(cache->length(backend, x), cache->length(backend, y),
                            cache->length_of_concat(backend, x, y),
                            cache->length_of_concat(backend, y, x));
  }
  return ncd_from_lengths(backend.compressed_len(x), backend.compressed_len(y),
                          backend.compressed_len(concat(x, y)),
                          backend.compressed_len(concat(y, x)));
}

}  // namespace ncdlab::ncd
