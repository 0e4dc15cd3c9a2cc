#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ncdlab/common/bytes.hpp"
#include "ncdlab/compressors/lz77.hpp"

namespace ncdlab::codec {

/// A lossless codec used as the C(.) of the compression distance.
///
/// Every stream begins with a 4-byte header: 'N' 'C' <tag> <version>, where
/// tag is 'L' (lz), 'B' (bw) or 'P' (ppm), followed by the original length
/// as a LEB128 varint. Implementations hold only configuration, so one
/// instance may be used from several threads at once.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual std::string_view name() const noexcept = 0;
  /// Name plus every parameter that changes the output; used as a cache key.
  virtual std::string config_id() const = 0;

  virtual Bytes compress(ByteView data) const = 0;
  /// Throws CorruptStreamError on malformed input.
  virtual Bytes decompress(ByteView stream) const = 0;

  std::size_t compressed_len(ByteView data) const { return compress(data).size(); }
};

inline constexpr std::uint8_t kStreamVersion = 1;
inline constexpr std::size_t kMagicSize = 4;

/// "lz": LZ77 tokens, then three canonical Huffman codes (match lengths,
/// log2 offset buckets with raw extra bits plus a repeat-last-offset
/// symbol, literals).
class LzBackend final : public Backend {
 public:
  explicit LzBackend(Lz77Params params = {});
  std::string_view name() const noexcept override { return "lz"; }
  std::string config_id() const override;
  Bytes compress(ByteView data) const override;
  Bytes decompress(ByteView stream) const override;

 private:
  Lz77Params params_;
};

/// "bw": fixed-size blocks through BWT, move-to-front, run-length coding
/// and a per-block canonical Huffman code.
class BwBackend final : public Backend {
 public:
  explicit BwBackend(std::size_t block_size = 256 * 1024);
  std::string_view name() const noexcept override { return "bw"; }
  std::string config_id() const override;
  Bytes compress(ByteView data) const override;
  Bytes decompress(ByteView stream) const override;

 private:
  std::size_t block_size_;
};

/// "ppm": order-k PPMC driving a binary arithmetic coder.
class PpmBackend final : public Backend {
 public:
  explicit PpmBackend(int order = 3);
  std::string_view name() const noexcept override { return "ppm"; }
  std::string config_id() const override;
  Bytes compress(ByteView data) const override;
  Bytes decompress(ByteView stream) const override;

 private:
  int order_;
};

/// Backend with default configuration; throws ValidationError for unknown names.
std::unique_ptr<Backend> make_backend(std::string_view name);
std::vector<std::string> backend_names();

}  // namespace ncdlab::codec
