#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ncdlab/common/bytes.hpp"

namespace ncdlab::codec {

class ArithmeticEncoder;
class ArithmeticDecoder;

inline constexpr int kPpmMaxOrder = 8;

/// Order-k PPM with method-C escapes and symbol exclusion, falling back to
/// a uniform order(-1) model over the bytes not yet excluded. Counts are
/// updated in every context of order 0..k after each symbol, so the
/// context tables hold the substring counts of a depth-(k+1) trie.
class PpmModel {
 public:
  /// Throws ValidationError unless 0 <= order <= kPpmMaxOrder.
  explicit PpmModel(int order);

  /// Codes one symbol and updates the model. Returns the code length in bits
  /// under the model; the arithmetic encoder is optional.
  double encode(std::uint8_t symbol, ArithmeticEncoder* coder = nullptr);
  /// Same coding as encode() without tracking the model cost.
  void encode_only(std::uint8_t symbol, ArithmeticEncoder& coder);
  std::uint8_t decode(ArithmeticDecoder& coder);

  /// How often `symbol` followed `context` (|context| <= order) so far.
  std::uint32_t count(std::string_view context, std::uint8_t symbol) const;

  int order() const noexcept { return order_; }

 private:
  struct Entry {
    std::uint32_t count;
    std::uint32_t next;  // index into entries_, kNone at the tail
    std::uint8_t symbol;
  };
  struct Context {
    std::uint32_t head;
    std::uint32_t tail;
    std::uint32_t total = 0;
    std::uint32_t distinct = 0;
  };
  // Open-addressed map from masked history to an index into contexts_.
  struct Table {
    std::vector<std::uint64_t> keys;
    std::vector<std::uint32_t> slots;
    std::size_t used = 0;
  };

  std::uint32_t lookup(int order, std::uint64_t key, bool create);
  std::uint32_t find(int order, std::uint64_t key) const;
  void bind_contexts();
  void update(std::uint8_t symbol);
  template <class Emit>
  void code(std::uint8_t symbol, Emit&& emit);

  int order_;
  std::vector<Table> tables_;
  std::vector<Context> contexts_;
  std::vector<Entry> entries_;
  std::array<std::uint32_t, kPpmMaxOrder + 1> active_{};  // contexts for the next symbol
  std::array<std::uint32_t, kPpmMaxOrder + 1> hint_;      // entry of that symbol, if already located
  std::uint64_t history_ = 0;
  std::size_t seen_ = 0;
};

/// Model code length of `data`, in bits.
double ppm_estimate_bits(ByteView data, int order);

/// Arithmetic-coded payload (no header). Decoding needs the symbol count.
Bytes ppm_encode(ByteView data, int order);
Bytes ppm_decode(ByteView payload, std::size_t size, int order);

}  // namespace ncdlab::codec
