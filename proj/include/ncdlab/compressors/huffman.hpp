#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ncdlab/common/bytes.hpp"
#include "ncdlab/compressors/bit_io.hpp"

namespace ncdlab::codec {

/// Huffman tree plus the codeword ("0"/"1" string) read off it for each
/// symbol. Left edges are 0.
struct HuffmanCode {
  struct Node {
    std::uint64_t weight = 0;
    int left = -1;
    int right = -1;
    std::uint32_t symbol = 0;  // meaningful for leaves only
    bool leaf() const noexcept { return left < 0; }
  };

  std::vector<Node> nodes;
  int root = -1;
  std::map<std::uint32_t, std::string> codewords;

  /// Sum over symbols of count * codeword length.
  std::uint64_t weighted_length(const std::map<std::uint32_t, std::uint64_t>& freqs) const;
};

/// Repeatedly merges the two lightest nodes; ties are resolved by creation
/// order (leaves are created in ascending symbol order). Zero counts are
/// ignored. A single-symbol alphabet gets the codeword "0".
HuffmanCode huffman_build(const std::map<std::uint32_t, std::uint64_t>& freqs);

/// Codeword lengths for a dense alphabet; zero-frequency symbols get 0.
std::vector<std::uint8_t> huffman_lengths(std::span<const std::uint64_t> freqs);

/// Canonical prefix code rebuilt from codeword lengths alone, so only the
/// lengths need to be stored in a stream.
class CanonicalHuffman {
 public:
  CanonicalHuffman() = default;
  static CanonicalHuffman from_frequencies(std::span<const std::uint64_t> freqs);
  /// Throws CorruptStreamError if the lengths violate the Kraft inequality.
  static CanonicalHuffman from_lengths(std::vector<std::uint8_t> lengths);

  void write_table(Bytes& out) const;
  static CanonicalHuffman read_table(ByteView in, std::size_t& pos, std::size_t alphabet_size);

  void encode(BitWriter& out, std::uint32_t symbol) const;
  std::uint32_t decode(BitReader& in) const;

  const std::vector<std::uint8_t>& lengths() const noexcept { return lengths_; }

 private:
  std::vector<std::uint8_t> lengths_;
  std::vector<std::uint64_t> codes_;
  std::vector<std::uint32_t> count_per_length_;
  std::vector<std::uint32_t> sorted_symbols_;
};

}  // namespace ncdlab::codec
