#include "ncdlab/compressors/huffman.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "ncdlab/common/error.hpp"

namespace ncdlab::codec {

std::uint64_t HuffmanCode::weighted_length(
    const std::map<std::uint32_t, std::uint64_t>& freqs) const {
  std::uint64_t total = 0;
  for (const auto& [sym, n] : freqs) {
    auto it = codewords.find(sym);
    if (it != codewords.end()) total += n * it->second.size();
  }
  return total;
}

HuffmanCode huffman_build(const std::map<std::uint32_t, std::uint64_t>& freqs) {
  HuffmanCode code;
  for (const auto& [sym, n] : freqs)
    if (n > 0) code.nodes.push_back({n, -1, -1, sym});
  if (code.nodes.empty()) throw ValidationError("huffman_build needs at least one positive count");

  if (code.nodes.size() == 1) {
    code.root = 0;
    code.codewords[code.nodes[0].symbol] = "0";
    return code;
  }

  // (weight, creation index); the node index doubles as creation sequence.
  using Entry = std::pair<std::uint64_t, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (int i = 0; i < static_cast<int>(code.nodes.size()); ++i) heap.emplace(code.nodes[i].weight, i);
  while (heap.size() > 1) {
    auto [wa, a] = heap.top();
    heap.pop();
    auto [wb, b] = heap.top();
    heap.pop();
    code.nodes.push_back({wa + wb, a, b, 0});
    heap.emplace(wa + wb, static_cast<int>(code.nodes.size()) - 1);
  }
  code.root = heap.top().second;

  std::vector<std::pair<int, std::string>> stack{{code.root, ""}};
  while (!stack.empty()) {
    auto [idx, prefix] = std::move(stack.back());
    stack.pop_back();
    const auto& node = code.nodes[idx];
    if (node.leaf()) {
      code.codewords[node.symbol] = prefix;
    } else {
      stack.emplace_back(node.right, prefix + "1");
      stack.emplace_back(node.left, prefix + "0");
    }
  }
  return code;
}

std::vector<std::uint8_t> huffman_lengths(std::span<const std::uint64_t> freqs) {
  std::vector<std::uint8_t> lengths(freqs.size(), 0);
  std::map<std::uint32_t, std::uint64_t> sparse;
  for (std::size_t s = 0; s < freqs.size(); ++s)
    if (freqs[s] > 0) sparse[static_cast<std::uint32_t>(s)] = freqs[s];
  if (sparse.empty()) return lengths;
  const auto code = huffman_build(sparse);
  for (const auto& [sym, word] : code.codewords) lengths[sym] = static_cast<std::uint8_t>(word.size());
  return lengths;
}

CanonicalHuffman CanonicalHuffman::from_frequencies(std::span<const std::uint64_t> freqs) {
  return from_lengths(huffman_lengths(freqs));
}

CanonicalHuffman CanonicalHuffman::from_lengths(std::vector<std::uint8_t> lengths) {
  CanonicalHuffman h;
  h.lengths_ = std::move(lengths);
  const std::uint8_t max_len =
      h.lengths_.empty() ? 0 : *std::max_element(h.lengths_.begin(), h.lengths_.end());
  if (max_len > 63) throw CorruptStreamError("huffman code length exceeds 63");
  h.count_per_length_.assign(max_len + 1u, 0);
  for (auto len : h.lengths_)
    if (len) ++h.count_per_length_[len];

  // Kraft check in fixed point.
  unsigned __int128 kraft = 0;
  for (unsigned len = 1; len <= max_len; ++len)
    kraft += static_cast<unsigned __int128>(h.count_per_length_[len]) << (63 - len);
  if (kraft > (static_cast<unsigned __int128>(1) << 63))
    throw CorruptStreamError("huffman lengths violate the Kraft inequality");

  for (std::uint32_t s = 0; s < h.lengths_.size(); ++s)
    if (h.lengths_[s]) h.sorted_symbols_.push_back(s);
  std::stable_sort(h.sorted_symbols_.begin(), h.sorted_symbols_.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return h.lengths_[a] < h.lengths_[b]; });

  h.codes_.assign(h.lengths_.size(), 0);
  std::uint64_t code = 0;
  unsigned prev_len = 0;
  for (auto s : h.sorted_symbols_) {
    const unsigned len = h.lengths_[s];
    code <<= (len - prev_len);
    h.codes_[s] = code++;
    prev_len = len;
  }
  return h;
}

void CanonicalHuffman::write_table(Bytes& out) const {
  std::size_t used = 0;
  for (auto len : lengths_) used += len != 0;
  put_varint(out, used);
  std::uint32_t prev = 0;
  for (std::uint32_t s = 0; s < lengths_.size(); ++s) {
    if (!lengths_[s]) continue;
    put_varint(out, s - prev);
    out.push_back(lengths_[s]);
    prev = s;
  }
}

CanonicalHuffman CanonicalHuffman::read_table(ByteView in, std::size_t& pos,
                                              std::size_t alphabet_size) {
  std::vector<std::uint8_t> lengths(alphabet_size, 0);
  const std::uint64_t used = get_varint(in, pos);
  if (used > alphabet_size) throw CorruptStreamError("huffman table larger than alphabet");
  std::uint64_t sym = 0;
  for (std::uint64_t i = 0; i < used; ++i) {
    sym += get_varint(in, pos);
    if (sym >= alphabet_size || pos >= in.size())
      throw CorruptStreamError("huffman table entry out of range");
    lengths[sym] = in[pos++];
    if (lengths[sym] == 0) throw CorruptStreamError("zero-length huffman table entry");
  }
  return from_lengths(std::move(lengths));
}

void CanonicalHuffman::encode(BitWriter& out, std::uint32_t symbol) const {
  out.put_bits(codes_[symbol], lengths_[symbol]);
}

std::uint32_t CanonicalHuffman::decode(BitReader& in) const {
  std::uint64_t code = 0, first = 0;
  std::size_t index = 0;
  for (std::size_t len = 1; len < count_per_length_.size(); ++len) {
    code |= in.get_bit();
    const std::uint64_t count = count_per_length_[len];
    if (code - first < count) return sorted_symbols_[index + (code - first)];
    index += count;
    first = (first + count) << 1;
    code <<= 1;
  }
  throw CorruptStreamError("invalid huffman codeword");
}

}  // namespace ncdlab::codec
