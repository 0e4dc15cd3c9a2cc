#include "ncdlab/compressors/backend.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "ncdlab/common/error.hpp"
#include "ncdlab/compressors/bit_io.hpp"
#include "ncdlab/compressors/bwt.hpp"
#include "ncdlab/compressors/huffman.hpp"
#include "ncdlab/compressors/mtf.hpp"
#include "ncdlab/compressors/ppm.hpp"
#include "ncdlab/compressors/rle.hpp"

namespace ncdlab::codec {
namespace {

void write_header(Bytes& out, char tag, std::size_t size) {
  out.insert(out.end(), {'N', 'C', static_cast<std::uint8_t>(tag), kStreamVersion});
  put_varint(out, size);
}

std::size_t read_header(ByteView in, char tag, std::size_t& pos) {
  if (in.size() < kMagicSize || in[0] != 'N' || in[1] != 'C' ||
      in[2] != static_cast<std::uint8_t>(tag))
    throw CorruptStreamError(std::string("not a '") + tag + "' stream");
  if (in[3] != kStreamVersion) throw CorruptStreamError("unsupported stream version");
  pos = kMagicSize;
  const std::uint64_t size = get_varint(in, pos);
  if (size > (std::uint64_t{1} << 40)) throw CorruptStreamError("implausible stream length");
  return static_cast<std::size_t>(size);
}

unsigned offset_bucket(std::uint32_t offset) { return std::bit_width(offset) - 1; }

}  // namespace

// ---------------------------------------------------------------------------
// lz

LzBackend::LzBackend(Lz77Params params) : params_(params) {
  if (params_.search_size == 0 || params_.lookahead_size == 0)
    throw ValidationError("LZ77 buffer sizes must be at least 1");
  if (params_.search_size >= (std::size_t{1} << 31))
    throw ValidationError("LZ77 search buffer must be below 2 GiB");
}

std::string LzBackend::config_id() const {
  return "lz:s" + std::to_string(params_.search_size) + ":l" +
         std::to_string(params_.lookahead_size) + ":c" + std::to_string(params_.max_candidates);
}

Bytes LzBackend::compress(ByteView data) const {
  Bytes out;
  write_header(out, 'L', data.size());
  if (data.empty()) return out;
  put_varint(out, params_.search_size);
  put_varint(out, params_.lookahead_size);

  const auto tokens = lz77_encode(data, params_);
  // One bucket per power of two, plus a symbol for "same offset as the
  // previous match", which makes long repeats cheap.
  const std::size_t buckets = std::bit_width(params_.search_size);
  const std::uint32_t repeat = static_cast<std::uint32_t>(buckets);
  std::vector<std::uint64_t> len_freq(params_.lookahead_size, 0), bucket_freq(buckets + 1, 0),
      lit_freq(256, 0);
  std::uint32_t last = 0;
  for (const auto& t : tokens) {
    ++len_freq[t.length];
    if (t.length) {
      ++bucket_freq[t.offset == last ? repeat : offset_bucket(t.offset)];
      last = t.offset;
    }
    ++lit_freq[t.next];
  }
  const auto len_code = CanonicalHuffman::from_frequencies(len_freq);
  const auto bucket_code = CanonicalHuffman::from_frequencies(bucket_freq);
  const auto lit_code = CanonicalHuffman::from_frequencies(lit_freq);
  len_code.write_table(out);
  bucket_code.write_table(out);
  lit_code.write_table(out);

  BitWriter bits(out);
  last = 0;
  for (const auto& t : tokens) {
    len_code.encode(bits, t.length);
    if (t.length && t.offset == last) {
      bucket_code.encode(bits, repeat);
    } else if (t.length) {
      const unsigned b = offset_bucket(t.offset);
      bucket_code.encode(bits, b);
      bits.put_bits(t.offset - (std::uint32_t{1} << b), b);
      last = t.offset;
    }
    lit_code.encode(bits, t.next);
  }
  bits.flush();
  return out;
}

Bytes LzBackend::decompress(ByteView stream) const {
  std::size_t pos = 0;
  const std::size_t size = read_header(stream, 'L', pos);
  Bytes out;
  if (size == 0) return out;
  const std::uint64_t search = get_varint(stream, pos);
  const std::uint64_t lookahead = get_varint(stream, pos);
  if (search == 0 || search >= (std::uint64_t{1} << 31) || lookahead == 0 ||
      lookahead > (std::uint64_t{1} << 20))
    throw CorruptStreamError("invalid LZ77 buffer sizes");
  const auto len_code = CanonicalHuffman::read_table(stream, pos, lookahead);
  const unsigned repeat = std::bit_width(search);
  const auto bucket_code = CanonicalHuffman::read_table(stream, pos, repeat + 1);
  const auto lit_code = CanonicalHuffman::read_table(stream, pos, 256);

  out.reserve(size);
  BitReader bits(stream.subspan(pos));
  std::uint64_t last = 0;
  while (out.size() < size) {
    const std::uint32_t length = len_code.decode(bits);
    if (length) {
      const unsigned b = bucket_code.decode(bits);
      const std::uint64_t offset = b == repeat ? last : (std::uint64_t{1} << b) + bits.get_bits(b);
      if (offset == 0) throw CorruptStreamError("LZ77 repeat offset before any match");
      last = offset;
      if (offset > out.size() || offset > search)
        throw CorruptStreamError("LZ77 offset reaches before the stream start");
      if (out.size() + length >= size) throw CorruptStreamError("LZ77 match overruns the stream");
      const std::size_t start = out.size() - offset;
      for (std::size_t k = 0; k < length; ++k) out.push_back(out[start + k]);
    }
    out.push_back(static_cast<std::uint8_t>(lit_code.decode(bits)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// bw

BwBackend::BwBackend(std::size_t block_size) : block_size_(block_size) {
  if (block_size_ == 0 || block_size_ >= (std::size_t{1} << 31))
    throw ValidationError("BWT block size must lie in [1, 2^31)");
}

std::string BwBackend::config_id() const { return "bw:b" + std::to_string(block_size_); }

Bytes BwBackend::compress(ByteView data) const {
  Bytes out;
  write_header(out, 'B', data.size());
  if (data.empty()) return out;
  put_varint(out, block_size_);
  for (std::size_t start = 0; start < data.size(); start += block_size_) {
    const auto block = data.subspan(start, std::min(block_size_, data.size() - start));
    const auto bwt = bwt_forward(block);
    const auto rle = rle_encode(mtf_encode(bwt.transformed, identity_alphabet()));
    std::vector<std::uint64_t> freq(256, 0);
    for (auto b : rle) ++freq[b];
    const auto code = CanonicalHuffman::from_frequencies(freq);
    put_varint(out, bwt.primary_index);
    put_varint(out, rle.size());
    code.write_table(out);
    BitWriter bits(out);
    for (auto b : rle) code.encode(bits, b);
    bits.flush();
  }
  return out;
}

Bytes BwBackend::decompress(ByteView stream) const {
  std::size_t pos = 0;
  const std::size_t size = read_header(stream, 'B', pos);
  Bytes out;
  if (size == 0) return out;
  const std::uint64_t block_size = get_varint(stream, pos);
  if (block_size == 0 || block_size >= (std::uint64_t{1} << 31))
    throw CorruptStreamError("invalid BWT block size");
  out.reserve(size);
  while (out.size() < size) {
    const std::size_t expect = std::min<std::size_t>(block_size, size - out.size());
    const std::uint64_t primary = get_varint(stream, pos);
    const std::uint64_t rle_size = get_varint(stream, pos);
    if (rle_size > 3 * expect + 3) throw CorruptStreamError("implausible RLE block size");
    const auto code = CanonicalHuffman::read_table(stream, pos, 256);
    BitReader bits(stream.subspan(pos));
    Bytes rle(rle_size);
    for (auto& b : rle) b = static_cast<std::uint8_t>(code.decode(bits));
    pos += bits.byte_position();
    BwtBlock block{mtf_decode(rle_decode(rle), identity_alphabet()), primary};
    if (block.transformed.size() != expect) throw CorruptStreamError("BWT block length mismatch");
    const auto plain = bwt_inverse(block);
    out.insert(out.end(), plain.begin(), plain.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// ppm

PpmBackend::PpmBackend(int order) : order_(order) {
  if (order < 0 || order > kPpmMaxOrder)
    throw ValidationError("PPM order must lie in [0, " + std::to_string(kPpmMaxOrder) + "]");
}

std::string PpmBackend::config_id() const { return "ppm:o" + std::to_string(order_); }

Bytes PpmBackend::compress(ByteView data) const {
  Bytes out;
  write_header(out, 'P', data.size());
  if (data.empty()) return out;
  out.push_back(static_cast<std::uint8_t>(order_));
  const auto payload = ppm_encode(data, order_);
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

Bytes PpmBackend::decompress(ByteView stream) const {
  std::size_t pos = 0;
  const std::size_t size = read_header(stream, 'P', pos);
  if (size == 0) return {};
  if (pos >= stream.size()) throw CorruptStreamError("missing PPM order byte");
  const int order = stream[pos++];
  if (order > kPpmMaxOrder) throw CorruptStreamError("invalid PPM order");
  return ppm_decode(stream.subspan(pos), size, order);
}

std::unique_ptr<Backend> make_backend(std::string_view name) {
  if (name == "lz") return std::make_unique<LzBackend>();
  if (name == "bw") return std::make_unique<BwBackend>();
  if (name == "ppm") return std::make_unique<PpmBackend>();
  throw ValidationError("unknown backend '" + std::string(name) + "' (expected lz, bw or ppm)");
}

std::vector<std::string> backend_names() { return {"lz", "bw", "ppm"}; }

}  // namespace ncdlab::codec
