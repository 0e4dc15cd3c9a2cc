#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ncdlab/common/bytes.hpp"
#include "ncdlab/common/error.hpp"
#include "ncdlab/common/rng.hpp"
#include "ncdlab/compressors/arithmetic.hpp"
#include "ncdlab/compressors/backend.hpp"
#include "ncdlab/compressors/bit_io.hpp"
#include "ncdlab/compressors/bwt.hpp"
#include "ncdlab/compressors/calgary.hpp"
#include "ncdlab/compressors/huffman.hpp"
#include "ncdlab/compressors/lz77.hpp"
#include "ncdlab/compressors/mtf.hpp"
#include "ncdlab/compressors/ppm.hpp"
#include "ncdlab/compressors/rle.hpp"

using namespace ncdlab;
using namespace ncdlab::codec;

namespace {

Bytes alpha() { return to_bytes("abcdefghijklmnopqrstuvwxyz"); }

// Exhaustive optimum: minimum weighted length over length vectors with
// Kraft sum exactly 1 (every optimal prefix code is complete).
std::uint64_t brute_force_optimum(const std::vector<std::uint64_t>& w) {
  const std::size_t n = w.size();
  if (n == 1) return w[0];
  std::vector<int> len(n, 1);
  std::uint64_t best = UINT64_MAX;
  const int max_len = static_cast<int>(n) - 1;
  while (true) {
    double kraft = 0;
    for (int l : len) kraft += std::ldexp(1.0, -l);
    if (std::abs(kraft - 1.0) < 1e-12) {
      std::uint64_t cost = 0;
      for (std::size_t i = 0; i < n; ++i) cost += w[i] * static_cast<std::uint64_t>(len[i]);
      best = std::min(best, cost);
    }
    std::size_t i = 0;
    while (i < n && ++len[i] > max_len) len[i++] = 1;
    if (i == n) break;
  }
  return best;
}

Bytes random_bytes(Rng& rng, std::size_t n) {
  Bytes b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng.below(256));
  return b;
}

std::pair<Bytes, std::size_t> naive_bwt(const Bytes& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> rot(n);
  std::iota(rot.begin(), rot.end(), 0);
  std::stable_sort(rot.begin(), rot.end(), [&](std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < n; ++k) {
      auto x = s[(a + k) % n], y = s[(b + k) % n];
      if (x != y) return x < y;
    }
    return false;
  });
  Bytes last(n);
  std::size_t primary = 0;
  for (std::size_t r = 0; r < n; ++r) {
    last[r] = s[(rot[r] + n - 1) % n];
    if (rot[r] == 0) primary = r;
  }
  return {last, primary};
}

}  // namespace

TEST(BitIo, RoundTripMixedWidths) {
  Bytes out;
  {
    BitWriter w(out);
    w.put_bit(1);
    w.put_bits(0x5, 3);
    w.put_bits(0x123456789ABCDEFULL, 60);
    w.put_bits(0, 0);
    w.put_bits(0xFFFFFFFFFFFFFFFFULL, 64);
  }
  BitReader r(out);
  EXPECT_EQ(r.get_bit(), 1u);
  EXPECT_EQ(r.get_bits(3), 0x5u);
  EXPECT_EQ(r.get_bits(60), 0x123456789ABCDEFULL);
  EXPECT_EQ(r.get_bits(64), 0xFFFFFFFFFFFFFFFFULL);
}

TEST(BitIo, ReadingPastEnd) {
  Bytes one{0x80};
  BitReader strict(one);
  strict.get_bits(8);
  EXPECT_THROW(strict.get_bit(), CorruptStreamError);
  BitReader lenient(one, true);
  lenient.get_bits(8);
  EXPECT_EQ(lenient.get_bits(5), 0u);
}

TEST(BitIo, Varint) {
  Bytes out;
  for (std::uint64_t v : {0ULL, 127ULL, 128ULL, 300ULL, 0xFFFFFFFFFFFFFFFFULL}) put_varint(out, v);
  std::size_t pos = 0;
  for (std::uint64_t v : {0ULL, 127ULL, 128ULL, 300ULL, 0xFFFFFFFFFFFFFFFFULL}) EXPECT_EQ(get_varint(out, pos), v);
  EXPECT_EQ(pos, out.size());
  Bytes cut{0x80};
  pos = 0;
  EXPECT_THROW(get_varint(cut, pos), CorruptStreamError);
}

TEST(Huffman, TwoSymbols) {
  auto code = huffman_build({{'a', 1}, {'b', 1}});
  EXPECT_EQ(code.codewords.at('a').size(), 1u);
  EXPECT_EQ(code.codewords.at('b').size(), 1u);
  EXPECT_NE(code.codewords.at('a'), code.codewords.at('b'));
}

TEST(Huffman, SingleSymbolGetsZero) {
  auto code = huffman_build({{'a', 7}});
  EXPECT_EQ(code.codewords.at('a'), "0");
}

TEST(Huffman, EmptyMapThrows) {
  EXPECT_THROW(huffman_build({}), ValidationError);
  EXPECT_THROW(huffman_build({{'a', 0}}), ValidationError);
}

TEST(Huffman, TextbookSixSymbols) {
  std::map<std::uint32_t, std::uint64_t> f{{'a', 45}, {'b', 13}, {'c', 12}, {'d', 16}, {'e', 9}, {'f', 5}};
  auto code = huffman_build(f);
  EXPECT_EQ(code.weighted_length(f), 224u);
  EXPECT_EQ(code.weighted_length(f), brute_force_optimum({45, 13, 12, 16, 9, 5}));
  EXPECT_EQ(code.codewords.at('a').size(), 1u);
}

TEST(Huffman, PrefixFreeAndKraftOnFuzzedMaps) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    std::map<std::uint32_t, std::uint64_t> f;
    std::size_t n = 1 + rng.below(40);
    for (std::size_t i = 0; i < n; ++i) f[static_cast<std::uint32_t>(rng.below(300))] = 1 + rng.below(1000);
    auto code = huffman_build(f);
    double kraft = 0;
    for (auto& [s, cw] : code.codewords) {
      kraft += std::ldexp(1.0, -static_cast<int>(cw.size()));
      for (auto& [s2, cw2] : code.codewords)
        if (s != s2) EXPECT_FALSE(cw2.compare(0, cw.size(), cw) == 0) << cw << " prefixes " << cw2;
    }
    EXPECT_LE(kraft, 1.0 + 1e-12);
  }
}

TEST(Huffman, OptimalAgainstExhaustiveSearch) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 2 + rng.below(5);
    std::map<std::uint32_t, std::uint64_t> f;
    std::vector<std::uint64_t> w;
    for (std::size_t i = 0; i < n; ++i) {
      w.push_back(1 + rng.below(100));
      f[static_cast<std::uint32_t>(i)] = w.back();
    }
    EXPECT_EQ(huffman_build(f).weighted_length(f), brute_force_optimum(w));
  }
}

TEST(CanonicalHuffman, EncodeDecodeAndTable) {
  std::vector<std::uint64_t> freqs(20, 0);
  freqs[1] = 50;
  freqs[4] = 3;
  freqs[7] = 20;
  freqs[19] = 1;
  auto code = CanonicalHuffman::from_frequencies(freqs);
  Bytes table;
  code.write_table(table);
  std::size_t pos = 0;
  auto back = CanonicalHuffman::read_table(table, pos, freqs.size());
  EXPECT_EQ(back.lengths(), code.lengths());

  Bytes out;
  std::vector<std::uint32_t> msg{1, 7, 4, 19, 1, 1, 7};
  {
    BitWriter w(out);
    for (auto s : msg) code.encode(w, s);
  }
  BitReader r(out);
  for (auto s : msg) EXPECT_EQ(back.decode(r), s);
}

TEST(CanonicalHuffman, RejectsOversubscribedLengths) {
  EXPECT_THROW(CanonicalHuffman::from_lengths({1, 1, 1}), CorruptStreamError);
}

TEST(Mtf, PebbleExample) {
  auto idx = mtf_encode(as_bytes("pebblepebble"), alpha());
  EXPECT_EQ(idx, (std::vector<std::uint8_t>{15, 5, 3, 0, 12, 2, 3, 1, 3, 0, 3, 2}));
  EXPECT_EQ(to_string(mtf_decode(idx, alpha())), "pebblepebble");
}

TEST(Mtf, RepeatsAndErrors) {
  EXPECT_EQ(mtf_encode(as_bytes("aaaa"), alpha()), (std::vector<std::uint8_t>{0, 0, 0, 0}));
  try {
    mtf_encode(as_bytes("abC"), alpha());
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);
  }
}

TEST(Mtf, RoundTripAndLocality) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    auto b = random_bytes(rng, rng.below(2000));
    EXPECT_EQ(mtf_decode(mtf_encode(b, identity_alphabet()), identity_alphabet()), b);
  }
  // Runs of a few symbols: MTF indices stay near the front.
  Bytes runs;
  for (int i = 0; i < 400; ++i) runs.insert(runs.end(), 1 + rng.below(6), static_cast<std::uint8_t>('a' + rng.below(4) * 5));
  auto idx = mtf_encode(runs, identity_alphabet());
  double mean_idx = std::accumulate(idx.begin(), idx.end(), 0.0) / idx.size();
  double mean_pos = std::accumulate(runs.begin(), runs.end(), 0.0) / runs.size();
  EXPECT_LT(mean_idx, mean_pos);
}

TEST(Bwt, SentenceExample) {
  auto blk = bwt_forward(as_bytes("sentence"));
  EXPECT_EQ(to_string(blk.transformed), "ntsceeen");
  EXPECT_EQ(blk.primary_index, 6u);
  EXPECT_EQ(to_string(bwt_inverse(blk)), "sentence");
}

TEST(Bwt, UniformBlockAndEmpty) {
  auto blk = bwt_forward(as_bytes("aaaa"));
  EXPECT_EQ(to_string(blk.transformed), "aaaa");
  EXPECT_EQ(blk.primary_index, 0u);
  EXPECT_THROW(bwt_forward(ByteView{}), ValidationError);
}

TEST(Bwt, MatchesRotationSortOracle) {
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng.below(200);
    Bytes b(n);
    // Small alphabets force many equal prefixes and periodic blocks.
    std::size_t sigma = 1 + rng.below(4);
    for (auto& x : b) x = static_cast<std::uint8_t>('a' + rng.below(sigma));
    if (t % 7 == 0) {
      Bytes unit(b.begin(), b.begin() + std::min<std::size_t>(n, 3));
      b.clear();
      while (b.size() < n) b.insert(b.end(), unit.begin(), unit.end());
    }
    auto [last, primary] = naive_bwt(b);
    auto blk = bwt_forward(b);
    EXPECT_EQ(blk.transformed, last);
    EXPECT_EQ(blk.primary_index, primary);
    EXPECT_EQ(bwt_inverse(blk), b);
  }
}

TEST(Rle, RunsAndEscapes) {
  EXPECT_EQ(rle_encode(as_bytes("aaaabb")), (Bytes{kRleMarker, 4, 'a', 'b', 'b'}));
  EXPECT_TRUE(rle_encode(ByteView{}).empty());
  Bytes marker{kRleMarker};
  EXPECT_EQ(rle_encode(marker), (Bytes{kRleMarker, 0}));
  EXPECT_THROW(rle_decode(Bytes{kRleMarker}), CorruptStreamError);
  EXPECT_THROW(rle_decode(Bytes{kRleMarker, 5}), CorruptStreamError);
}

TEST(Rle, RoundTripIncludingLongRuns) {
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    Bytes b;
    while (b.size() < 3000) {
      auto v = static_cast<std::uint8_t>(rng.below(4) == 0 ? 0xFF : rng.below(256));
      std::size_t run = rng.below(3) == 0 ? 250 + rng.below(20) : 1 + rng.below(4);
      b.insert(b.end(), run, v);
    }
    EXPECT_EQ(rle_decode(rle_encode(b)), b);
  }
}

TEST(Lz77, AbbeyTable) {
  auto toks = lz77_encode(as_bytes("the-abbess-and-the-abbot-are-in-the-abbey"));
  std::vector<Lz77Token> expect = {
      {0, 0, 't'},  {0, 0, 'h'},  {0, 0, 'e'},  {0, 0, '-'},  {0, 0, 'a'},  {0, 0, 'b'},
      {1, 1, 'e'},  {0, 0, 's'},  {1, 1, '-'},  {7, 1, 'n'},  {0, 0, 'd'},  {11, 1, 't'},
      {15, 6, 'o'}, {23, 1, '-'}, {21, 1, 'r'}, {25, 2, 'i'}, {18, 1, '-'}, {32, 8, 'y'}};
  EXPECT_EQ(toks, expect);
  EXPECT_EQ(to_string(lz77_decode(toks)), "the-abbess-and-the-abbot-are-in-the-abbey");
}

TEST(Lz77, TrivialAndOverlapping) {
  EXPECT_EQ(lz77_encode(as_bytes("a")), (std::vector<Lz77Token>{{0, 0, 'a'}}));
  auto toks = lz77_encode(as_bytes("aaaaaa"));
  EXPECT_EQ(toks, (std::vector<Lz77Token>{{0, 0, 'a'}, {1, 4, 'a'}}));
  EXPECT_EQ(to_string(lz77_decode(toks)), "aaaaaa");
}

TEST(Lz77, CorruptTokens) {
  EXPECT_THROW(lz77_decode({{3, 1, 'a'}}), CorruptStreamError);
  EXPECT_THROW(lz77_decode({{0, 2, 'a'}}), CorruptStreamError);
  EXPECT_THROW(lz77_decode({{0, 0, 'a'}, {1, 0, 'b'}}), CorruptStreamError);
}

TEST(Lz77, InvariantsAndDeterminism) {
  Rng rng(23);
  Lz77Params p;
  p.search_size = 64;
  p.lookahead_size = 8;
  for (int t = 0; t < 50; ++t) {
    Bytes b(rng.below(3000));
    for (auto& x : b) x = static_cast<std::uint8_t>('a' + rng.below(3));
    auto toks = lz77_encode(b, p);
    EXPECT_EQ(toks, lz77_encode(b, p));
    for (auto& tk : toks) {
      EXPECT_EQ(tk.offset == 0, tk.length == 0);
      EXPECT_LE(tk.offset, p.search_size);
      EXPECT_LE(tk.length, p.lookahead_size);
    }
    EXPECT_EQ(lz77_decode(toks), b);
  }
}

TEST(Ppm, BananasTrieCounts) {
  PpmModel m(2);
  for (char c : std::string("bananas")) m.encode(static_cast<std::uint8_t>(c));
  EXPECT_EQ(m.count("", 'a'), 3u);
  EXPECT_EQ(m.count("an", 'a'), 2u);
  EXPECT_EQ(m.count("a", 'n'), 2u);
  EXPECT_EQ(m.count("n", 'a'), 2u);
  EXPECT_EQ(m.count("", 's'), 1u);
  EXPECT_EQ(m.count("b", 'n'), 0u);
}

TEST(Ppm, OrderRange) {
  EXPECT_THROW(PpmModel(-1), ValidationError);
  EXPECT_THROW(PpmModel(kPpmMaxOrder + 1), ValidationError);
  EXPECT_NO_THROW(PpmModel(0));
}

TEST(Ppm, EstimateTracksCoderAndIsFinite) {
  Rng rng(29);
  for (int order : {0, 1, 3, 5}) {
    for (int t = 0; t < 5; ++t) {
      auto b = random_bytes(rng, 500 + rng.below(3000));
      if (t % 2) for (auto& x : b) x = static_cast<std::uint8_t>('a' + x % 5);
      double bits = ppm_estimate_bits(b, order);
      EXPECT_TRUE(std::isfinite(bits));
      auto payload = ppm_encode(b, order);
      EXPECT_LE(static_cast<double>(payload.size()), std::ceil(bits / 8) + 2);
      EXPECT_EQ(ppm_decode(payload, b.size(), order), b);
    }
  }
}

TEST(Ppm, RandomDataIncompressibleRepetitiveDataSmall) {
  Rng rng(31);
  auto rnd = random_bytes(rng, 4096);
  PpmBackend ppm;
  EXPECT_GE(ppm.compressed_len(rnd), static_cast<std::size_t>(0.95 * 4096));
  std::string ab;
  while (ab.size() < 2048) ab += "ab";
  EXPECT_LE(ppm.compressed_len(as_bytes(ab)), static_cast<std::size_t>(0.25 * 2048));
}

TEST(Arithmetic, UniformSymbolsRoundTrip) {
  Rng rng(37);
  std::vector<std::uint32_t> syms(5000);
  for (auto& s : syms) s = static_cast<std::uint32_t>(rng.below(7));
  Bytes out;
  {
    ArithmeticEncoder enc(out);
    for (auto s : syms) enc.encode(s, s + 1, 7);
    enc.finish();
  }
  ArithmeticDecoder dec(out);
  for (auto s : syms) {
    auto t = dec.target(7);
    EXPECT_EQ(t, s);
    dec.consume(t, t + 1, 7);
  }
}

class BackendTest : public ::testing::TestWithParam<std::string> {};

TEST_P(BackendTest, HeaderAndEmptyInput) {
  auto b = make_backend(GetParam());
  auto e1 = b->compress(ByteView{});
  EXPECT_EQ(e1, b->compress(ByteView{}));
  EXPECT_EQ(e1.size(), kMagicSize + 1);
  EXPECT_EQ(e1[0], 'N');
  EXPECT_EQ(e1[1], 'C');
  EXPECT_EQ(e1[3], kStreamVersion);
  EXPECT_TRUE(b->decompress(e1).empty());
}

TEST_P(BackendTest, RoundTripAndLengthLaw) {
  auto b = make_backend(GetParam());
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    Bytes x = random_bytes(rng, rng.below(20000));
    if (t % 2) for (auto& c : x) c = static_cast<std::uint8_t>("etaoin shrdlu"[c % 13]);
    auto z = b->compress(x);
    EXPECT_EQ(b->compressed_len(x), z.size());
    EXPECT_EQ(b->decompress(z), x);
  }
}

TEST_P(BackendTest, CorruptStreamsRejected) {
  auto b = make_backend(GetParam());
  EXPECT_THROW(b->decompress(as_bytes("XX")), CorruptStreamError);
  auto z = b->compress(as_bytes("hello hello hello world"));
  z[2] = z[2] == 'L' ? 'B' : 'L';
  EXPECT_THROW(b->decompress(z), CorruptStreamError);
  auto t = b->compress(as_bytes("hello hello hello world"));
  t.resize(t.size() / 2);
  EXPECT_THROW(b->decompress(t), CorruptStreamError);
}

TEST_P(BackendTest, SelfConcatenationCompressesWell) {
  auto b = make_backend(GetParam());
  std::string text;
  const char* words[] = {"the", "harbour", "boats", "tide", "water", "gulls", "quay", "and", "of", "in"};
  Rng rng(43);
  while (text.size() < 4000) {
    text += words[rng.below(10)];
    text += ' ';
  }
  auto xx = text + text;
  EXPECT_LT(b->compressed_len(as_bytes(xx)), 2 * b->compressed_len(as_bytes(text)));
}

INSTANTIATE_TEST_SUITE_P(All, BackendTest, ::testing::Values("lz", "bw", "ppm"));

TEST(Backends, BwOnLongRun) {
  Bytes a(64 * 1024, 'a');
  EXPECT_LT(BwBackend().compressed_len(a), 1024u);
}

TEST(Backends, ConfigIdsAndFactory) {
  EXPECT_NE(PpmBackend(2).config_id(), PpmBackend(3).config_id());
  EXPECT_EQ(make_backend("lz")->name(), "lz");
  EXPECT_THROW(make_backend("zip"), ValidationError);
  EXPECT_EQ(backend_names(), (std::vector<std::string>{"lz", "bw", "ppm"}));
}

TEST(Calgary, BitsPerByteAndSkipped) {
  EXPECT_DOUBLE_EQ(bits_per_byte(100, 100), 8.0);
  EXPECT_DOUBLE_EQ(bits_per_byte(0, 5), 0.0);
  EXPECT_EQ(calgary_files().size(), 14u);

  auto dir = std::filesystem::temp_directory_path() / "ncdlab_calgary_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "paper1") << std::string(3000, 'x') << "some text to compress some text";
  }
  LzBackend lz;
  auto table = calgary_benchmark(dir, {&lz});
  std::size_t skipped = 0, done = 0;
  for (auto& r : table.rows) {
    if (r.compressed) {
      ++done;
      EXPECT_TRUE(r.round_trip_ok);
      EXPECT_LT(*r.bpb(), 8.0);
    } else {
      ++skipped;
    }
  }
  EXPECT_EQ(done, 1u);
  EXPECT_EQ(skipped, 13u);
  std::ostringstream csv;
  table.write_csv(csv);
  EXPECT_NE(csv.str().find("skipped"), std::string::npos);
  EXPECT_NE(csv.str().find("AVERAGE"), std::string::npos);
  std::filesystem::remove_all(dir);
}
