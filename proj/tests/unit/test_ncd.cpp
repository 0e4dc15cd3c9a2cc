#include <gtest/gtest.h>

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "ncdlab/common/bytes.hpp"
#include "ncdlab/common/error.hpp"
#include "ncdlab/common/rng.hpp"
#include "ncdlab/compressors/backend.hpp"
#include "ncdlab/ncd/matrix.hpp"
#include "ncdlab/ncd/ncd.hpp"

using namespace ncdlab;
using namespace ncdlab::ncd;

namespace {

std::string prose(std::uint64_t seed, std::size_t n, const std::vector<std::string>& vocab) {
  Rng rng(seed);
  std::string s;
  while (s.size() < n) {
    s += vocab[rng.below(vocab.size())];
    s += ' ';
  }
  return s;
}

const std::vector<std::string> kSea = {"boat", "tide", "harbour", "sail", "wind", "wave", "quay", "the", "and"};
const std::vector<std::string> kBread = {"dough", "oven", "flour", "yeast", "crust", "loaf", "bake", "the", "and"};

std::vector<Document> docs() {
  return {{"sea1", to_bytes(prose(1, 3000, kSea))},
          {"sea2", to_bytes(prose(2, 3000, kSea))},
          {"bread1", to_bytes(prose(3, 3000, kBread))},
          {"bread2", to_bytes(prose(4, 3000, kBread))}};
}

}  // namespace

TEST(Fingerprint, StreamingEqualsWhole) {
  auto x = as_bytes("hello "), y = as_bytes("world");
  Hasher h;
  h.update(x);
  h.update(y);
  EXPECT_EQ(h.digest(), fingerprint(as_bytes("hello world")));
  EXPECT_NE(fingerprint(as_bytes("ab")), fingerprint(as_bytes("ba")));
  EXPECT_NE(fingerprint(as_bytes("")), fingerprint(Bytes{0}));
}

TEST(NcdFormula, FromLengths) {
  EXPECT_DOUBLE_EQ(ncd_from_lengths(100, 80, 150, 160), 80.0 / 100.0);
  EXPECT_DOUBLE_EQ(ncd_from_lengths(100, 100, 100, 100), 0.0);
}

TEST(Ncd, EmptyInputRejected) {
  auto b = codec::make_backend("lz");
  EXPECT_THROW(ncd::ncd(*b, ByteView{}, as_bytes("x")), ValidationError);
  EXPECT_THROW(ncd::ncd(*b, as_bytes("x"), ByteView{}), ValidationError);
}

TEST(Ncd, IdentityAndSeparation) {
  auto d = docs();
  for (auto name : {"lz", "bw", "ppm"}) {
    auto b = codec::make_backend(name);
    double self = ncd::ncd(*b, d[0].bytes, d[0].bytes);
    double same = ncd::ncd(*b, d[0].bytes, d[1].bytes);
    double other = ncd::ncd(*b, d[0].bytes, d[2].bytes);
    EXPECT_LT(self, same) << name;
    EXPECT_LT(same, other) << name;
    EXPECT_LT(other, kHardUpperBound) << name;
  }
}

TEST(Ncd, LzSelfDistanceOnProse) {
  std::ifstream in(NCDLAB_DATA_DIR "/corpus/desk/texts/sea_voyage.txt", std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  ASSERT_GT(text.size(), 1024u);
  codec::LzBackend lz;
  EXPECT_LE(ncd::ncd(lz, as_bytes(text), as_bytes(text)), kSelfDistanceCeiling);
}

TEST(Ncd, SymmetricByConstruction) {
  auto d = docs();
  auto b = codec::make_backend("bw");
  EXPECT_DOUBLE_EQ(ncd::ncd(*b, d[0].bytes, d[2].bytes), ncd::ncd(*b, d[2].bytes, d[0].bytes));
}

TEST(Cache, HitsAndConsistency) {
  auto d = docs();
  auto b = codec::make_backend("lz");
  CompressedLengthCache cache;
  double first = ncd::ncd(*b, d[0].bytes, d[1].bytes, &cache);
  auto misses = cache.misses();
  EXPECT_EQ(misses, 4u);
  double second = ncd::ncd(*b, d[0].bytes, d[1].bytes, &cache);
  EXPECT_EQ(first, second);
  EXPECT_EQ(cache.misses(), misses);
  EXPECT_EQ(cache.hits(), 4u);
  EXPECT_EQ(cache.length_of_concat(*b, d[0].bytes, d[1].bytes), b->compressed_len(concat(d[0].bytes, d[1].bytes)));
  // A different configuration never shares entries.
  auto ppm = codec::make_backend("ppm");
  cache.length(*ppm, d[0].bytes);
  EXPECT_EQ(cache.size(), 5u);
}

TEST(Matrix, ShapeDiagonalAndWorkerIndependence) {
  auto d = docs();
  auto b = codec::make_backend("lz");
  auto m1 = ncd_matrix(*b, d);
  MatrixOptions opt;
  opt.workers = 3;
  opt.use_cache = false;
  auto m3 = ncd_matrix(*b, d, opt);
  ASSERT_EQ(m1.size(), 4u);
  EXPECT_EQ(m1.values, m3.values);
  EXPECT_EQ(m1.labels, (std::vector<std::string>{"sea1", "sea2", "bread1", "bread2"}));
  EXPECT_EQ(m1.backend_name, "lz");
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(m1.at(i, i), m1.at(i, i ^ 1));
  EXPECT_LT(m1.at(0, 1), m1.at(0, 2));
  EXPECT_GE(m1.max_asymmetry, 0.0);

  opt.skip_diagonal = true;
  auto ms = ncd_matrix(*b, d, opt);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(ms.at(i, i), 0.0);
}

TEST(Matrix, RejectsDegenerateInput) {
  auto b = codec::make_backend("lz");
  EXPECT_THROW(ncd_matrix(*b, {{"a", to_bytes("abc")}}), ValidationError);
  EXPECT_THROW(ncd_matrix(*b, {{"a", to_bytes("abc")}, {"b", {}}}), ValidationError);
}

TEST(Matrix, CsvAndSquareRoundTrip) {
  NcdMatrix m;
  m.labels = {"a", "b", "c"};
  m.values = {{0.01, 0.5, 0.75}, {0.5, 0.02, 0.9}, {0.75, 0.9, 0.0}};
  std::ostringstream csv, sq;
  write_csv(csv, m);
  write_square(sq, m);
  EXPECT_EQ(csv.str().substr(0, 9), "id,a,b,c\n");
  EXPECT_EQ(sq.str().substr(0, 2), "3\n");
  std::istringstream in1(csv.str()), in2(sq.str()), in3(csv.str()), in4(sq.str());
  auto r1 = read_csv(in1), r2 = read_square(in2), r3 = read_matrix(in3), r4 = read_matrix(in4);
  for (auto* r : {&r1, &r2, &r3, &r4}) {
    EXPECT_EQ(r->labels, m.labels);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(r->at(i, j), m.at(i, j), 1e-9);
  }
}

TEST(Matrix, MalformedFiles) {
  std::istringstream ragged("id,a,b\na,0,1\nb,1\n");
  EXPECT_THROW(read_csv(ragged), ParseError);
  std::istringstream bad_n("x\n");
  EXPECT_THROW(read_square(bad_n), ParseError);
  std::istringstream not_num("2\na 0 q\nb 1 0\n");
  EXPECT_THROW(read_square(not_num), ParseError);
}
