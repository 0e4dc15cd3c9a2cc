// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ncdlab/clustering/dendrogram.hpp"
#include "ncdlab/clustering/error_metric.hpp"
#include "ncdlab/common/error.hpp"
#include "ncdlab/common/rng.hpp"
#include "ncdlab/compressors/backend.hpp"
#include "ncdlab/compressors/bwt.hpp"
#include "ncdlab/compressors/huffman.hpp"
#include "ncdlab/compressors/lz77.hpp"
#include "ncdlab/compressors/mtf.hpp"
#include "ncdlab/experiments/config.hpp"
#include "ncdlab/experiments/dataset.hpp"
#include "ncdlab/experiments/search_eval.hpp"
#include "ncdlab/ncd/matrix.hpp"
#include "ncdlab/ncd/ncd.hpp"
#include "ncdlab/search/passages.hpp"
#include "ncdlab/search/precision.hpp"
#include "ncdlab/search/query.hpp"
#include "ncdlab/search/store.hpp"
#include "ncdlab/search/topic_corpus.hpp"
#include "ncdlab/textops/distortion.hpp"
#include "ncdlab/textops/entropy.hpp"
#include "ncdlab/textops/frequency_table.hpp"

using namespace ncdlab;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

const fs::path kData = NCDLAB_DATA_DIR;
const fs::path kConfigs = NCDLAB_CONFIG_DIR;

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (detail.find(what) != std::string::npos) return;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (budget_s > 0 && secs > budget_s) o.check(false, "took longer than " + std::to_string(budget_s) + " s");
  if (!o.ok) ++failures;
  std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << std::fixed
            << std::setprecision(2) << secs << " s)";
  if (!o.detail.empty()) std::cout << " -- " << o.detail;
  std::cout << std::endl;
}

// Runs `fn(i)` for i in [0, n) over the available cores.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) fn(i);
    });
  for (auto& th : pool) th.join();
}

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

// Mixed fuzz input: random bytes, word salad, or long repeats.
Bytes fuzz_input(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = rng.below(64 * 1024 + 1);
  Bytes b;
  b.reserve(n);
  switch (seed % 3) {
    case 0:
      while (b.size() < n) b.push_back(static_cast<std::uint8_t>(rng.below(256)));
      break;
    case 1: {
      static const char* words[] = {"the", "harbour", "at", "dawn", "bread", "rises", "slowly", "and", "\n", "."};
      while (b.size() < n) {
        for (const char* c = words[rng.below(10)]; *c && b.size() < n; ++c) b.push_back(static_cast<std::uint8_t>(*c));
        if (b.size() < n) b.push_back(' ');
      }
      break;
    }
    default: {
      const std::size_t period = 1 + rng.below(300);
      Bytes unit(period);
      for (auto& x : unit) x = static_cast<std::uint8_t>(rng.below(4) ? rng.below(8) : rng.below(256));
      while (b.size() < n) b.push_back(unit[b.size() % period]);
    }
  }
  return b;
}

std::vector<std::pair<std::size_t, std::size_t>> stride_oracle(std::size_t len, std::size_t w, std::size_t o) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (len == 0) return out;
  for (std::size_t k = 0;; ++k) {
    const std::size_t off = k * (w - o), end = std::min(len, off + w);
    out.emplace_back(off, end - off);
    if (end == len) break;
  }
  return out;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + NCDLAB_CLI + "\" " + args;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

}  // namespace

int main() {
  criterion(1, "move-to-front of pebblepebble", 1.0, [] {
    Outcome o;
    const auto got = codec::mtf_encode(as_bytes("pebblepebble"), as_bytes("abcdefghijklmnopqrstuvwxyz"));
    const std::vector<std::uint8_t> want{15, 5, 3, 0, 12, 2, 3, 1, 3, 0, 3, 2};
    o.check(got == want, "indices differ");
    o.check(codec::mtf_decode(got, as_bytes("abcdefghijklmnopqrstuvwxyz")) == to_bytes("pebblepebble"),
            "inverse differs");
    return o;
  });

  criterion(2, "Burrows-Wheeler transform of sentence", 0, [] {
    Outcome o;
    const auto block = codec::bwt_forward(as_bytes("sentence"));
    o.check(block.transformed == to_bytes("ntsceeen"), "last column is " + to_string(block.transformed));
    o.check(block.primary_index == 6, "primary index is " + std::to_string(block.primary_index));
    o.check(codec::bwt_inverse(block) == to_bytes("sentence"), "inverse differs");
    return o;
  });

  criterion(3, "LZ77 tokens of the abbey phrase", 0, [] {
    Outcome o;
    using T = codec::Lz77Token;
    const std::vector<T> want{{0, 0, 't'}, {0, 0, 'h'},  {0, 0, 'e'},  {0, 0, '-'},  {0, 0, 'a'},  {0, 0, 'b'},
                              {1, 1, 'e'}, {0, 0, 's'},  {1, 1, '-'},  {7, 1, 'n'},  {0, 0, 'd'},  {11, 1, 't'},
                              {15, 6, 'o'}, {23, 1, '-'}, {21, 1, 'r'}, {25, 2, 'i'}, {18, 1, '-'}, {32, 8, 'y'}};
    const std::string text = "the-abbess-and-the-abbot-are-in-the-abbey";
    const auto got = codec::lz77_encode(as_bytes(text));
    o.check(got == want, "token table differs");
    o.check(codec::lz77_decode(got) == to_bytes(text), "decode differs");
    return o;
  });

  criterion(4, "clustering error of the books example", 0, [] {
    Outcome o;
    const auto tree = cluster::parse_newick(
        "((((AP.AEoC,(MdC.DQ,MdC.TENoC)),(WS.H,WS.AaC)),(AP.AEoM,AP.TRotLaOP)),"
        "((EAP.TFotHoU,(EAP.TR,NM.TP)),(NM.DotFDoTL,NM.HoFaotAoI)),(AC.SA,AC.TMAaS));");
    cluster::ClusterAssignment a;
    for (const auto& l : tree.leaves()) a[l] = l.substr(0, l.find('.'));
    const auto r = cluster::clustering_error(tree, a);
    o.check(r.error == 9, "error " + std::to_string(r.error));
    o.check(r.achieved_sum == 23, "achieved " + std::to_string(r.achieved_sum));
    o.check(r.perfect_sum == 14, "perfect " + std::to_string(r.perfect_sum));
    const std::vector<std::size_t> sizes{2, 3, 2, 2, 3, 2};
    o.check(cluster::perfect_sum(sizes) == 14, "perfect_sum of sizes differs");
    return o;
  });

  criterion(5, "Shannon entropy", 0, [] {
    Outcome o;
    const std::vector<double> coin{0.5, 0.5}, uniform(32, 1.0 / 32);
    o.check(std::abs(text::entropy(coin) - 1.0) < 1e-12, "coin " + fmt(text::entropy(coin)));
    o.check(std::abs(text::entropy(uniform) - 5.0) < 1e-12, "uniform " + fmt(text::entropy(uniform)));
    return o;
  });

  criterion(6, "round trip of 1000 mixed inputs per backend", 300, [] {
    Outcome o;
    std::atomic<int> bad{0};
    std::mutex m;
    std::string first_bad;
    for (const auto& name : codec::backend_names()) {
      const auto backend = codec::make_backend(name);
      parallel_for(1000, [&](std::size_t i) {
        const auto input = fuzz_input(mix_seed(2024, i));
        bool ok;
        try {
          ok = backend->decompress(backend->compress(input)) == input;
        } catch (const std::exception&) {
          ok = false;
        }
        if (!ok) {
          ++bad;
          std::lock_guard lock(m);
          if (first_bad.empty()) first_bad = name + " input " + std::to_string(i);
        }
      });
    }
    o.check(bad == 0, std::to_string(bad.load()) + " mismatches, first " + first_bad);
    return o;
  });

  criterion(7, "Huffman optimality against brute force", 60, [] {
    Outcome o;
    Rng rng(77);
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 1 + rng.below(6);
      std::map<std::uint32_t, std::uint64_t> freqs;
      std::vector<std::uint64_t> w;
      for (std::size_t s = 0; s < n; ++s) {
        w.push_back(1 + rng.below(100));
        freqs[static_cast<std::uint32_t>(s)] = w.back();
      }
      if (codec::huffman_build(freqs).weighted_length(freqs) != brute_force_optimum(w)) ++bad;
    }
    o.check(bad == 0, std::to_string(bad) + " non-optimal codes");
    return o;
  });

  criterion(8, "desk corpus distances", 120, [] {
    Outcome o;
    const auto docs = exp::read_documents(kData / "corpus/desk/texts");
    o.check(docs.size() >= 12, "only " + std::to_string(docs.size()) + " texts");
    for (const auto& d : docs)
      o.check(d.bytes.size() >= 2 * 1024 && d.bytes.size() <= 50 * 1024, d.id + " outside 2-50 KB");

    const auto table = text::FrequencyTable::load(kData / "freq/en_wordfreq.tsv");
    const int stages[] = {2, 4, 6, 8};
    std::vector<text::RemovalSet> sets;
    for (int s : stages) sets.push_back(text::build_removal_set(table, text::Selection::MFW, text::Level::from_tenths(s), 5));

    for (const auto& name : codec::backend_names()) {
      const auto backend = codec::make_backend(name);
      std::vector<ncd::Document> nd;
      for (const auto& d : docs) nd.push_back({d.id, d.bytes});
      ncd::MatrixOptions mo;
      mo.workers = std::max(1u, std::thread::hardware_concurrency());
      const auto m = ncd::ncd_matrix(*backend, nd, mo);
      double worst_self = 0, worst = 0;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
          worst = std::max(worst, m.at(i, j));
          if (i == j) worst_self = std::max(worst_self, m.at(i, i));
        }
      o.check(worst_self <= 0.1, name + " self-distance up to " + fmt(worst_self));
      o.check(worst < 1.5, name + " distance " + fmt(worst));

      std::atomic<int> not_increasing{0};
      std::atomic<int> too_large{0};
      parallel_for(docs.size(), [&](std::size_t i) {
        const auto tokens = text::normalize_and_tokenize(to_string(docs[i].bytes));
        const auto original = to_bytes(tokens.text());
        double prev = -1;
        for (const auto& set : sets) {
          const auto corrupted = text::distort(tokens, set, text::Substitution::RandomChar, 11, docs[i].id);
          const double d = ncd::ncd(*backend, original, as_bytes(corrupted.bytes));
          if (d >= 1.5) ++too_large;
          if (d <= prev) ++not_increasing;
          prev = d;
        }
      });
      o.check(not_increasing == 0, name + ": " + std::to_string(not_increasing.load()) + " non-increasing stages");
      o.check(too_large == 0, name + ": corrupted distance >= 1.5");
    }
    return o;
  });

  criterion(9, "distortion invariants over the desk corpus", 0, [] {
    Outcome o;
    const auto ds = exp::load_dataset(kData / "corpus/desk/texts", kData / "corpus/desk/clusters.tsv");
    const auto table = text::FrequencyTable::load(kData / "freq/en_wordfreq.tsv");
    Rng rng(9);
    int trials = 0;
    for (const auto& doc : ds.documents) {
      for (int rep = 0; rep < 20; ++rep, ++trials) {
        const auto sel = static_cast<text::Selection>(rng.below(3));
        const int lo = static_cast<int>(rng.below(11)), hi = lo + static_cast<int>(rng.below(11 - lo));
        const std::uint64_t seed = rng.below(1u << 30);
        const auto small = text::build_removal_set(table, sel, text::Level::from_tenths(lo), seed);
        const auto big = text::build_removal_set(table, sel, text::Level::from_tenths(hi), seed);
        for (const auto& w : small.words)
          if (!big.contains(w)) {
            o.check(false, "removal sets not nested");
            break;
          }
        const auto sub = rng.below(2) ? text::Substitution::Asterisk : text::Substitution::RandomChar;
        const auto a = text::distort(doc.tokens, big, sub, seed, doc.id);
        const auto b = text::distort(doc.tokens, big, sub, seed, doc.id);
        o.check(a.bytes == b.bytes, "distortion not deterministic");
        o.check(a.bytes.size() == doc.tokens.text().size(), "length changed for " + doc.id);
        o.check(a.words_total == doc.tokens.word_count(), "word count changed");
        const auto words = doc.tokens.words();
        std::size_t expected = 0;
        for (auto w : words) expected += big.contains(w);
        o.check(a.words_replaced == expected, "replaced count differs from the removal set");
        // Shuffles permute the space-separated tokens.
        const auto shuffled = text::shuffle_variant(a, text::Shuffle::ShuffleAll, seed);
        auto bag = [](const std::string& s) {
          std::vector<std::string> t;
          std::istringstream in(s);
          for (std::string w; in >> w;) t.push_back(w);
          std::sort(t.begin(), t.end());
          return t;
        };
        o.check(bag(a.bytes) == bag(shuffled.bytes), "shuffle is not a token permutation");
      }
      const auto mfw = text::build_removal_set(table, text::Selection::MFW, text::Level::from_tenths(10), 1);
      const auto lfw = text::build_removal_set(table, text::Selection::LFW, text::Level::from_tenths(10), 1);
      o.check(text::distort(doc.tokens, mfw, text::Substitution::Asterisk, 3).bytes ==
                  text::distort(doc.tokens, lfw, text::Substitution::Asterisk, 3).bytes,
              "MFW and LFW differ at 1.0");
    }
    o.detail = o.ok ? std::to_string(trials) + " randomized trials" : o.detail;
    return o;
  });

  criterion(10, "curve sweep on the desk corpus", 900, [] {
    Outcome o;
    const auto config = exp::load_config(kConfigs / "desk_curve.json");
    const auto out = fs::temp_directory_path() / "ncdlab_acceptance_curve";
    fs::remove_all(out);
    const int code = run_cli("curve \"" + (kConfigs / "desk_curve.json").string() + "\" --workers 4 -o \"" +
                             out.string() + "\" 2>/dev/null");
    o.check(code == 0, "curve exited " + std::to_string(code));
    const auto rows = read_csv(out / "curve.csv");
    o.check(!rows.empty() && rows[0].size() == 8 && rows[0][0] == "backend", "bad header");
    if (!o.ok) return o;

    std::size_t variants = 0;
    for (auto sub : config.substitutions)
      for (auto sh : config.shuffles)
        if (sub == text::Substitution::Asterisk || sh == text::Shuffle::None) ++variants;
    const std::size_t want = config.backends.size() * config.selections.size() * variants * config.levels.size();
    o.check(rows.size() - 1 == want, std::to_string(rows.size() - 1) + " rows, expected " + std::to_string(want));

    // key without selection -> selection -> (error, mean)
    std::map<std::string, std::map<std::string, std::pair<std::string, std::string>>> at;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& c = rows[r];
      if (c.size() != 8 || c[5].empty()) {
        o.check(false, "incomplete row " + std::to_string(r));
        continue;
      }
      at[c[0] + "," + c[2] + "," + c[3] + "," + c[4]][c[1]] = {c[5], c[6]};
    }
    int zero_mismatch = 0, full_mismatch = 0;
    for (const auto& [key, by_sel] : at) {
      const bool level0 = key.ends_with(",0.0"), level1 = key.ends_with(",1.0");
      if (level0)
        for (const auto& [sel, v] : by_sel) zero_mismatch += v != by_sel.begin()->second;
      if (level1 && by_sel.contains("mfw") && by_sel.contains("lfw"))
        full_mismatch += by_sel.at("mfw") != by_sel.at("lfw");
    }
    o.check(zero_mismatch == 0, std::to_string(zero_mismatch) + " level-0.0 rows differ across selections");
    o.check(full_mismatch == 0, std::to_string(full_mismatch) + " level-1.0 rows differ between MFW and LFW");
    fs::remove_all(out);
    return o;
  });

  criterion(11, "passage search", 300, [] {
    Outcome o;
    const auto corpus = search::make_planted_corpus({});
    const auto stores = search::index_corpus(corpus.documents, 8);
    const codec::LzBackend lz;

    Rng rng(11);
    double worst = 0;
    for (int t = 0; t < 20; ++t) {
      const auto& store = stores[rng.below(stores.size())];
      const auto& p = store.passages[rng.below(store.passages.size())];
      if (p.bytes.size() != store.window_bytes()) continue;
      const auto r = search::query(stores, lz, p.bytes, 3, {"dup", 4, nullptr});
      o.check(r.ranking[0].doc_id == p.doc_id && r.ranking[0].offset == p.offset, "duplicate not ranked first");
      worst = std::max(worst, r.ranking[0].score);
    }
    o.check(worst <= 0.1, "duplicate NCD up to " + fmt(worst));

    for (std::size_t size = 1; size <= 9 * 1024; size += 97) {
      const auto& s = search::select_store(stores, size);
      std::size_t want = stores.back().window_kb;
      for (const auto& c : stores)
        if (c.window_bytes() >= size) {
          want = c.window_kb;
          break;
        }
      if (s.window_kb != want) {
        o.check(false, "store selection wrong for " + std::to_string(size) + " bytes");
        break;
      }
    }

    Rng frng(111);
    for (int t = 0; t < 100; ++t) {
      const std::size_t len = 1 + frng.below(50000), w = 1 + frng.below(8192), ov = frng.below(w);
      if (search::window_spans(len, w, ov) != stride_oracle(len, w, ov)) {
        o.check(false, "segment offsets differ from the stride oracle");
        break;
      }
    }

    auto config = exp::load_config(kConfigs / "planted_search.json");
    config.levels = {text::Level::from_tenths(0)};
    const auto table = text::FrequencyTable::load(config.frequency_list);
    const auto eval = exp::run_search_eval(config, exp::load_search_corpus(*config.search), table);
    const double p5 = eval.rows.at(0).precision.at(5);
    o.check(p5 >= 0.6, "P@5 " + fmt(p5));
    if (o.ok) o.detail = "duplicate NCD <= " + fmt(worst) + ", P@5 " + fmt(p5);
    return o;
  });

  criterion(12, "precision at 10", 0, [] {
    Outcome o;
    const bool rel[] = {true, false, true, true, false, true, false, true, false, true};
    const double p = search::precision_at(rel, 10);
    o.check(std::abs(p - 0.6) < 1e-12, "got " + fmt(p));
    return o;
  });

  if (failures)
    std::cout << failures << (failures == 1 ? " criterion" : " criteria") << " failed" << std::endl;
  else
    std::cout << "all criteria passed" << std::endl;
  return failures ? 1 : 0;
}
