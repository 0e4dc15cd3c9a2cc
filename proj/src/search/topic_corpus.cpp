#include "ncdlab/search/topic_corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>

#include "ncdlab/common/error.hpp"
#include "ncdlab/common/rng.hpp"

namespace ncdlab::search {
namespace {

namespace fs = std::filesystem;

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  return Bytes((std::istreambuf_iterator<char>(in)), {});
}

void write_file(const fs::path& path, ByteView bytes) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + path.string());
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool directories) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (directories ? e.is_directory() : e.is_regular_file()) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// Word index with probability proportional to 1 / (rank + 1).
std::size_t zipf_pick(Rng& rng, const std::vector<double>& cumulative) {
  const double u = rng.unit() * cumulative.back();
  return static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
}

}  // namespace

TopicCorpus build_topic_corpus(const fs::path& dir, std::size_t queries_per_topic, std::uint64_t seed) {
  if (!fs::is_directory(dir)) throw ValidationError("no such directory " + dir.string());
  TopicCorpus corpus;
  for (const auto& topic_dir : sorted_entries(dir, true)) {
    const std::string topic = topic_dir.filename().string();
    auto files = sorted_entries(topic_dir, false);
    if (files.size() < queries_per_topic + 1)
      throw ValidationError("topic '" + topic + "' has " + std::to_string(files.size()) + " documents, needs " +
                            std::to_string(queries_per_topic + 1));
    std::vector<std::size_t> pick(files.size());
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    Rng rng(mix_seed(seed, stable_hash(topic)));
    rng.shuffle(std::span<std::size_t>(pick));
    std::vector<bool> held_out(files.size(), false);
    for (std::size_t q = 0; q < queries_per_topic; ++q) held_out[pick[q]] = true;

    SourceDocument merged{topic, topic, {}};
    for (std::size_t i = 0; i < files.size(); ++i) {
      Bytes bytes = read_file(files[i]);
      if (held_out[i]) {
        corpus.queries.push_back({topic + "/" + files[i].filename().string(), topic, std::move(bytes)});
      } else {
        merged.bytes.insert(merged.bytes.end(), bytes.begin(), bytes.end());
      }
    }
    corpus.documents.push_back(std::move(merged));
  }
  if (corpus.documents.empty()) throw ValidationError("no topic directories under " + dir.string());
  return corpus;
}

void write_topic_corpus(const TopicCorpus& corpus, const fs::path& out) {
  for (const auto& d : corpus.documents) write_file(out / "corpus" / (d.doc_id + ".txt"), d.bytes);
  for (const auto& q : corpus.queries) write_file(out / "queries" / q.query_id, q.bytes);
}

TopicCorpus read_topic_corpus(const fs::path& dir) {
  TopicCorpus corpus;
  if (!fs::is_directory(dir / "corpus")) throw ValidationError("no corpus directory under " + dir.string());
  for (const auto& f : sorted_entries(dir / "corpus", false)) {
    const std::string topic = f.stem().string();
    corpus.documents.push_back({topic, topic, read_file(f)});
  }
  if (fs::is_directory(dir / "queries")) {
    for (const auto& topic_dir : sorted_entries(dir / "queries", true)) {
      const std::string topic = topic_dir.filename().string();
      for (const auto& f : sorted_entries(topic_dir, false))
        corpus.queries.push_back({topic + "/" + f.filename().string(), topic, read_file(f)});
    }
  }
  return corpus;
}

TopicCorpus make_planted_corpus(const PlantedOptions& options) {
  if (options.topics == 0 || options.docs_per_topic == 0 || options.topic_vocabulary == 0)
    throw ValidationError("planted corpus needs topics, documents and a vocabulary");
  Rng rng(options.seed);
  std::set<std::string> used;
  auto fresh_word = [&] {
    while (true) {
      std::string w;
      const auto len = 3 + rng.below(7);
      for (std::size_t i = 0; i < len; ++i) w += static_cast<char>('a' + rng.below(26));
      if (used.insert(w).second) return w;
    }
  };
  auto make_list = [&](std::size_t count) {
    std::vector<std::string> words;
    for (std::size_t i = 0; i < count; ++i) words.push_back(fresh_word());
    return words;
  };
  auto weights = [](std::size_t count) {
    std::vector<double> cumulative;
    double sum = 0.0;
    for (std::size_t r = 0; r < count; ++r) cumulative.push_back(sum += 1.0 / static_cast<double>(r + 1));
    return cumulative;
  };

  const auto shared = make_list(std::max<std::size_t>(options.shared_vocabulary, 1));
  const auto shared_w = weights(shared.size());
  std::vector<std::vector<std::string>> topic_words;
  for (std::size_t t = 0; t < options.topics; ++t) topic_words.push_back(make_list(options.topic_vocabulary));
  const auto topic_w = weights(options.topic_vocabulary);

  auto text = [&](std::size_t topic, std::size_t bytes) {
    std::string out;
    while (out.size() < bytes) {
      if (!out.empty()) out += ' ';
      const bool keyword = rng.unit() < options.topic_share || options.shared_vocabulary == 0;
      out += keyword ? topic_words[topic][zipf_pick(rng, topic_w)] : shared[zipf_pick(rng, shared_w)];
    }
    out.resize(bytes);
    if (out.back() == ' ') out.back() = 'a';
    return to_bytes(out);
  };

  TopicCorpus corpus;
  for (std::size_t t = 0; t < options.topics; ++t) {
    const std::string topic = "topic" + std::to_string(t);
    for (std::size_t d = 0; d < options.docs_per_topic; ++d)
      corpus.documents.push_back({topic + "-doc" + std::to_string(d), topic, text(t, options.doc_bytes)});
    for (std::size_t q = 0; q < options.queries_per_topic; ++q)
      corpus.queries.push_back({topic + "-query" + std::to_string(q), topic, text(t, options.query_bytes)});
  }
  return corpus;
}

}  // namespace ncdlab::search
