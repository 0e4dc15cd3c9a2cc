#include "ncdlab/experiments/search_eval.hpp"

#include <sstream>

#include "ncdlab/common/error.hpp"
#include "ncdlab/common/rng.hpp"
#include "ncdlab/experiments/dataset.hpp"
#include "ncdlab/ncd/ncd.hpp"
#include "ncdlab/search/query.hpp"
#include "ncdlab/search/store.hpp"
#include "ncdlab/textops/distortion.hpp"
#include "ncdlab/textops/tokenizer.hpp"

namespace ncdlab::exp {

search::TopicCorpus load_search_corpus(const SearchSettings& settings) {
  if (settings.planted) {
    search::PlantedOptions planted;
    planted.seed = settings.planted_seed;
    return search::make_planted_corpus(planted);
  }
  return search::read_topic_corpus(*settings.corpus);
}

SearchEvalResult run_search_eval(const ExperimentConfig& config, const search::TopicCorpus& corpus,
                                 const text::FrequencyTable& table, const SearchEvalOptions& options) {
  if (!config.search) throw ValidationError("config has no search section");
  const SearchSettings& s = *config.search;
  if (corpus.documents.empty()) throw ValidationError("search corpus has no documents");
  if (corpus.queries.empty()) throw ValidationError("search corpus has no queries");
  const auto backend = codec::make_backend(s.backend);
  const std::uint64_t seed = config.seeds.front();

  std::vector<text::TokenStream> docs;
  for (const auto& d : corpus.documents) docs.push_back(text::normalize_and_tokenize(to_string(d.bytes)));
  std::vector<Bytes> queries;
  for (const auto& q : corpus.queries) queries.push_back(to_bytes(text::normalize(to_string(q.bytes))));

  SearchEvalResult result;
  result.ks = s.ks;
  result.queries = queries.size();
  std::size_t max_k = 0;
  for (auto k : s.ks) max_k = std::max(max_k, k);

  ncd::CompressedLengthCache cache;
  const search::OverlapPolicy overlap{s.overlap};
  for (const auto level : config.levels) {
    const auto set = text::build_removal_set(table, s.selection, level, seed);
    std::vector<search::SourceDocument> distorted;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto& src = corpus.documents[i];
      auto d = text::distort(docs[i], set, s.substitution, mix_seed(seed, stable_hash(src.doc_id)), src.doc_id);
      distorted.push_back({src.doc_id, src.topic, to_bytes(d.bytes)});
    }
    const auto stores = search::index_corpus(distorted, s.max_window_kb, overlap);

    std::vector<search::SearchResult> results;
    std::vector<search::Relevance> relevance;
    for (std::size_t q = 0; q < queries.size(); ++q) {
      if (queries[q].empty()) throw ValidationError("query '" + corpus.queries[q].query_id + "' is empty");
      search::QueryOptions qo{corpus.queries[q].query_id, config.workers, &cache};
      results.push_back(search::query(stores, *backend, queries[q], max_k, qo));
      relevance.push_back(search::same_topic(corpus.queries[q].topic));
      if (level.tenths() == 0 && q == 0)
        result.passages = search::select_store(stores, queries[q].size()).passages.size();
    }
    result.rows.push_back({level, search::precision_at_k(results, relevance, s.ks)});
    if (options.log) options.log("search eval: level " + level.str() + " done");
  }
  return result;
}

void write_search_eval(const SearchEvalResult& result, const std::filesystem::path& dir) {
  std::ostringstream out;
  out << "level";
  for (auto k : result.ks) out << ",P@" << k;
  out << '\n';
  out.setf(std::ios::fixed);
  out.precision(4);
  for (const auto& row : result.rows) {
    out << row.level.str();
    for (auto k : result.ks) out << ',' << row.precision.at(k);
    out << '\n';
  }
  write_file(dir / "precision.csv", out.str());
}

}  // namespace ncdlab::exp
