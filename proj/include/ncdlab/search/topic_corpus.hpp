#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ncdlab/search/passages.hpp"

namespace ncdlab::search {

struct TopicQuery {
  std::string query_id;
  std::string topic;
  Bytes bytes;
};

struct TopicCorpus {
  std::vector<SourceDocument> documents;  ///< each tagged with its topic
  std::vector<TopicQuery> queries;
};

/// Reads dir/<topic>/<file>, holds out `queries_per_topic` seeded picks per
/// topic and concatenates the rest (in file-name order) into one document
/// per topic. Throws ValidationError naming a topic with too few files.
TopicCorpus build_topic_corpus(const std::filesystem::path& dir, std::size_t queries_per_topic, std::uint64_t seed);

/// out/corpus/<topic>.txt and out/queries/<topic>/<file>.
void write_topic_corpus(const TopicCorpus& corpus, const std::filesystem::path& out);

/// Loads a written layout back: corpus/*.txt become documents (topic from
/// the file stem) and queries/<topic>/* become queries.
TopicCorpus read_topic_corpus(const std::filesystem::path& dir);

struct PlantedOptions {
  std::size_t topics = 5;
  std::size_t docs_per_topic = 4;
  std::size_t doc_bytes = 8192;
  std::size_t queries_per_topic = 2;
  std::size_t query_bytes = 1024;
  std::size_t topic_vocabulary = 80;   ///< distinct keywords per topic
  std::size_t shared_vocabulary = 40;  ///< words common to every topic
  double topic_share = 0.5;            ///< chance a word comes from the topic list
  std::uint64_t seed = 1;
};

/// Synthetic corpus whose topics have disjoint keyword vocabularies.
/// Documents are single-space separated lowercase words.
TopicCorpus make_planted_corpus(const PlantedOptions& options);

}  // namespace ncdlab::search
