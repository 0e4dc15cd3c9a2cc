#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "ncdlab/experiments/config.hpp"
#include "ncdlab/search/precision.hpp"
#include "ncdlab/search/topic_corpus.hpp"
#include "ncdlab/textops/frequency_table.hpp"

namespace ncdlab::exp {

struct SearchEvalRow {
  text::Level level;
  search::PrecisionCurve precision;
};

struct SearchEvalResult {
  std::vector<std::size_t> ks;
  std::size_t queries = 0;
  std::size_t passages = 0;  ///< passages in the store the queries used at level 0
  std::vector<SearchEvalRow> rows;
};

struct SearchEvalOptions {
  std::function<void(const std::string&)> log;
};

/// The corpus named by the config's search settings (planted or on disk).
search::TopicCorpus load_search_corpus(const SearchSettings& settings);

/// Per level: distort the normalized corpus, re-index, run every normalized
/// query and average precision at each K. Queries are never distorted.
SearchEvalResult run_search_eval(const ExperimentConfig& config, const search::TopicCorpus& corpus,
                                 const text::FrequencyTable& table, const SearchEvalOptions& options = {});

/// precision.csv: level,P@5,P@10,...
void write_search_eval(const SearchEvalResult& result, const std::filesystem::path& dir);

}  // namespace ncdlab::exp
