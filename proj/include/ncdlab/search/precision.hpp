#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "ncdlab/search/query.hpp"

namespace ncdlab::search {

/// K -> precision, averaged over queries for a batch.
using PrecisionCurve = std::map<std::size_t, double>;

inline constexpr std::size_t kStandardKs[] = {5, 10, 15, 20, 30, 40, 50, 100};

using Relevance = std::function<bool(const SearchResult&, const RankedPassage&)>;

/// Relevant when the passage's topic equals the query's topic.
Relevance same_topic(std::string query_topic);

/// Fraction of relevant entries among the first k. Throws ValidationError
/// when k = 0 or the list is shorter than k.
double precision_at(std::span<const bool> relevant, std::size_t k);

PrecisionCurve precision_at_k(const SearchResult& result, const Relevance& relevant, std::span<const std::size_t> ks);

/// Mean over queries; `relevance[i]` judges `results[i]`.
PrecisionCurve precision_at_k(std::span<const SearchResult> results, std::span<const Relevance> relevance,
                              std::span<const std::size_t> ks);

}  // namespace ncdlab::search
