#include "ncdlab/search/precision.hpp"

#include <memory>
#include <string>

#include "ncdlab/common/error.hpp"

namespace ncdlab::search {

Relevance same_topic(std::string query_topic) {
  return [topic = std::move(query_topic)](const SearchResult&, const RankedPassage& p) { return p.topic == topic; };
}

double precision_at(std::span<const bool> relevant, std::size_t k) {
  if (k == 0) throw ValidationError("K must be at least 1");
  if (relevant.size() < k)
    throw ValidationError("ranking has " + std::to_string(relevant.size()) + " entries, fewer than K = " +
                          std::to_string(k));
  std::size_t hits = 0;
  for (std::size_t i = 0; i < k; ++i) hits += relevant[i];
  return static_cast<double>(hits) / static_cast<double>(k);
}

PrecisionCurve precision_at_k(const SearchResult& result, const Relevance& relevant, std::span<const std::size_t> ks) {
  // std::vector<bool> has no contiguous storage to view as a span.
  const std::size_t n = result.ranking.size();
  auto flags = std::make_unique<bool[]>(n);
  for (std::size_t i = 0; i < n; ++i) flags[i] = relevant(result, result.ranking[i]);
  PrecisionCurve curve;
  for (auto k : ks) curve[k] = precision_at({flags.get(), n}, k);
  return curve;
}

PrecisionCurve precision_at_k(std::span<const SearchResult> results, std::span<const Relevance> relevance,
                              std::span<const std::size_t> ks) {
  if (results.empty()) throw ValidationError("no queries to evaluate");
  if (results.size() != relevance.size()) throw ValidationError("one relevance judgement per query is required");
  PrecisionCurve sum;
  for (std::size_t q = 0; q < results.size(); ++q)
    for (auto [k, p] : precision_at_k(results[q], relevance[q], ks)) sum[k] += p;
  for (auto& [k, p] : sum) p /= static_cast<double>(results.size());
  return sum;
}

}  // namespace ncdlab::search
