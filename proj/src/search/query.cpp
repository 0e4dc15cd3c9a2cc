#include "ncdlab/search/query.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "ncdlab/common/error.hpp"

namespace ncdlab::search {

const PassageStore& select_store(std::span<const PassageStore> stores, std::size_t query_size) {
  if (stores.empty()) throw ValidationError("no passage stores to search");
  const PassageStore* best = nullptr;
  const PassageStore* largest = &stores[0];
  for (const auto& s : stores) {
    if (s.window_bytes() > largest->window_bytes()) largest = &s;
    if (s.window_bytes() >= query_size && (!best || s.window_bytes() < best->window_bytes())) best = &s;
  }
  return best ? *best : *largest;
}

SearchResult query(std::span<const PassageStore> stores, const codec::Backend& backend, ByteView query_bytes,
                   std::size_t k, const QueryOptions& options) {
  if (query_bytes.empty()) throw ValidationError("empty query");
  if (k == 0) throw ValidationError("K must be at least 1");
  const PassageStore& store = select_store(stores, query_bytes.size());

  const auto& passages = store.passages;
  std::vector<double> scores(passages.size(), 0.0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i; (i = next++) < passages.size();)
        if (!passages[i].bytes.empty()) scores[i] = ncd::ncd(backend, query_bytes, passages[i].bytes, options.cache);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = passages.size();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < std::max(1u, options.workers); ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < passages.size(); ++i)
    if (!passages[i].bytes.empty()) order.push_back(i);
  auto before = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] < scores[b];
    if (passages[a].doc_id != passages[b].doc_id) return passages[a].doc_id < passages[b].doc_id;
    return passages[a].offset < passages[b].offset;
  };
  const std::size_t keep = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(), before);

  SearchResult result{options.query_id, store.window_kb, {}};
  for (std::size_t r = 0; r < keep; ++r) {
    const auto& p = passages[order[r]];
    result.ranking.push_back({p.doc_id, p.topic, p.offset, p.bytes.size(), scores[order[r]]});
  }
  return result;
}

}  // namespace ncdlab::search
