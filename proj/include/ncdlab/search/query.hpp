#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ncdlab/compressors/backend.hpp"
#include "ncdlab/ncd/ncd.hpp"
#include "ncdlab/search/store.hpp"

namespace ncdlab::search {

struct RankedPassage {
  std::string doc_id;
  std::string topic;
  std::size_t offset = 0;
  std::size_t length = 0;
  double score = 0.0;
};

struct SearchResult {
  std::string query_id;
  std::size_t window_kb = 0;  ///< store the query ran against
  std::vector<RankedPassage> ranking;
};

/// The store with the smallest window >= query_size, or the largest store
/// when the query is bigger than every window. Throws ValidationError when
/// there are no stores.
const PassageStore& select_store(std::span<const PassageStore> stores, std::size_t query_size);

struct QueryOptions {
  std::string query_id;
  unsigned workers = 1;
  ncd::CompressedLengthCache* cache = nullptr;
};

/// The k passages closest to the query by NCD, ties broken by
/// (doc_id, offset). Fewer than k when the store is smaller.
SearchResult query(std::span<const PassageStore> stores, const codec::Backend& backend, ByteView query_bytes,
                   std::size_t k, const QueryOptions& options = {});

}  // namespace ncdlab::search
