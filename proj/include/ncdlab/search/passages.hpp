#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ncdlab/common/bytes.hpp"

namespace ncdlab::search {

struct SourceDocument {
  std::string doc_id;
  std::string topic;
  Bytes bytes;
};

struct Passage {
  std::string doc_id;
  std::string topic;
  std::size_t offset = 0;
  Bytes bytes;
};

inline constexpr std::size_t kKilobyte = 1024;

/// (offset, length) of each window: starts at multiples of window - overlap,
/// the last one ends at the document end. Empty documents give no windows.
/// Throws ValidationError unless 0 <= overlap < window and window > 0.
std::vector<std::pair<std::size_t, std::size_t>> window_spans(std::size_t length, std::size_t window,
                                                              std::size_t overlap);

/// Splits a document into windows of window_kb KB. Throws ValidationError
/// for window_kb = 0 or overlap >= window bytes.
std::vector<Passage> segment(const SourceDocument& doc, std::size_t window_kb, std::size_t overlap);

}  // namespace ncdlab::search
