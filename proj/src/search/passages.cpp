#include "ncdlab/search/passages.hpp"

#include "ncdlab/common/error.hpp"

namespace ncdlab::search {

std::vector<std::pair<std::size_t, std::size_t>> window_spans(std::size_t length, std::size_t window,
                                                              std::size_t overlap) {
  if (window == 0) throw ValidationError("window size must be positive");
  if (overlap >= window)
    throw ValidationError("overlap of " + std::to_string(overlap) + " bytes must be below the " +
                          std::to_string(window) + "-byte window");
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  const std::size_t stride = window - overlap;
  for (std::size_t offset = 0; offset < length; offset += stride) {
    spans.emplace_back(offset, std::min(window, length - offset));
    if (offset + window >= length) break;
  }
  return spans;
}

std::vector<Passage> segment(const SourceDocument& doc, std::size_t window_kb, std::size_t overlap) {
  if (window_kb == 0) throw ValidationError("window size must be at least 1 KB");
  std::vector<Passage> out;
  for (auto [offset, length] : window_spans(doc.bytes.size(), window_kb * kKilobyte, overlap)) {
    const auto first = doc.bytes.begin() + static_cast<std::ptrdiff_t>(offset);
    out.push_back({doc.doc_id, doc.topic, offset, Bytes(first, first + static_cast<std::ptrdiff_t>(length))});
  }
  return out;
}

}  // namespace ncdlab::search
