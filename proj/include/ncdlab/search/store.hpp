#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "ncdlab/search/passages.hpp"

namespace ncdlab::search {

struct PassageStore {
  std::size_t window_kb = 1;
  std::size_t overlap = 0;
  std::vector<Passage> passages;

  std::size_t window_bytes() const noexcept { return window_kb * kKilobyte; }
};

inline constexpr std::size_t kDefaultMaxWindowKb = 32;

/// Overlap in bytes for a window; half the window unless fixed.
struct OverlapPolicy {
  std::optional<std::size_t> bytes;

  std::size_t for_window(std::size_t window_bytes) const { return bytes ? *bytes : window_bytes / 2; }
};

PassageStore build_store(const std::vector<SourceDocument>& docs, std::size_t window_kb, const OverlapPolicy& overlap = {});

/// One store per window size 1..max_window_kb KB. Throws ValidationError for
/// an empty corpus or max_window_kb = 0.
std::vector<PassageStore> index_corpus(const std::vector<SourceDocument>& docs,
                                       std::size_t max_window_kb = kDefaultMaxWindowKb,
                                       const OverlapPolicy& overlap = {});

/// `dir` receives manifest.json and passages.bin.
void save_store(const PassageStore& store, const std::filesystem::path& dir);
/// Throws ParseError on a malformed manifest or pack file.
PassageStore load_store(const std::filesystem::path& dir);

/// Stores go to root/window-<kb>; loading picks up every such directory.
void save_stores(const std::vector<PassageStore>& stores, const std::filesystem::path& root);
std::vector<PassageStore> load_stores(const std::filesystem::path& root);

}  // namespace ncdlab::search
