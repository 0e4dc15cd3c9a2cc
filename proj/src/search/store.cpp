#include "ncdlab/search/store.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "ncdlab/common/error.hpp"

namespace ncdlab::search {

PassageStore build_store(const std::vector<SourceDocument>& docs, std::size_t window_kb, const OverlapPolicy& overlap) {
  PassageStore store;
  store.window_kb = window_kb;
  store.overlap = overlap.for_window(window_kb * kKilobyte);
  for (const auto& doc : docs) {
    auto passages = segment(doc, window_kb, store.overlap);
    std::move(passages.begin(), passages.end(), std::back_inserter(store.passages));
  }
  return store;
}

std::vector<PassageStore> index_corpus(const std::vector<SourceDocument>& docs, std::size_t max_window_kb,
                                       const OverlapPolicy& overlap) {
  if (docs.empty()) throw ValidationError("cannot index an empty corpus");
  if (max_window_kb == 0) throw ValidationError("the largest window must be at least 1 KB");
  std::vector<PassageStore> stores;
  for (std::size_t kb = 1; kb <= max_window_kb; ++kb) stores.push_back(build_store(docs, kb, overlap));
  return stores;
}

void save_store(const PassageStore& store, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["window_kb"] = store.window_kb;
  manifest["overlap"] = store.overlap;
  auto& list = manifest["passages"] = nlohmann::json::array();
  std::ofstream pack(dir / "passages.bin", std::ios::binary);
  std::size_t pack_offset = 0;
  for (const auto& p : store.passages) {
    list.push_back({{"doc_id", p.doc_id},
                    {"topic", p.topic},
                    {"offset", p.offset},
                    {"length", p.bytes.size()},
                    {"pack_offset", pack_offset}});
    pack.write(reinterpret_cast<const char*>(p.bytes.data()), static_cast<std::streamsize>(p.bytes.size()));
    pack_offset += p.bytes.size();
  }
  std::ofstream(dir / "manifest.json") << manifest.dump(1) << '\n';
  if (!pack) throw Error("failed writing " + (dir / "passages.bin").string());
}

PassageStore load_store(const std::filesystem::path& dir) {
  std::ifstream manifest_in(dir / "manifest.json");
  if (!manifest_in) throw ValidationError("no manifest.json in " + dir.string());
  std::ifstream pack_in(dir / "passages.bin", std::ios::binary);
  if (!pack_in) throw ValidationError("no passages.bin in " + dir.string());
  const Bytes pack((std::istreambuf_iterator<char>(pack_in)), {});

  PassageStore store;
  try {
    const auto manifest = nlohmann::json::parse(manifest_in);
    store.window_kb = manifest.at("window_kb").get<std::size_t>();
    store.overlap = manifest.at("overlap").get<std::size_t>();
    for (const auto& entry : manifest.at("passages")) {
      const auto at = entry.at("pack_offset").get<std::size_t>();
      const auto length = entry.at("length").get<std::size_t>();
      if (at > pack.size() || length > pack.size() - at)
        throw ParseError("passage outside passages.bin in " + dir.string());
      const auto first = pack.begin() + static_cast<std::ptrdiff_t>(at);
      store.passages.push_back({entry.at("doc_id").get<std::string>(), entry.at("topic").get<std::string>(),
                                entry.at("offset").get<std::size_t>(),
                                Bytes(first, first + static_cast<std::ptrdiff_t>(length))});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad manifest in " + dir.string() + ": " + e.what());
  }
  return store;
}

void save_stores(const std::vector<PassageStore>& stores, const std::filesystem::path& root) {
  for (const auto& s : stores) save_store(s, root / ("window-" + std::to_string(s.window_kb)));
}

std::vector<PassageStore> load_stores(const std::filesystem::path& root) {
  if (!std::filesystem::is_directory(root)) throw ValidationError("no index directory " + root.string());
  std::vector<PassageStore> stores;
  for (const auto& entry : std::filesystem::directory_iterator(root))
    if (entry.is_directory() && entry.path().filename().string().starts_with("window-"))
      stores.push_back(load_store(entry.path()));
  if (stores.empty()) throw ValidationError("no stores under " + root.string());
  std::sort(stores.begin(), stores.end(), [](const auto& a, const auto& b) { return a.window_kb < b.window_kb; });
  return stores;
}

}  // namespace ncdlab::search
