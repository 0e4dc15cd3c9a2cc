#include "ncdlab/experiments/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>

#include "ncdlab/common/error.hpp"

namespace ncdlab::exp {

namespace fs = std::filesystem;

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  return Bytes((std::istreambuf_iterator<char>(in)), {});
}

void write_file(const fs::path& path, std::string_view bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + path.string());
}

std::vector<RawDocument> read_documents(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ValidationError("no such directory " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && !e.path().filename().string().starts_with(".")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ValidationError("no documents in " + dir.string());
  std::vector<RawDocument> docs;
  std::set<std::string> ids;
  for (const auto& f : files) {
    const std::string id = f.stem().string();
    if (!ids.insert(id).second) throw ValidationError("two documents named '" + id + "' in " + dir.string());
    docs.push_back({id, read_file(f)});
  }
  return docs;
}

Dataset load_dataset(const fs::path& dir, const fs::path& clusters, text::DecodePolicy policy) {
  Dataset ds;
  {
    std::ifstream in(clusters);
    if (!in) throw ValidationError("cannot read " + clusters.string());
    ds.assignment = cluster::parse_assignment(in);
  }
  for (auto& raw : read_documents(dir)) {
    if (!ds.assignment.contains(raw.id)) throw ValidationError("document '" + raw.id + "' has no cluster label");
    ds.documents.push_back({raw.id, text::normalize_and_tokenize(to_string(raw.bytes), policy)});
  }
  for (const auto& [id, label] : ds.assignment) {
    const bool present = std::any_of(ds.documents.begin(), ds.documents.end(),
                                     [&](const auto& d) { return d.id == id; });
    if (!present) throw ValidationError("cluster file names unknown document '" + id + "'");
  }
  return ds;
}

}  // namespace ncdlab::exp
