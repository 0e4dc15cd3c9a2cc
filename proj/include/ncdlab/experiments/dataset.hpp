#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ncdlab/clustering/error_metric.hpp"
#include "ncdlab/common/bytes.hpp"
#include "ncdlab/textops/tokenizer.hpp"

namespace ncdlab::exp {

struct RawDocument {
  std::string id;  ///< file stem
  Bytes bytes;
};

/// Every regular file directly under `dir`, sorted by name; hidden files are
/// skipped. Throws ValidationError when the directory is missing or empty
/// or two files share a stem.
std::vector<RawDocument> read_documents(const std::filesystem::path& dir);

/// Whole file; ValidationError naming the path when it cannot be read.
Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

struct NormalizedDocument {
  std::string id;
  text::TokenStream tokens;
};

struct Dataset {
  std::vector<NormalizedDocument> documents;
  cluster::ClusterAssignment assignment;
};

/// Reads and normalizes the documents and checks that the assignment
/// labels exactly those ids.
Dataset load_dataset(const std::filesystem::path& dir, const std::filesystem::path& clusters,
                     text::DecodePolicy policy = text::DecodePolicy::Lossy);

}  // namespace ncdlab::exp
