#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ncdlab/compressors/backend.hpp"

namespace ncdlab::codec {

/// The 14 files of the Calgary text compression corpus.
const std::vector<std::string>& calgary_files();

struct BenchmarkRow {
  std::string backend;
  std::string file;
  std::size_t original = 0;
  std::optional<std::size_t> compressed;  ///< empty when the file was skipped
  bool round_trip_ok = false;

  std::optional<double> bpb() const;
};

struct BenchmarkTable {
  std::vector<BenchmarkRow> rows;

  /// Mean bits per byte over the non-skipped files of one backend.
  std::optional<double> average_bpb(const std::string& backend) const;
  /// backend,file,original,compressed,bpb; skipped files show "skipped" in
  /// the bpb column; one AVERAGE row per backend closes its section.
  void write_csv(std::ostream& out) const;
};

/// 8 * compressed / original; 0 for an empty original.
double bits_per_byte(std::size_t original, std::size_t compressed);

/// Compresses every corpus file found in `dir` with each backend and checks
/// the round trip. Missing files are listed as skipped.
BenchmarkTable calgary_benchmark(const std::filesystem::path& dir,
                                 const std::vector<const Backend*>& backends,
                                 const std::vector<std::string>& files = calgary_files());

}  // namespace ncdlab::codec
