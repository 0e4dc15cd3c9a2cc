#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ncdlab/common/bytes.hpp"
#include "ncdlab/compressors/backend.hpp"
#include "ncdlab/ncd/ncd.hpp"

namespace ncdlab::ncd {

struct Document {
  std::string id;
  Bytes bytes;
};

inline constexpr double kSelfDistanceCeiling = 0.1;
inline constexpr double kSoftUpperBound = 1.1;
inline constexpr double kHardUpperBound = 1.5;

struct NcdMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;
  std::string backend_name;
  double max_asymmetry = 0.0;      ///< max |m[i][j] - m[j][i]|
  std::size_t soft_violations = 0;  ///< cells above kSoftUpperBound

  std::size_t size() const noexcept { return labels.size(); }
  double at(std::size_t i, std::size_t j) const { return values.at(i).at(j); }
};

struct MatrixOptions {
  unsigned workers = 1;
  /// Shared cache; when null a private one is used unless `use_cache` is off.
  CompressedLengthCache* cache = nullptr;
  bool use_cache = true;
  /// Leave the diagonal at 0 instead of computing self-distances.
  bool skip_diagonal = false;
};

/// Pairwise NCD over the documents; cells are evaluated independently so the
/// result does not depend on the worker count. Throws ValidationError for
/// fewer than two documents or an empty one, and Error when a cell reaches
/// kHardUpperBound.
NcdMatrix ncd_matrix(const codec::Backend& backend, const std::vector<Document>& docs,
                     const MatrixOptions& options = {});

/// CSV: a header row "id,<label>...", then one row per label.
void write_csv(std::ostream& out, const NcdMatrix& m);
NcdMatrix read_csv(std::istream& in);

/// Square text format: first line n, then "label v1 ... vn" per row.
/// Labels may not contain whitespace.
void write_square(std::ostream& out, const NcdMatrix& m);
NcdMatrix read_square(std::istream& in);

/// Either format, chosen by the first non-blank character.
NcdMatrix read_matrix(std::istream& in);

}  // namespace ncdlab::ncd
