#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "ncdlab/clustering/dendrogram.hpp"
#include "ncdlab/ncd/matrix.hpp"

namespace ncdlab::cluster {

enum class Builder { NJ, Quartet };

std::string_view to_string(Builder b);
Builder parse_builder(std::string_view name);

/// Neighbor joining on (m + m^T) / 2; deterministic, ties go to the first
/// pair in label order. Needs n >= 3.
Dendrogram neighbor_joining(const ncd::NcdMatrix& m);

struct QuartetOptions {
  std::uint64_t seed = 0;
  /// The climb stops after patience_per_leaf * n proposals in a row
  /// without a strict improvement.
  std::size_t patience_per_leaf = 2000;
};

struct QuartetResult {
  Dendrogram tree;
  double score;  ///< (M - C) / (M - m), in [0, 1]
  std::size_t proposals = 0;
  std::size_t accepted = 0;
};

/// Seeded hill climber over tree topologies (leaf swaps and subtree
/// prune-and-regraft) maximizing the normalized quartet score. Needs n >= 4.
QuartetResult quartet_tree(const ncd::NcdMatrix& m, const QuartetOptions& options = {});

/// Normalized quartet score of a given tree under the matrix; leaves are
/// matched to matrix labels by name.
double quartet_score(const Dendrogram& tree, const ncd::NcdMatrix& m);

/// Throws ValidationError for NaN, negative or >= 1.5 cells, or too few leaves.
Dendrogram build_dendrogram(const ncd::NcdMatrix& m, Builder method, std::uint64_t seed = 0);

}  // namespace ncdlab::cluster
