#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ncdlab/clustering/dendrogram.hpp"
#include "ncdlab/textops/frequency_table.hpp"

namespace ncdlab::cluster {

/// Document id -> cluster label.
using ClusterAssignment = std::map<std::string, std::string>;

/// Lines of `doc_id<TAB>cluster`; '#' and blank lines skipped. Throws ParseError.
ClusterAssignment parse_assignment(std::istream& in);

inline constexpr std::size_t kMaxClusterSize = 12;

/// Smallest intra-cluster pairwise leaf-distance sum for one cluster of
/// `size` leaves hanging off a single edge of the tree.
std::size_t perfect_sum(std::size_t size);
/// Sum over clusters; clusters are independent. Throws ValidationError for
/// a zero size or one above kMaxClusterSize.
std::size_t perfect_sum(std::span<const std::size_t> sizes);
/// Smallest pairwise sum over all n leaves of an unrooted binary tree (the
/// baseline when a single cluster spans the whole tree). n <= kMaxClusterSize + 1.
std::size_t perfect_sum_unrooted(std::size_t n);

struct PairDistance {
  std::string a;
  std::string b;
  std::size_t distance;
};

struct ClusteringReport {
  std::vector<PairDistance> pairs;  ///< every intra-cluster pair, label order
  std::size_t achieved_sum = 0;
  std::size_t perfect_sum = 0;
  std::size_t error = 0;
};

/// Throws ValidationError when a leaf has no label or a label names an
/// unknown leaf.
ClusteringReport clustering_error(const Dendrogram& tree, const ClusterAssignment& assignment);

/// Mean over levels 0.1..1.0; a 0.0 entry is ignored. Throws
/// ValidationError when one of the ten levels is missing.
double average_ce(const std::map<text::Level, double>& errors);

struct ErrorSummary {
  double delta;                     ///< e_k - e_0
  std::optional<double> normalized;  ///< e_k / e_0, empty when e_0 = 0
};

ErrorSummary error_summaries(double e0, double ek);

}  // namespace ncdlab::cluster
