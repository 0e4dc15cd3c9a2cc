#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ncdlab::cluster {

/// Unrooted binary tree. Nodes 0..n-1 are the leaves in label order, the
/// remaining nodes are internal and must have degree 3.
class Dendrogram {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  /// Throws ValidationError unless the edges form a valid tree: n >= 2
  /// leaves with distinct labels, degree-1 leaves, degree-3 internal nodes,
  /// n - 2 internal nodes, connected and acyclic.
  Dendrogram(std::vector<std::string> leaves, std::size_t node_count, std::vector<Edge> edges);

  std::size_t leaf_count() const noexcept { return leaves_.size(); }
  std::size_t node_count() const noexcept { return adjacency_.size(); }
  bool is_leaf(std::size_t node) const noexcept { return node < leaves_.size(); }
  const std::vector<std::string>& leaves() const noexcept { return leaves_; }
  const std::vector<std::size_t>& neighbors(std::size_t node) const { return adjacency_.at(node); }
  std::vector<Edge> edges() const;

  /// Throws ValidationError for an unknown label.
  std::size_t leaf_index(std::string_view label) const;

  /// Number of internal nodes on the path between two leaves.
  std::size_t leaf_distance(std::string_view a, std::string_view b) const;
  std::size_t leaf_distance(std::size_t a, std::size_t b) const;
  /// All leaf-to-leaf distances, indexed by leaf number.
  std::vector<std::vector<std::size_t>> leaf_distances() const;

 private:
  std::vector<std::string> leaves_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// Newick text of the unrooted tree with unit branch lengths, written as a
/// trifurcation at the internal node adjacent to leaf 0.
std::string to_newick(const Dendrogram& tree);

/// Accepts rooted or unrooted binary Newick, with or without branch
/// lengths; a degree-2 root is suppressed. Throws ParseError.
Dendrogram parse_newick(std::string_view text);

/// Graphviz undirected graph.
std::string to_dot(const Dendrogram& tree);

}  // namespace ncdlab::cluster
