#include "ncdlab/clustering/dendrogram.hpp"

#include <algorithm>
#include <queue>
#include <unordered_set>

#include "ncdlab/common/error.hpp"

namespace ncdlab::cluster {

Dendrogram::Dendrogram(std::vector<std::string> leaves, std::size_t node_count, std::vector<Edge> edges)
    : leaves_(std::move(leaves)), adjacency_(node_count) {
  const std::size_t n = leaves_.size();
  if (n < 2) throw ValidationError("a dendrogram needs at least two leaves");
  {
    std::unordered_set<std::string> seen;
    for (const auto& l : leaves_)
      if (!seen.insert(l).second) throw ValidationError("duplicate leaf label '" + l + "'");
  }
  const std::size_t internal = n == 2 ? 0 : n - 2;
  if (node_count != n + internal)
    throw ValidationError("expected " + std::to_string(n + internal) + " nodes, got " + std::to_string(node_count));
  if (edges.size() != node_count - 1) throw ValidationError("a tree needs exactly node_count - 1 edges");
  for (auto [a, b] : edges) {
    if (a >= node_count || b >= node_count || a == b) throw ValidationError("edge endpoint out of range");
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    const std::size_t want = is_leaf(v) ? 1 : 3;
    if (adjacency_[v].size() != want)
      throw ValidationError("node " + std::to_string(v) + " has degree " + std::to_string(adjacency_[v].size()) +
                            ", expected " + std::to_string(want));
    std::sort(adjacency_[v].begin(), adjacency_[v].end());
  }
  // n - 1 edges plus connectivity rules out cycles.
  std::vector<bool> seen(node_count, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto w : adjacency_[v])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  if (reached != node_count) throw ValidationError("dendrogram is not connected");
}

std::vector<Dendrogram::Edge> Dendrogram::edges() const {
  std::vector<Edge> out;
  for (std::size_t v = 0; v < adjacency_.size(); ++v)
    for (auto w : adjacency_[v])
      if (v < w) out.emplace_back(v, w);
  return out;
}

std::size_t Dendrogram::leaf_index(std::string_view label) const {
  for (std::size_t i = 0; i < leaves_.size(); ++i)
    if (leaves_[i] == label) return i;
  throw ValidationError("unknown leaf '" + std::string(label) + "'");
}

std::size_t Dendrogram::leaf_distance(std::string_view a, std::string_view b) const {
  return leaf_distance(leaf_index(a), leaf_index(b));
}

std::size_t Dendrogram::leaf_distance(std::size_t a, std::size_t b) const {
  if (a >= leaf_count() || b >= leaf_count()) throw ValidationError("leaf index out of range");
  if (a == b) throw ValidationError("leaf distance needs two different leaves");
  std::vector<std::size_t> hops(node_count(), SIZE_MAX);
  std::queue<std::size_t> q;
  hops[a] = 0;
  q.push(a);
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    if (v == b) break;
    for (auto w : adjacency_[v])
      if (hops[w] == SIZE_MAX) {
        hops[w] = hops[v] + 1;
        q.push(w);
      }
  }
  // A path of k edges between two leaves passes through k - 1 internal nodes.
  return hops[b] - 1;
}

std::vector<std::vector<std::size_t>> Dendrogram::leaf_distances() const {
  const std::size_t n = leaf_count();
  std::vector<std::vector<std::size_t>> out(n, std::vector<std::size_t>(n, 0));
  std::vector<std::size_t> hops(node_count());
  std::vector<std::size_t> stack;
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(hops.begin(), hops.end(), SIZE_MAX);
    hops[a] = 0;
    stack.assign(1, a);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : adjacency_[v])
        if (hops[w] == SIZE_MAX) {
          hops[w] = hops[v] + 1;
          stack.push_back(w);
        }
    }
    for (std::size_t b = 0; b < n; ++b)
      if (b != a) out[a][b] = hops[b] - 1;
  }
  return out;
}

}  // namespace ncdlab::cluster
