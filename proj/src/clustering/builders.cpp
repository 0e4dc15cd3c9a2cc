#include "ncdlab/clustering/builders.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "ncdlab/common/error.hpp"
#include "ncdlab/common/rng.hpp"

namespace ncdlab::cluster {
namespace {

using Matrix = std::vector<std::vector<double>>;
using Adjacency = std::vector<std::vector<std::size_t>>;

void validate_matrix(const ncd::NcdMatrix& m) {
  const std::size_t n = m.size();
  if (m.values.size() != n) throw ValidationError("matrix row count differs from label count");
  for (std::size_t i = 0; i < n; ++i) {
    if (m.values[i].size() != n) throw ValidationError("matrix is not square");
    for (double v : m.values[i])
      if (!std::isfinite(v) || v < 0.0 || v >= ncd::kHardUpperBound)
        throw ValidationError("matrix row '" + m.labels[i] + "' has a cell outside [0, 1.5)");
  }
}

Matrix symmetrized(const ncd::NcdMatrix& m) {
  const std::size_t n = m.size();
  Matrix d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) d[i][j] = 0.5 * (m.values[i][j] + m.values[j][i]);
  return d;
}

Dendrogram to_dendrogram(const std::vector<std::string>& labels, const Adjacency& adj) {
  std::vector<Dendrogram::Edge> edges;
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (auto w : adj[v])
      if (v < w) edges.emplace_back(v, w);
  return Dendrogram(labels, adj.size(), std::move(edges));
}

// Three split costs per leaf quartet a<b<c<d: ab|cd, ac|bd, ad|bc.
struct QuartetTable {
  std::vector<std::array<std::size_t, 4>> leaves;
  std::vector<std::array<double, 3>> cost;
  double best = 0.0;   // m: sum of the cheapest split per quartet
  double worst = 0.0;  // M: sum of the dearest split per quartet

  explicit QuartetTable(const Matrix& d) {
    const std::size_t n = d.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c)
          for (std::size_t e = c + 1; e < n; ++e) {
            const std::array<double, 3> q{d[a][b] + d[c][e], d[a][c] + d[b][e], d[a][e] + d[b][c]};
            leaves.push_back({a, b, c, e});
            cost.push_back(q);
            best += *std::min_element(q.begin(), q.end());
            worst += *std::max_element(q.begin(), q.end());
          }
  }

  // Total cost of the splits a tree induces; the induced split is the one
  // with the strictly smallest path-length sum (four-point condition).
  double tree_cost(const std::vector<std::vector<std::size_t>>& t) const {
    double total = 0.0;
    for (std::size_t k = 0; k < leaves.size(); ++k) {
      const auto [a, b, c, e] = leaves[k];
      const std::size_t s0 = t[a][b] + t[c][e], s1 = t[a][c] + t[b][e], s2 = t[a][e] + t[b][c];
      const int pick = s0 < s1 && s0 < s2 ? 0 : (s1 < s2 ? 1 : 2);
      total += cost[k][pick];
    }
    return total;
  }

  double normalized(double tree_cost) const {
    if (worst - best <= 0.0) return 1.0;
    return std::clamp((worst - tree_cost) / (worst - best), 0.0, 1.0);
  }
};

std::vector<std::vector<std::size_t>> leaf_hops(const Adjacency& adj, std::size_t n) {
  std::vector<std::vector<std::size_t>> out(n, std::vector<std::size_t>(n, 0));
  std::vector<std::size_t> hops(adj.size()), stack;
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(hops.begin(), hops.end(), SIZE_MAX);
    hops[a] = 0;
    stack.assign(1, a);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v])
        if (hops[w] == SIZE_MAX) {
          hops[w] = hops[v] + 1;
          stack.push_back(w);
        }
    }
    for (std::size_t b = 0; b < n; ++b) out[a][b] = hops[b];
  }
  return out;
}

void replace_neighbor(Adjacency& adj, std::size_t v, std::size_t from, std::size_t to) {
  *std::find(adj[v].begin(), adj[v].end(), from) = to;
}

// Random binary tree by inserting leaves 3..n-1 on uniformly chosen edges.
Adjacency random_tree(std::size_t n, Rng& rng) {
  Adjacency adj(2 * n - 2);
  adj[0] = {n};
  adj[1] = {n};
  adj[2] = {n};
  adj[n] = {0, 1, 2};
  std::size_t next_internal = n + 1;
  for (std::size_t leaf = 3; leaf < n; ++leaf) {
    std::vector<Dendrogram::Edge> edges;
    for (std::size_t v = 0; v < adj.size(); ++v)
      for (auto w : adj[v])
        if (v < w) edges.emplace_back(v, w);
    const auto [u, w] = edges[rng.below(edges.size())];
    const std::size_t p = next_internal++;
    replace_neighbor(adj, u, w, p);
    replace_neighbor(adj, w, u, p);
    adj[p] = {u, w, leaf};
    adj[leaf] = {p};
  }
  return adj;
}

void swap_leaves(Adjacency& adj, std::size_t a, std::size_t b) {
  const auto pa = adj[a][0], pb = adj[b][0];
  if (pa == pb) return;
  replace_neighbor(adj, pa, a, b);
  replace_neighbor(adj, pb, b, a);
  adj[a][0] = pb;
  adj[b][0] = pa;
}

// Prunes the subtree rooted at x (cut from its internal neighbor p) and
// regrafts it, with p, onto another edge. Returns false when no other edge
// exists.
bool prune_regraft(Adjacency& adj, std::size_t x, std::size_t p, Rng& rng) {
  std::vector<std::size_t> rest;
  for (auto w : adj[p])
    if (w != x) rest.push_back(w);
  const auto a = rest[0], b = rest[1];

  std::vector<bool> pruned(adj.size(), false);
  std::vector<std::size_t> stack{x};
  pruned[x] = pruned[p] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v])
      if (!pruned[w]) {
        pruned[w] = true;
        stack.push_back(w);
      }
  }
  pruned[p] = false;
  std::vector<Dendrogram::Edge> targets;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (pruned[v] || v == p) continue;
    for (auto w : adj[v]) {
      if (w <= v || pruned[w] || w == p) continue;
      targets.emplace_back(v, w);
    }
  }
  // Edges a-p and p-b merge into a-b, which would recreate the same tree.
  if (targets.empty()) return false;
  const auto [u, w] = targets[rng.below(targets.size())];
  replace_neighbor(adj, a, p, b);
  replace_neighbor(adj, b, p, a);
  if ((u == a && w == b) || (u == b && w == a)) {
    replace_neighbor(adj, a, b, p);
    replace_neighbor(adj, b, a, p);
    return false;
  }
  replace_neighbor(adj, u, w, p);
  replace_neighbor(adj, w, u, p);
  adj[p] = {u, w, x};
  return true;
}

}  // namespace

std::string_view to_string(Builder b) { return b == Builder::NJ ? "nj" : "quartet"; }

Builder parse_builder(std::string_view name) {
  if (name == "nj") return Builder::NJ;
  if (name == "quartet") return Builder::Quartet;
  throw ValidationError("unknown tree builder '" + std::string(name) + "' (expected nj or quartet)");
}

Dendrogram neighbor_joining(const ncd::NcdMatrix& m) {
  validate_matrix(m);
  const std::size_t n = m.size();
  if (n < 3) throw ValidationError("neighbor joining needs at least 3 documents");
  Matrix d = symmetrized(m);
  Adjacency adj(2 * n - 2);
  std::vector<std::size_t> active(n);  // active[k] = tree node of cluster k
  for (std::size_t i = 0; i < n; ++i) active[i] = i;
  std::size_t next_internal = n;

  auto link = [&](std::size_t u, std::size_t v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  };

  while (active.size() > 3) {
    const std::size_t r = active.size();
    std::vector<double> row_sum(r, 0.0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) row_sum[i] += d[i][j];
    std::size_t bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j) {
        const double q = static_cast<double>(r - 2) * d[i][j] - row_sum[i] - row_sum[j];
        if (q < best) {
          best = q;
          bi = i;
          bj = j;
        }
      }
    const std::size_t u = next_internal++;
    link(u, active[bi]);
    link(u, active[bj]);
    // The joined pair collapses into row bi; row bj is dropped.
    std::vector<double> merged(r);
    for (std::size_t k = 0; k < r; ++k) merged[k] = 0.5 * (d[bi][k] + d[bj][k] - d[bi][bj]);
    merged[bi] = 0.0;
    for (std::size_t k = 0; k < r; ++k) {
      d[bi][k] = merged[k];
      d[k][bi] = merged[k];
    }
    d.erase(d.begin() + static_cast<std::ptrdiff_t>(bj));
    for (auto& row : d) row.erase(row.begin() + static_cast<std::ptrdiff_t>(bj));
    active[bi] = u;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  const std::size_t centre = next_internal++;
  for (auto v : active) link(centre, v);
  return to_dendrogram(m.labels, adj);
}

double quartet_score(const Dendrogram& tree, const ncd::NcdMatrix& m) {
  validate_matrix(m);
  if (tree.leaf_count() != m.size()) throw ValidationError("tree and matrix disagree on the number of documents");
  // Map matrix rows onto tree leaves by label.
  const std::size_t n = m.size();
  std::vector<std::size_t> leaf_of(n);
  for (std::size_t i = 0; i < n; ++i) leaf_of[i] = tree.leaf_index(m.labels[i]);
  const auto tree_d = tree.leaf_distances();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) t[i][j] = tree_d[leaf_of[i]][leaf_of[j]];
  const QuartetTable table(symmetrized(m));
  return table.normalized(table.tree_cost(t));
}

QuartetResult quartet_tree(const ncd::NcdMatrix& m, const QuartetOptions& options) {
  validate_matrix(m);
  const std::size_t n = m.size();
  if (n < 4) throw ValidationError("the quartet method needs at least 4 documents");
  const QuartetTable table(symmetrized(m));
  Rng rng(options.seed);

  Adjacency current = random_tree(n, rng);
  double current_cost = table.tree_cost(leaf_hops(current, n));
  std::size_t proposals = 0, accepted = 0, idle = 0;
  const std::size_t patience = options.patience_per_leaf * n;

  while (idle < patience) {
    ++proposals;
    ++idle;
    Adjacency candidate = current;
    if (rng.below(2) == 0) {
      const auto a = rng.below(n);
      auto b = rng.below(n - 1);
      if (b >= a) ++b;
      swap_leaves(candidate, a, b);
    } else {
      const auto x = rng.below(candidate.size());
      const auto& around = candidate[x];
      const auto p = around[rng.below(around.size())];
      if (p < n) continue;  // x must hang off an internal node
      if (!prune_regraft(candidate, x, p, rng)) continue;
    }
    const double cost = table.tree_cost(leaf_hops(candidate, n));
    if (cost <= current_cost) {
      if (cost < current_cost) idle = 0;
      current = std::move(candidate);
      current_cost = cost;
      ++accepted;
    }
  }
  return {to_dendrogram(m.labels, current), table.normalized(current_cost), proposals, accepted};
}

Dendrogram build_dendrogram(const ncd::NcdMatrix& m, Builder method, std::uint64_t seed) {
  if (method == Builder::NJ) return neighbor_joining(m);
  return quartet_tree(m, QuartetOptions{seed}).tree;
}

}  // namespace ncdlab::cluster
