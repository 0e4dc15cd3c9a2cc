#include "ncdlab/clustering/error_metric.hpp"

#include <algorithm>
#include <istream>
#include <utility>

#include "ncdlab/common/error.hpp"

namespace ncdlab::cluster {
namespace {

// (S, D) for a rooted binary tree: S is the pairwise internal-node sum of
// its leaves, D the sum over leaves of internal nodes up to and including
// the root. Joining two trees under a new root gives
//   S = S1 + S2 + k2*D1 + k1*D2 + k1*k2,   D = D1 + D2 + k1 + k2.
// Only Pareto-minimal pairs can lead to an optimum, so each size keeps
// that frontier.
using Frontier = std::vector<std::pair<std::size_t, std::size_t>>;

const std::vector<Frontier>& frontiers() {
  static const std::vector<Frontier> table = [] {
    std::vector<Frontier> f(kMaxClusterSize + 1);
    f[1] = {{0, 0}};
    for (std::size_t k = 2; k <= kMaxClusterSize; ++k) {
      Frontier all;
      for (std::size_t k1 = 1; k1 <= k / 2; ++k1) {
        const std::size_t k2 = k - k1;
        for (auto [s1, d1] : f[k1])
          for (auto [s2, d2] : f[k2])
            all.emplace_back(s1 + s2 + k2 * d1 + k1 * d2 + k1 * k2, d1 + d2 + k1 + k2);
      }
      std::sort(all.begin(), all.end());
      Frontier keep;
      for (auto p : all)
        if (keep.empty() || p.second < keep.back().second) keep.push_back(p);
      f[k] = std::move(keep);
    }
    return f;
  }();
  return table;
}

}  // namespace

ClusterAssignment parse_assignment(std::istream& in) {
  ClusterAssignment out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
      throw ParseError("expected doc_id<TAB>cluster", line_no);
    std::string id = line.substr(0, tab), label = line.substr(tab + 1);
    if (!out.emplace(id, label).second) throw ParseError("document '" + id + "' listed twice", line_no);
  }
  if (out.empty()) throw ParseError("cluster assignment is empty");
  return out;
}

std::size_t perfect_sum(std::size_t size) {
  if (size == 0) throw ValidationError("cluster size must be at least 1");
  if (size > kMaxClusterSize)
    throw ValidationError("cluster size " + std::to_string(size) + " exceeds the supported maximum of " +
                          std::to_string(kMaxClusterSize));
  return frontiers()[size].front().first;
}

std::size_t perfect_sum(std::span<const std::size_t> sizes) {
  std::size_t total = 0;
  for (auto s : sizes) total += perfect_sum(s);
  return total;
}

std::size_t perfect_sum_unrooted(std::size_t n) {
  if (n < 2) throw ValidationError("a tree needs at least two leaves");
  if (n == 2) return 0;
  if (n - 1 > kMaxClusterSize)
    throw ValidationError("cluster size " + std::to_string(n) + " exceeds the supported maximum of " +
                          std::to_string(kMaxClusterSize + 1));
  // One leaf sits beside the root of a rooted tree over the other n - 1;
  // its distance to each of them is that leaf's root depth.
  std::size_t best = SIZE_MAX;
  for (auto [s, d] : frontiers()[n - 1]) best = std::min(best, s + d);
  return best;
}

ClusteringReport clustering_error(const Dendrogram& tree, const ClusterAssignment& assignment) {
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < tree.leaf_count(); ++i) {
    auto it = assignment.find(tree.leaves()[i]);
    if (it == assignment.end()) throw ValidationError("no cluster label for '" + tree.leaves()[i] + "'");
    members[it->second].push_back(i);
  }
  for (const auto& [id, label] : assignment) tree.leaf_index(id);

  ClusteringReport report;
  const auto dist = tree.leaf_distances();
  std::vector<std::size_t> sizes;
  for (const auto& [label, leaves] : members) {
    sizes.push_back(leaves.size());
    for (std::size_t x = 0; x < leaves.size(); ++x)
      for (std::size_t y = x + 1; y < leaves.size(); ++y) {
        const auto d = dist[leaves[x]][leaves[y]];
        report.pairs.push_back({tree.leaves()[leaves[x]], tree.leaves()[leaves[y]], d});
        report.achieved_sum += d;
      }
  }
  // With a single cluster there is no outward edge to hang it from.
  report.perfect_sum = members.size() == 1 ? perfect_sum_unrooted(tree.leaf_count()) : perfect_sum(sizes);
  if (report.achieved_sum < report.perfect_sum) throw Error("achieved sum below the perfect baseline");
  report.error = report.achieved_sum - report.perfect_sum;
  return report;
}

double average_ce(const std::map<text::Level, double>& errors) {
  double sum = 0.0;
  for (int t = 1; t <= 10; ++t) {
    auto it = errors.find(text::Level::from_tenths(t));
    if (it == errors.end()) throw ValidationError("average CE needs level " + text::Level::from_tenths(t).str());
    sum += it->second;
  }
  return sum / 10.0;
}

ErrorSummary error_summaries(double e0, double ek) {
  ErrorSummary s{ek - e0, std::nullopt};
  if (e0 != 0.0) s.normalized = ek / e0;
  return s;
}

}  // namespace ncdlab::cluster
