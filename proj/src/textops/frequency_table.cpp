#include "ncdlab/textops/frequency_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "ncdlab/common/error.hpp"
#include "ncdlab/common/rng.hpp"

namespace ncdlab::text {

FrequencyTable FrequencyTable::from_counts(
    std::vector<std::pair<std::string, std::uint64_t>> counts) {
  FrequencyTable t;
  for (auto& [word, n] : counts) {
    t.counts_[word] += n;
    t.total_ += n;
  }
  if (t.total_ == 0) throw ValidationError("frequency table has zero total count");

  t.decreasing_.reserve(t.counts_.size());
  for (const auto& [word, n] : t.counts_) t.decreasing_.push_back(word);
  std::sort(t.decreasing_.begin(), t.decreasing_.end());
  t.increasing_ = t.decreasing_;
  std::stable_sort(t.decreasing_.begin(), t.decreasing_.end(),
                   [&](const std::string& a, const std::string& b) {
                     return t.counts_.at(a) > t.counts_.at(b);
                   });
  std::stable_sort(t.increasing_.begin(), t.increasing_.end(),
                   [&](const std::string& a, const std::string& b) {
                     return t.counts_.at(a) < t.counts_.at(b);
                   });
  return t;
}

FrequencyTable FrequencyTable::parse(std::istream& in) {
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw ParseError("expected word<TAB>count", lineno);
    std::string word = line.substr(0, tab);
    std::string_view num = std::string_view(line).substr(tab + 1);
    std::uint64_t n = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
    if (num.empty() || ec != std::errc() || ptr != num.data() + num.size())
      throw ParseError("invalid count '" + std::string(num) + "'", lineno);
    for (auto& c : word)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    counts.emplace_back(std::move(word), n);
  }
  if (counts.empty()) throw ValidationError("frequency list has no entries");
  return from_counts(std::move(counts));
}

FrequencyTable FrequencyTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open frequency list " + path.string());
  return parse(in);
}

std::uint64_t FrequencyTable::count(std::string_view word) const {
  auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

double FrequencyTable::relative(std::string_view word) const {
  return total_ == 0 ? 0.0 : static_cast<double>(count(word)) / static_cast<double>(total_);
}

std::vector<std::string> FrequencyTable::random_order(std::uint64_t seed) const {
  std::vector<std::string> order = increasing_;
  std::sort(order.begin(), order.end());
  Rng rng(seed);
  rng.shuffle(std::span<std::string>(order));
  return order;
}

std::string_view to_string(Selection s) {
  switch (s) {
    case Selection::MFW: return "mfw";
    case Selection::LFW: return "lfw";
    case Selection::RW: return "rw";
  }
  return "?";
}

Selection parse_selection(std::string_view name) {
  if (name == "mfw" || name == "MFW") return Selection::MFW;
  if (name == "lfw" || name == "LFW") return Selection::LFW;
  if (name == "rw" || name == "RW") return Selection::RW;
  throw ValidationError("unknown selection method '" + std::string(name) + "'");
}

Level Level::from_tenths(int tenths) {
  if (tenths < 0 || tenths > 10)
    throw ValidationError("level must lie in 0.0..1.0, got tenths=" + std::to_string(tenths));
  return Level(tenths);
}

Level Level::from_double(double value) {
  const double scaled = value * 10.0;
  const double rounded = std::round(scaled);
  if (!std::isfinite(value) || std::abs(scaled - rounded) > 1e-8 || rounded < 0 || rounded > 10)
    throw ValidationError("level must be one of 0.0, 0.1, ..., 1.0");
  return Level(static_cast<int>(rounded));
}

Level Level::parse(std::string_view text) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ValidationError("invalid level '" + std::string(text) + "'");
  return from_double(v);
}

std::vector<Level> Level::all() {
  std::vector<Level> out;
  for (int t = 0; t <= 10; ++t) out.push_back(Level(t));
  return out;
}

std::string Level::str() const {
  if (tenths_ == 10) return "1.0";
  return "0." + std::to_string(tenths_);
}

std::vector<std::string> selection_order(const FrequencyTable& table, Selection method,
                                         std::uint64_t seed) {
  switch (method) {
    case Selection::MFW: return table.decreasing();
    case Selection::LFW: return table.increasing();
    case Selection::RW: return table.random_order(seed);
  }
  return {};
}

RemovalSet build_removal_set(const FrequencyTable& table, std::span<const std::string> order,
                             Selection method, Level level, std::uint64_t seed) {
  if (table.empty()) throw ValidationError("cannot build a removal set from an empty table");
  RemovalSet set{method, level, seed, {}};
  if (level.tenths() == 0) return set;
  if (level.tenths() == 10) {
    set.words.insert(order.begin(), order.end());
    return set;
  }
  // Exact integer comparison: cumulative/total >= tenths/10.
  const unsigned __int128 target = static_cast<unsigned __int128>(table.total()) * level.tenths();
  unsigned __int128 cumulative = 0;
  for (const auto& word : order) {
    set.words.insert(word);
    cumulative += table.count(word);
    if (cumulative * 10 >= target) break;
  }
  return set;
}

RemovalSet build_removal_set(const FrequencyTable& table, Selection method, Level level,
                             std::uint64_t seed) {
  if (table.empty()) throw ValidationError("cannot build a removal set from an empty table");
  const auto order = selection_order(table, method, seed);
  return build_removal_set(table, order, method, level, seed);
}

}  // namespace ncdlab::text
