#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ncdlab::text {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

using WordSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

/// Word counts from an external corpus, with both frequency orderings
/// precomputed. Ties in either ordering fall back to lexicographic order.
class FrequencyTable {
 public:
  FrequencyTable() = default;

  /// Duplicate words are summed. Throws ValidationError if the total is zero.
  static FrequencyTable from_counts(std::vector<std::pair<std::string, std::uint64_t>> counts);

  /// Lines of `word<TAB>count`; '#' lines and blank lines are skipped.
  /// Throws ParseError (with line number) or ValidationError (zero total).
  static FrequencyTable parse(std::istream& in);
  static FrequencyTable load(const std::filesystem::path& path);

  bool empty() const noexcept { return counts_.empty(); }
  std::size_t size() const noexcept { return counts_.size(); }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t count(std::string_view word) const;
  bool contains(std::string_view word) const { return counts_.contains(word); }
  double relative(std::string_view word) const;

  const std::vector<std::string>& decreasing() const noexcept { return decreasing_; }
  const std::vector<std::string>& increasing() const noexcept { return increasing_; }
  /// Seeded permutation of the vocabulary (drawn from lexicographic order).
  std::vector<std::string> random_order(std::uint64_t seed) const;

 private:
  std::unordered_map<std::string, std::uint64_t, StringHash, std::equal_to<>> counts_;
  std::uint64_t total_ = 0;
  std::vector<std::string> decreasing_;
  std::vector<std::string> increasing_;
};

enum class Selection { MFW, LFW, RW };

std::string_view to_string(Selection s);
Selection parse_selection(std::string_view name);

/// Removal level on the 0.0, 0.1, ..., 1.0 grid, stored in tenths.
class Level {
 public:
  constexpr Level() = default;
  static Level from_tenths(int tenths);
  /// Throws ValidationError unless value is within 1e-9 of a grid point.
  static Level from_double(double value);
  static Level parse(std::string_view text);
  static std::vector<Level> all();

  constexpr int tenths() const noexcept { return tenths_; }
  double value() const noexcept { return tenths_ / 10.0; }
  std::string str() const;

  auto operator<=>(const Level&) const = default;

 private:
  constexpr explicit Level(int t) : tenths_(t) {}
  int tenths_ = 0;
};

struct RemovalSet {
  Selection method = Selection::MFW;
  Level level;
  std::uint64_t seed = 0;
  WordSet words;

  bool contains(std::string_view w) const { return words.contains(w); }
  std::size_t size() const noexcept { return words.size(); }
};

/// Shortest prefix of the method's ordering whose cumulative relative
/// frequency reaches `level`; the whole vocabulary at 1.0.
RemovalSet build_removal_set(const FrequencyTable& table, Selection method, Level level,
                             std::uint64_t seed = 0);

/// Same as build_removal_set over an ordering computed once by the caller.
RemovalSet build_removal_set(const FrequencyTable& table, std::span<const std::string> order,
                             Selection method, Level level, std::uint64_t seed);

std::vector<std::string> selection_order(const FrequencyTable& table, Selection method,
                                         std::uint64_t seed);

}  // namespace ncdlab::text
