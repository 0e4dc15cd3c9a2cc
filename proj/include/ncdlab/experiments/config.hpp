#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ncdlab/clustering/builders.hpp"
#include "ncdlab/textops/distortion.hpp"
#include "ncdlab/textops/frequency_table.hpp"

namespace ncdlab::exp {

/// Settings for `search eval`. Either `corpus` (a directory holding
/// corpus/ and queries/) or the planted generator supplies the documents.
struct SearchSettings {
  std::optional<std::filesystem::path> corpus;
  bool planted = false;
  std::uint64_t planted_seed = 1;
  std::string backend = "lz";
  text::Selection selection = text::Selection::MFW;
  text::Substitution substitution = text::Substitution::Asterisk;
  std::size_t max_window_kb = 32;
  std::optional<std::size_t> overlap;
  std::vector<std::size_t> ks{5, 10, 15, 20, 30, 40, 50, 100};
};

struct ExperimentConfig {
  std::filesystem::path dataset;
  std::filesystem::path clusters;
  std::filesystem::path frequency_list;
  std::vector<std::string> backends{"lz", "bw", "ppm"};
  std::vector<text::Selection> selections{text::Selection::MFW, text::Selection::LFW, text::Selection::RW};
  std::vector<text::Substitution> substitutions{text::Substitution::Asterisk, text::Substitution::RandomChar};
  std::vector<text::Shuffle> shuffles{text::Shuffle::None};
  std::vector<text::Level> levels = text::Level::all();
  std::vector<std::uint64_t> seeds{1};
  std::size_t repeats = 10;
  cluster::Builder builder = cluster::Builder::NJ;
  std::filesystem::path output = "out";
  unsigned workers = 1;
  std::optional<SearchSettings> search;
};

/// Parses the JSON text. Relative paths resolve against `base`. Throws
/// ParseError for malformed JSON or wrong field types and ValidationError
/// for bad values or missing files.
ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical JSON rendering, used as the config snapshot of a run.
std::string to_json(const ExperimentConfig& config);

}  // namespace ncdlab::exp
