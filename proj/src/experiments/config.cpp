#include "ncdlab/experiments/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ncdlab/common/error.hpp"
#include "ncdlab/compressors/backend.hpp"

namespace ncdlab::exp {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string> kKnownKeys = {
    "dataset", "clusters", "frequency_list", "backends", "selections", "substitutions", "shuffles", "levels",
    "seeds",   "repeats",  "builder",        "output",   "workers",    "search"};
const std::vector<std::string> kKnownSearchKeys = {"corpus",        "planted", "planted_seed", "backend", "selection",
                                                   "substitution", "max_window_kb", "overlap", "ks"};

fs::path resolve(const fs::path& p, const fs::path& base) { return p.is_absolute() ? p : base / p; }

void require_exists(const fs::path& p, const char* field) {
  if (!fs::exists(p)) throw ValidationError(std::string(field) + ": no such path " + p.string());
}

template <class T, class Parse>
std::vector<T> parse_list(const json& j, const char* field, Parse parse) {
  if (!j.is_array() || j.empty()) throw ValidationError(std::string(field) + " must be a non-empty array");
  std::vector<T> out;
  for (const auto& item : j) out.push_back(parse(item.get<std::string>()));
  return out;
}

void reject_unknown(const json& j, const std::vector<std::string>& known, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw ValidationError("unknown " + where + "field '" + it.key() + "'");
}

SearchSettings parse_search(const json& j, const fs::path& base) {
  if (!j.is_object()) throw ValidationError("search must be an object");
  reject_unknown(j, kKnownSearchKeys, "search ");
  SearchSettings s;
  if (j.contains("corpus")) {
    s.corpus = resolve(j["corpus"].get<std::string>(), base);
    require_exists(*s.corpus, "search.corpus");
  }
  s.planted = j.value("planted", false);
  s.planted_seed = j.value("planted_seed", s.planted_seed);
  if (s.planted == s.corpus.has_value()) throw ValidationError("search needs exactly one of corpus or planted");
  s.backend = j.value("backend", s.backend);
  codec::make_backend(s.backend);
  if (j.contains("selection")) s.selection = text::parse_selection(j["selection"].get<std::string>());
  if (j.contains("substitution")) s.substitution = text::parse_substitution(j["substitution"].get<std::string>());
  s.max_window_kb = j.value("max_window_kb", s.max_window_kb);
  if (s.max_window_kb == 0) throw ValidationError("search.max_window_kb must be at least 1");
  if (j.contains("overlap") && !j["overlap"].is_null()) s.overlap = j["overlap"].get<std::size_t>();
  if (j.contains("ks")) {
    s.ks = j["ks"].get<std::vector<std::size_t>>();
    if (s.ks.empty()) throw ValidationError("search.ks must not be empty");
    for (auto k : s.ks)
      if (k == 0) throw ValidationError("search.ks entries must be at least 1");
  }
  return s;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text, const fs::path& base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object");

  ExperimentConfig c;
  try {
    reject_unknown(j, kKnownKeys, "");
    const bool has_search = j.contains("search");
    const bool curve_fields = j.contains("dataset") || j.contains("clusters");
    if (curve_fields || !has_search) {
      for (const char* field : {"dataset", "clusters", "frequency_list"})
        if (!j.contains(field)) throw ValidationError(std::string("config needs '") + field + "'");
      c.dataset = resolve(j["dataset"].get<std::string>(), base);
      c.clusters = resolve(j["clusters"].get<std::string>(), base);
      require_exists(c.dataset, "dataset");
      require_exists(c.clusters, "clusters");
    }
    if (j.contains("frequency_list")) {
      c.frequency_list = resolve(j["frequency_list"].get<std::string>(), base);
      require_exists(c.frequency_list, "frequency_list");
    } else if (has_search) {
      throw ValidationError("config needs 'frequency_list'");
    }
    if (j.contains("backends")) {
      c.backends = parse_list<std::string>(j["backends"], "backends", [](const std::string& s) {
        codec::make_backend(s);
        return s;
      });
    }
    if (j.contains("selections"))
      c.selections = parse_list<text::Selection>(j["selections"], "selections", text::parse_selection);
    if (j.contains("substitutions"))
      c.substitutions = parse_list<text::Substitution>(j["substitutions"], "substitutions", text::parse_substitution);
    if (j.contains("shuffles")) c.shuffles = parse_list<text::Shuffle>(j["shuffles"], "shuffles", text::parse_shuffle);
    if (j.contains("levels")) {
      if (!j["levels"].is_array() || j["levels"].empty()) throw ValidationError("levels must be a non-empty array");
      c.levels.clear();
      for (const auto& v : j["levels"])
        c.levels.push_back(v.is_string() ? text::Level::parse(v.get<std::string>())
                                         : text::Level::from_double(v.get<double>()));
      std::sort(c.levels.begin(), c.levels.end());
      c.levels.erase(std::unique(c.levels.begin(), c.levels.end()), c.levels.end());
    }
    if (j.contains("seeds")) {
      c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
      if (c.seeds.empty()) throw ValidationError("seeds must not be empty");
    }
    c.repeats = j.value("repeats", c.repeats);
    if (c.repeats == 0) throw ValidationError("repeats must be at least 1");
    if (j.contains("builder")) c.builder = cluster::parse_builder(j["builder"].get<std::string>());
    if (j.contains("output")) c.output = resolve(j["output"].get<std::string>(), base);
    c.workers = j.value("workers", c.workers);
    if (c.workers == 0) throw ValidationError("workers must be at least 1");
    if (has_search) c.search = parse_search(j["search"], base);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config field has the wrong type: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

std::string to_json(const ExperimentConfig& c) {
  json j;
  j["dataset"] = c.dataset.string();
  j["clusters"] = c.clusters.string();
  j["frequency_list"] = c.frequency_list.string();
  j["backends"] = c.backends;
  for (auto s : c.selections) j["selections"].push_back(std::string(text::to_string(s)));
  for (auto s : c.substitutions) j["substitutions"].push_back(std::string(text::to_string(s)));
  for (auto s : c.shuffles) j["shuffles"].push_back(std::string(text::to_string(s)));
  for (auto l : c.levels) j["levels"].push_back(l.str());
  j["seeds"] = c.seeds;
  j["repeats"] = c.repeats;
  j["builder"] = std::string(cluster::to_string(c.builder));
  j["output"] = c.output.string();
  j["workers"] = c.workers;
  if (c.search) {
    auto& s = j["search"];
    if (c.search->corpus) s["corpus"] = c.search->corpus->string();
    s["planted"] = c.search->planted;
    s["planted_seed"] = c.search->planted_seed;
    s["backend"] = c.search->backend;
    s["selection"] = std::string(text::to_string(c.search->selection));
    s["substitution"] = std::string(text::to_string(c.search->substitution));
    s["max_window_kb"] = c.search->max_window_kb;
    s["overlap"] = c.search->overlap ? json(*c.search->overlap) : json(nullptr);
    s["ks"] = c.search->ks;
  }
  return j.dump(2) + "\n";
}

}  // namespace ncdlab::exp
