#include "ncdlab/experiments/curve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "ncdlab/clustering/builders.hpp"
#include "ncdlab/clustering/error_metric.hpp"
#include "ncdlab/common/error.hpp"
#include "ncdlab/common/rng.hpp"
#include "ncdlab/ncd/matrix.hpp"
#include "ncdlab/textops/distortion.hpp"

namespace ncdlab::exp {
namespace {

// Streams for mix_seed; keep them distinct per purpose.
enum SeedStream : std::uint64_t { kRemoval = 1, kSubstitute = 2, kShuffle = 3, kBuilder = 4 };

struct Cell {
  std::size_t variant;  // index into the (selection, substitution, shuffle) list
  std::size_t level;
  std::size_t run;
};

struct Variant {
  text::Selection selection;
  text::Substitution substitution;
  text::Shuffle shuffle;
};

std::string combo_name(const CurveCombo& c) {
  std::ostringstream s;
  s << c.backend << '/' << text::to_string(c.selection) << '/' << text::to_string(c.substitution) << '/'
    << text::to_string(c.shuffle);
  return s.str();
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

}  // namespace

std::uint64_t run_seed(std::uint64_t base, std::size_t repeat) { return mix_seed(base, repeat); }

CurveResult run_curve(const ExperimentConfig& config, const Dataset& dataset, const text::FrequencyTable& table,
                      const CurveOptions& options) {
  if (dataset.documents.size() < 3) throw ValidationError("the sweep needs at least 3 documents");
  auto log = [&](const std::string& msg) {
    if (options.log) options.log(msg);
  };

  CurveResult result;
  std::vector<Variant> variants;
  for (auto sel : config.selections)
    for (auto sub : config.substitutions)
      for (auto shuf : config.shuffles) {
        if (!text::DistortionSpec{sel, sub, shuf, {}, 0}.valid()) {
          for (const auto& b : config.backends) result.skipped.push_back({b, sel, sub, shuf});
          continue;
        }
        variants.push_back({sel, sub, shuf});
      }

  std::vector<std::unique_ptr<codec::Backend>> backends;
  for (const auto& name : config.backends) backends.push_back(codec::make_backend(name));

  std::vector<std::uint64_t> seeds;
  for (auto base : config.seeds)
    for (std::size_t r = 0; r < config.repeats; ++r) seeds.push_back(run_seed(base, r));

  std::vector<Cell> cells;
  for (std::size_t v = 0; v < variants.size(); ++v)
    for (std::size_t l = 0; l < config.levels.size(); ++l)
      for (std::size_t r = 0; r < seeds.size(); ++r) cells.push_back({v, l, r});

  // errors[backend][variant][level][run]; -1 marks a failed cell.
  std::vector<std::vector<std::vector<std::vector<long long>>>> errors(
      backends.size(),
      std::vector(variants.size(), std::vector(config.levels.size(), std::vector<long long>(seeds.size(), -1))));
  std::map<std::pair<std::size_t, std::size_t>, std::string> failed;  // (backend, variant) -> message
  std::mutex mutex;
  ncd::CompressedLengthCache cache;

  // Word orderings do not depend on the level, so compute them per seed once.
  std::map<std::pair<text::Selection, std::uint64_t>, std::vector<std::string>> orders;
  for (const auto& v : variants)
    for (auto s : seeds) {
      const std::uint64_t key = v.selection == text::Selection::RW ? mix_seed(s, kRemoval) : 0;
      if (!orders.contains({v.selection, key})) orders[{v.selection, key}] = text::selection_order(table, v.selection, key);
    }

  std::atomic<std::size_t> next{0}, done{0};
  auto work = [&](const Cell& cell) {
    const Variant& v = variants[cell.variant];
    const text::Level level = config.levels[cell.level];
    const std::uint64_t seed = seeds[cell.run];
    const std::uint64_t removal_seed = v.selection == text::Selection::RW ? mix_seed(seed, kRemoval) : 0;
    const auto& order = orders.at({v.selection, removal_seed});
    const auto set = text::build_removal_set(table, order, v.selection, level, removal_seed);

    std::vector<ncd::Document> docs;
    for (const auto& d : dataset.documents) {
      const std::uint64_t doc_key = stable_hash(d.id);
      auto distorted = text::distort(d.tokens, set, v.substitution, mix_seed(seed, kSubstitute) ^ doc_key, d.id);
      distorted = text::shuffle_variant(distorted, v.shuffle, mix_seed(seed, kShuffle) ^ doc_key);
      if (distorted.bytes.empty()) distorted.bytes = " ";  // keep C(x) defined for an all-blank text
      docs.push_back({d.id, to_bytes(distorted.bytes)});
    }

    for (std::size_t b = 0; b < backends.size(); ++b) {
      {
        std::lock_guard lock(mutex);
        if (failed.contains({b, cell.variant})) continue;
      }
      try {
        ncd::MatrixOptions mo;
        mo.cache = &cache;
        mo.skip_diagonal = true;
        const auto matrix = ncd::ncd_matrix(*backends[b], docs, mo);
        const auto tree = cluster::build_dendrogram(matrix, config.builder, mix_seed(seed, kBuilder));
        const auto report = cluster::clustering_error(tree, dataset.assignment);
        std::lock_guard lock(mutex);
        errors[b][cell.variant][cell.level][cell.run] = static_cast<long long>(report.error);
        if (cell.run == 0) {
          const CurveCombo c{config.backends[b], v.selection, v.substitution, v.shuffle};
          std::string name = c.backend + "." + std::string(text::to_string(c.selection)) + "." +
                             std::string(text::to_string(c.substitution)) + "." +
                             std::string(text::to_string(c.shuffle)) + "." + level.str() + ".nwk";
          result.trees.emplace_back(std::move(name), cluster::to_newick(tree));
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(mutex);
        const CurveCombo c{config.backends[b], v.selection, v.substitution, v.shuffle};
        failed.emplace(std::make_pair(b, cell.variant),
                       combo_name(c) + " at level " + level.str() + ": " + e.what());
      }
    }
    const auto finished = ++done;
    if (finished % 50 == 0 || finished == cells.size())
      log("curve: " + std::to_string(finished) + "/" + std::to_string(cells.size()) + " cells");
  };

  std::exception_ptr fatal;
  auto worker = [&] {
    try {
      for (std::size_t k; (k = next++) < cells.size();) work(cells[k]);
    } catch (...) {
      std::lock_guard lock(mutex);
      if (!fatal) fatal = std::current_exception();
      next = cells.size();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < config.workers; ++t) pool.emplace_back(worker);
    worker();
  }
  if (fatal) std::rethrow_exception(fatal);

  for (const auto& [key, msg] : failed) {
    result.failures.push_back(msg);
    log("curve: combination aborted: " + msg);
  }
  std::sort(result.trees.begin(), result.trees.end());

  // Rows and averages, in configuration order.
  std::map<std::pair<std::size_t, std::size_t>, double> averages;  // (backend, variant)
  for (std::size_t b = 0; b < backends.size(); ++b)
    for (std::size_t v = 0; v < variants.size(); ++v) {
      if (failed.contains({b, v})) continue;
      const CurveCombo combo{config.backends[b], variants[v].selection, variants[v].substitution, variants[v].shuffle};
      std::map<text::Level, double> means;
      for (std::size_t l = 0; l < config.levels.size(); ++l) {
        CurveRow row{combo, config.levels[l], {}, 0.0, 0.0};
        for (auto e : errors[b][v][l]) row.errors.push_back(static_cast<std::size_t>(e));
        double sum = 0.0;
        for (auto e : row.errors) sum += static_cast<double>(e);
        row.mean = sum / static_cast<double>(row.errors.size());
        if (row.errors.size() > 1) {
          double sq = 0.0;
          for (auto e : row.errors) sq += (static_cast<double>(e) - row.mean) * (static_cast<double>(e) - row.mean);
          row.stddev = std::sqrt(sq / static_cast<double>(row.errors.size() - 1));
        }
        means[row.level] = row.mean;
        result.rows.push_back(std::move(row));
      }
      try {
        averages[{b, v}] = cluster::average_ce(means);
      } catch (const ValidationError&) {
        // Levels 0.1..1.0 were not all requested; no summary for this combination.
      }
    }

  for (std::size_t b = 0; b < backends.size(); ++b)
    for (std::size_t v = 0; v < variants.size(); ++v) {
      auto it = averages.find({b, v});
      if (it == averages.end()) continue;
      SummaryRow s{{config.backends[b], variants[v].selection, variants[v].substitution, variants[v].shuffle},
                   it->second, std::nullopt, std::nullopt};
      for (std::size_t base = 0; base < variants.size(); ++base) {
        if (variants[base].selection != variants[v].selection ||
            variants[base].substitution != text::Substitution::Asterisk ||
            variants[base].shuffle != text::Shuffle::None)
          continue;
        auto e0 = averages.find({b, base});
        if (e0 == averages.end()) break;
        const auto summary = cluster::error_summaries(e0->second, it->second);
        s.delta = summary.delta;
        s.normalized = summary.normalized;
      }
      result.summary.push_back(std::move(s));
    }
  return result;
}

void write_curve_outputs(const CurveResult& result, const ExperimentConfig& config, const std::filesystem::path& dir) {
  std::ostringstream curve, report, summary;
  curve << "backend,selection,substitution,shuffle,level,error,mean,stddev\n";
  report << "level,method,substitution,shuffle,backend,error\n";
  for (const auto& row : result.rows) {
    const auto& c = row.combo;
    curve << c.backend << ',' << text::to_string(c.selection) << ',' << text::to_string(c.substitution) << ','
          << text::to_string(c.shuffle) << ',' << row.level.str() << ',' << row.errors.front() << ','
          << fixed(row.mean) << ',' << fixed(row.stddev) << '\n';
    for (auto e : row.errors)
      report << row.level.str() << ',' << text::to_string(c.selection) << ',' << text::to_string(c.substitution)
             << ',' << text::to_string(c.shuffle) << ',' << c.backend << ',' << e << '\n';
  }
  summary << "backend,selection,substitution,shuffle,average_ce,delta,normalized\n";
  for (const auto& s : result.summary) {
    const auto& c = s.combo;
    summary << c.backend << ',' << text::to_string(c.selection) << ',' << text::to_string(c.substitution) << ','
            << text::to_string(c.shuffle) << ',' << fixed(s.average_ce, 2) << ','
            << (s.delta ? fixed(*s.delta, 2) : "") << ',' << (s.normalized ? fixed(*s.normalized, 2) : "") << '\n';
  }
  write_file(dir / "curve.csv", curve.str());
  write_file(dir / "clustering_report.csv", report.str());
  write_file(dir / "summary.csv", summary.str());
  write_file(dir / "config.json", to_json(config));
  for (const auto& [name, newick] : result.trees) write_file(dir / "trees" / name, newick + "\n");
}

}  // namespace ncdlab::exp
