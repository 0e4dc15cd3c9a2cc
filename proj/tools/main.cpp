// ncdlab command-line front end. Exit codes: 0 success, 2 usage or
// validation error, 3 runtime failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ncdlab/clustering/builders.hpp"
#include "ncdlab/clustering/error_metric.hpp"
#include "ncdlab/common/error.hpp"
#include "ncdlab/common/rng.hpp"
#include "ncdlab/compressors/calgary.hpp"
#include "ncdlab/experiments/curve.hpp"
#include "ncdlab/experiments/search_eval.hpp"
#include "ncdlab/ncd/matrix.hpp"
#include "ncdlab/search/query.hpp"
#include "ncdlab/search/store.hpp"
#include "ncdlab/search/topic_corpus.hpp"
#include "ncdlab/textops/distortion.hpp"
#include "ncdlab/textops/entropy.hpp"
#include "ncdlab/textops/removal_map.hpp"

namespace fs = std::filesystem;
using namespace ncdlab;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

void log_line(const std::string& msg) { std::cerr << msg << '\n'; }

// Writes to `path`, or stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  exp::write_file(path, text);
}

text::TokenStream read_tokens(const fs::path& path, bool strict) {
  return text::normalize_and_tokenize(to_string(exp::read_file(path)),
                                      strict ? text::DecodePolicy::Strict : text::DecodePolicy::Lossy);
}

std::string distorted_name(const fs::path& file, text::Selection sel, text::Level level, text::Substitution sub,
                           text::Shuffle shuffle) {
  std::string name = file.stem().string() + "." + std::string(text::to_string(sel)) + "." + level.str() + "." +
                     std::string(text::to_string(sub));
  if (shuffle != text::Shuffle::None) name += "." + std::string(text::to_string(shuffle));
  return name + ".txt";
}

// Documents for `search index`: a written topic corpus (corpus/*.txt), or
// a topic/<file> tree.
search::TopicCorpus corpus_for_index(const fs::path& dir, std::size_t hold_out, std::uint64_t seed) {
  if (fs::is_directory(dir / "corpus")) return search::read_topic_corpus(dir);
  return search::build_topic_corpus(dir, hold_out, seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compression-distance lab: NCD, text distortion, dendrogram clustering and passage search"};
  app.require_subcommand(1);
  bool strict = false;
  app.add_flag("--strict-utf8", strict, "Reject invalid UTF-8 instead of replacing it");

  // ncd
  auto* ncd_cmd = app.add_subcommand("ncd", "NCD between two files");
  std::string ncd_a, ncd_b, backend_name = "lz";
  ncd_cmd->add_option("first", ncd_a, "First file")->required();
  ncd_cmd->add_option("second", ncd_b, "Second file")->required();
  ncd_cmd->add_option("-b,--backend", backend_name, "lz, bw or ppm")->capture_default_str();

  // matrix
  auto* matrix_cmd = app.add_subcommand("matrix", "NCD matrix over every file in a directory");
  std::string matrix_dir, matrix_format = "csv", matrix_out;
  unsigned workers = 1;
  matrix_cmd->add_option("dir", matrix_dir)->required();
  matrix_cmd->add_option("-b,--backend", backend_name)->capture_default_str();
  matrix_cmd->add_option("-f,--format", matrix_format, "csv or square")->check(CLI::IsMember({"csv", "square"}));
  matrix_cmd->add_option("-w,--workers", workers)->check(CLI::PositiveNumber);
  matrix_cmd->add_option("-o,--output", matrix_out);

  // distort
  auto* distort_cmd = app.add_subcommand("distort", "Apply a distortion technique to a file or directory");
  std::string distort_in, distort_out, freq_path, method = "MFW", level_text = "0.1", sub_name = "asterisk",
                                                  shuffle_name = "none";
  std::uint64_t seed = 1;
  distort_cmd->add_option("input", distort_in)->required();
  distort_cmd->add_option("-o,--output", distort_out)->required();
  distort_cmd->add_option("--frequency-list", freq_path)->required();
  distort_cmd->add_option("-m,--method", method, "MFW, LFW or RW")->capture_default_str();
  distort_cmd->add_option("-l,--level", level_text)->capture_default_str();
  distort_cmd->add_option("-s,--substitution", sub_name, "asterisk or random")->capture_default_str();
  distort_cmd->add_option("--shuffle", shuffle_name, "none, shuffle-asterisks, shuffle-words, shuffle-all")
      ->capture_default_str();
  distort_cmd->add_option("--seed", seed)->capture_default_str();

  // curve
  auto* curve_cmd = app.add_subcommand("curve", "Clustering-error sweep from a JSON config");
  std::string config_path, output_override;
  unsigned workers_override = 0;
  curve_cmd->add_option("config", config_path)->required();
  curve_cmd->add_option("-w,--workers", workers_override)->check(CLI::PositiveNumber);
  curve_cmd->add_option("-o,--output", output_override);

  // cluster
  auto* cluster_cmd = app.add_subcommand("cluster", "Dendrogram from a matrix file");
  std::string cluster_matrix, builder_name = "nj", clusters_path, newick_out, dot_out;
  cluster_cmd->add_option("matrix", cluster_matrix, "CSV or square-format matrix")->required();
  cluster_cmd->add_option("--builder", builder_name, "nj or quartet")->capture_default_str();
  cluster_cmd->add_option("--seed", seed);
  cluster_cmd->add_option("--clusters", clusters_path, "doc_id<TAB>cluster file; prints the error report");
  cluster_cmd->add_option("--newick", newick_out, "Write the tree here instead of stdout");
  cluster_cmd->add_option("--dot", dot_out, "Also write a Graphviz file");

  // search
  auto* search_cmd = app.add_subcommand("search", "Passage indexing, querying and evaluation");
  search_cmd->require_subcommand(1);
  auto* index_cmd = search_cmd->add_subcommand("index", "Build the passage stores");
  std::string index_src, index_dir;
  std::size_t max_window_kb = search::kDefaultMaxWindowKb, hold_out = 0;
  std::optional<std::size_t> overlap;
  index_cmd->add_option("corpus", index_src, "corpus/ + queries/ layout, or topic/<file> tree")->required();
  index_cmd->add_option("-o,--output", index_dir)->required();
  index_cmd->add_option("--max-window-kb", max_window_kb)->check(CLI::PositiveNumber)->capture_default_str();
  index_cmd->add_option("--overlap", overlap, "Bytes; default half the window");
  index_cmd->add_option("--hold-out", hold_out, "Query documents held out per topic (topic tree input)");
  index_cmd->add_option("--seed", seed);
  auto* query_cmd = search_cmd->add_subcommand("query", "Rank passages against a query file");
  std::string query_index, query_file;
  std::size_t top_k = 10;
  query_cmd->add_option("index", query_index)->required();
  query_cmd->add_option("query", query_file)->required();
  query_cmd->add_option("-b,--backend", backend_name)->capture_default_str();
  query_cmd->add_option("-k,--top", top_k)->check(CLI::PositiveNumber)->capture_default_str();
  query_cmd->add_option("-w,--workers", workers)->check(CLI::PositiveNumber);
  auto* eval_cmd = search_cmd->add_subcommand("eval", "Precision at K per distortion level from a JSON config");
  eval_cmd->add_option("config", config_path)->required();
  eval_cmd->add_option("-w,--workers", workers_override)->check(CLI::PositiveNumber);
  eval_cmd->add_option("-o,--output", output_override);

  // calgary
  auto* calgary_cmd = app.add_subcommand("calgary", "Bits per byte over the Calgary corpus files");
  std::string calgary_dir;
  std::vector<std::string> backend_list = codec::backend_names();
  calgary_cmd->add_option("dir", calgary_dir)->required();
  calgary_cmd->add_option("-b,--backends", backend_list)->delimiter(',');

  // entropy
  auto* entropy_cmd = app.add_subcommand("entropy", "Shannon entropy of a distribution");
  std::vector<double> probs;
  entropy_cmd->add_option("probs", probs)->required();

  // removal-map
  auto* map_cmd = app.add_subcommand("removal-map", "PBM of surviving (black) and removed (white) words");
  std::string map_doc, map_out;
  std::size_t width = 64;
  map_cmd->add_option("doc", map_doc)->required();
  map_cmd->add_option("--frequency-list", freq_path)->required();
  map_cmd->add_option("-m,--method", method)->capture_default_str();
  map_cmd->add_option("-l,--level", level_text)->capture_default_str();
  map_cmd->add_option("--seed", seed);
  map_cmd->add_option("--width", width)->check(CLI::PositiveNumber)->capture_default_str();
  map_cmd->add_option("-o,--output", map_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*ncd_cmd) {
      const auto backend = codec::make_backend(backend_name);
      const auto a = exp::read_file(ncd_a), b = exp::read_file(ncd_b);
      std::cout << std::fixed << std::setprecision(6) << ncd::ncd(*backend, a, b) << '\n';
    } else if (*matrix_cmd) {
      const auto backend = codec::make_backend(backend_name);
      std::vector<ncd::Document> docs;
      for (auto& d : exp::read_documents(matrix_dir)) docs.push_back({d.id, std::move(d.bytes)});
      ncd::MatrixOptions mo;
      mo.workers = workers;
      const auto m = ncd::ncd_matrix(*backend, docs, mo);
      if (m.soft_violations) log_line("warning: " + std::to_string(m.soft_violations) + " cells above 1.1");
      std::ostringstream out;
      matrix_format == "csv" ? ncd::write_csv(out, m) : ncd::write_square(out, m);
      emit(matrix_out, out.str());
    } else if (*distort_cmd) {
      const auto table = text::FrequencyTable::load(freq_path);
      const text::DistortionSpec spec{text::parse_selection(method), text::parse_substitution(sub_name),
                                      text::parse_shuffle(shuffle_name), text::Level::parse(level_text), seed};
      spec.validate();
      const auto set = text::build_removal_set(table, spec.selection, spec.level, seed);
      std::vector<std::pair<fs::path, fs::path>> jobs;  // (source, relative output dir)
      if (fs::is_directory(distort_in)) {
        for (const auto& e : fs::recursive_directory_iterator(distort_in))
          if (e.is_regular_file()) jobs.emplace_back(e.path(), fs::relative(e.path().parent_path(), distort_in));
        std::sort(jobs.begin(), jobs.end());
      } else {
        jobs.emplace_back(distort_in, fs::path());
      }
      if (jobs.empty()) throw ValidationError("no input files under " + distort_in);
      std::cout << "file,words_total,words_replaced,percentage\n";
      for (const auto& [src, rel] : jobs) {
        const std::string id = src.filename().string();
        auto doc = text::distort(read_tokens(src, strict), set, spec.substitution, mix_seed(seed, stable_hash(id)), id);
        doc = text::shuffle_variant(doc, spec.shuffle, mix_seed(seed ^ 0x5bd1e995ULL, stable_hash(id)));
        const fs::path out = fs::path(distort_out) / rel /
                             distorted_name(src, spec.selection, spec.level, spec.substitution, spec.shuffle);
        exp::write_file(out, doc.bytes);
        std::cout << out.string() << ',' << doc.words_total << ',' << doc.words_replaced << ','
                  << (doc.words_total ? text::percentage_substituted(doc) : 0.0) << '\n';
      }
    } else if (*curve_cmd) {
      auto config = exp::load_config(config_path);
      if (workers_override) config.workers = workers_override;
      if (!output_override.empty()) config.output = output_override;
      const auto dataset = exp::load_dataset(config.dataset, config.clusters,
                                             strict ? text::DecodePolicy::Strict : text::DecodePolicy::Lossy);
      const auto table = text::FrequencyTable::load(config.frequency_list);
      const auto result = exp::run_curve(config, dataset, table, {log_line});
      exp::write_curve_outputs(result, config, config.output);
      for (const auto& c : result.skipped)
        log_line("skipped " + c.backend + "/" + std::string(text::to_string(c.selection)) + "/" +
                 std::string(text::to_string(c.substitution)) + "/" + std::string(text::to_string(c.shuffle)) +
                 ": shuffles apply to asterisk substitution only");
      log_line("wrote " + (config.output / "curve.csv").string());
      if (!result.failures.empty()) return kExitRuntime;
    } else if (*cluster_cmd) {
      std::ifstream in(cluster_matrix);
      if (!in) throw ValidationError("cannot read " + cluster_matrix);
      const auto m = ncd::read_matrix(in);
      const auto tree = cluster::build_dendrogram(m, cluster::parse_builder(builder_name), seed);
      emit(newick_out, cluster::to_newick(tree) + "\n");
      if (!dot_out.empty()) exp::write_file(dot_out, cluster::to_dot(tree));
      if (!clusters_path.empty()) {
        std::ifstream cin_clusters(clusters_path);
        if (!cin_clusters) throw ValidationError("cannot read " + clusters_path);
        const auto report = cluster::clustering_error(tree, cluster::parse_assignment(cin_clusters));
        std::cerr << "a,b,distance\n";
        for (const auto& p : report.pairs) std::cerr << p.a << ',' << p.b << ',' << p.distance << '\n';
        std::cerr << "achieved," << report.achieved_sum << "\nperfect," << report.perfect_sum << "\nerror,"
                  << report.error << '\n';
      }
    } else if (*index_cmd) {
      const auto corpus = corpus_for_index(index_src, hold_out, seed);
      const auto stores = search::index_corpus(corpus.documents, max_window_kb, search::OverlapPolicy{overlap});
      search::save_stores(stores, index_dir);
      if (!corpus.queries.empty()) search::write_topic_corpus({{}, corpus.queries}, index_dir);
      for (const auto& s : stores)
        std::cout << "window " << s.window_kb << " KB: " << s.passages.size() << " passages\n";
    } else if (*query_cmd) {
      const auto stores = search::load_stores(query_index);
      const auto backend = codec::make_backend(backend_name);
      const auto q = to_bytes(text::normalize(to_string(exp::read_file(query_file)),
                                              strict ? text::DecodePolicy::Strict : text::DecodePolicy::Lossy));
      const auto result = search::query(stores, *backend, q, top_k, {query_file, workers, nullptr});
      std::cout << "rank,doc_id,offset,ncd,topic\n" << std::fixed << std::setprecision(6);
      for (std::size_t r = 0; r < result.ranking.size(); ++r) {
        const auto& p = result.ranking[r];
        std::cout << r + 1 << ',' << p.doc_id << ',' << p.offset << ',' << p.score << ',' << p.topic << '\n';
      }
    } else if (*eval_cmd) {
      auto config = exp::load_config(config_path);
      if (workers_override) config.workers = workers_override;
      if (!output_override.empty()) config.output = output_override;
      if (!config.search) throw ValidationError("config has no search section");
      const auto table = text::FrequencyTable::load(config.frequency_list);
      const auto corpus = exp::load_search_corpus(*config.search);
      const auto result = exp::run_search_eval(config, corpus, table, {log_line});
      exp::write_search_eval(result, config.output);
      exp::write_file(config.output / "config.json", exp::to_json(config));
      std::cout << exp::read_file(config.output / "precision.csv").size() << " bytes written to "
                << (config.output / "precision.csv").string() << '\n';
    } else if (*calgary_cmd) {
      std::vector<std::unique_ptr<codec::Backend>> owned;
      std::vector<const codec::Backend*> backends;
      for (const auto& name : backend_list) {
        owned.push_back(codec::make_backend(name));
        backends.push_back(owned.back().get());
      }
      codec::calgary_benchmark(calgary_dir, backends).write_csv(std::cout);
    } else if (*entropy_cmd) {
      std::cout << std::setprecision(12) << text::entropy(probs) << '\n';
    } else if (*map_cmd) {
      const auto table = text::FrequencyTable::load(freq_path);
      const auto set = text::build_removal_set(table, text::parse_selection(method), text::Level::parse(level_text), seed);
      emit(map_out, text::emit_removal_map(read_tokens(map_doc, strict), set, width).to_pbm());
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DecodeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
