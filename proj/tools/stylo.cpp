#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "stylo/bistats.hpp"
#include "stylo/cluster.hpp"
#include "stylo/clusgen.hpp"
#include "stylo/corpus.hpp"
#include "stylo/csv.hpp"
#include "stylo/error.hpp"
#include "stylo/features.hpp"
#include "stylo/filter.hpp"
#include "stylo/lexicon.hpp"
#include "stylo/unicode.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config_file;
  std::string corpus;
  std::string lexicons = "data";
  std::string stopwords;
  std::string freq_table;
  std::string pos_lexicon;
  std::string pos_suffixes;
  std::uint64_t entropy_window = stylo::kDefaultEntropyWindow;
  double corr_threshold = stylo::kDefaultCorrelationThreshold;
  std::string priority_genre;
  std::size_t bins = stylo::kDefaultBinCount;
  double alpha = 0.5;
  std::size_t passes = 10;
  stylo::GaParams ga;
  std::uint64_t seed = 42;
  std::string out;
  std::string model_path;
  bool svg = false;
  std::vector<std::string> inputs;
};

std::string trimmed(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Expands a key=value config file into trailing --key=value tokens. Keys
// already present on the command line are skipped, so explicit flags win.
std::vector<std::string> with_config_args(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw stylo::DataError("cannot read config file: " + path);

  std::string line;
  while (std::getline(in, line)) {
    const std::string entry = trimmed(line);
    if (entry.empty() || entry[0] == '#') continue;
    const std::size_t eq = entry.find('=');
    const std::string key =
        eq == std::string::npos ? std::string() : trimmed(entry.substr(0, eq));
    if (key.empty())
      throw stylo::DataError("config line is not key=value: " + entry);
    std::string value = trimmed(entry.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    const std::string flag = "--" + key;
    const bool given =
        std::any_of(args.begin(), args.end(), [&](const std::string& a) {
          return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    if (!given) args.push_back(flag + "=" + value);
  }
  return args;
}

void add_lexicon_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--lexicons", o.lexicons, "Directory holding the lexicon data files")
      ->capture_default_str();
  cmd->add_option("--stopwords", o.stopwords,
                  "Stop-word list (default <lexicons>/stopwords_de.txt)");
  cmd->add_option("--freq-table", o.freq_table,
                  "Reference frequency table (default <lexicons>/freq_table_de.tsv)");
  cmd->add_option("--pos-lexicon", o.pos_lexicon,
                  "Word-class entries (default <lexicons>/pos_lexicon_de.tsv)");
  cmd->add_option("--pos-suffixes", o.pos_suffixes,
                  "Word-class suffix rules (default <lexicons>/pos_suffix_de.tsv)");
  cmd->add_option("--entropy-window", o.entropy_window,
                  "Token window for the entropy attribute")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_corpus_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--corpus", o.corpus, "Corpus directory containing manifest.csv")
      ->required();
  add_lexicon_options(cmd, o);
}

void add_out_option(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Output directory for artifacts")->required();
}

void add_filter_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--corr-threshold", o.corr_threshold,
                  "Absolute Pearson correlation at or above which an attribute "
                  "is pruned")
      ->capture_default_str();
  cmd->add_option("--priority-genre", o.priority_genre,
                  "Visit attributes in this genre's chi-square order when "
                  "pruning (default: feature order)");
}

void add_bins_option(CLI::App* cmd, Options& o) {
  cmd->add_option("--bins", o.bins, "Equal-frequency bin count for chi-square")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
}

void add_seed_option(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Seed for all randomized steps")
      ->capture_default_str();
}

void add_cluster_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--alpha", o.alpha, "Vote threshold in z-score units")
      ->capture_default_str();
  cmd->add_option("--passes", o.passes, "Maximum clustering passes")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_ga_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--population", o.ga.population_size, "GA population size")
      ->capture_default_str();
  cmd->add_option("--generations", o.ga.generations, "Maximum GA generations")
      ->capture_default_str();
  cmd->add_option("--crossover-rate", o.ga.crossover_rate, "Uniform crossover rate")
      ->capture_default_str();
  cmd->add_option("--mutation-rate", o.ga.mutation_rate, "Per-gene mutation rate")
      ->capture_default_str();
  cmd->add_option("--mutation-sigma", o.ga.mutation_sigma,
                  "Gaussian mutation step size")
      ->capture_default_str();
  cmd->add_option("--elitism", o.ga.elitism_count, "Genomes copied unchanged")
      ->capture_default_str();
}

void resolve_defaults(Options& o) {
  const auto in_lexicons = [&](const char* name) {
    return (fs::path(o.lexicons) / name).string();
  };
  if (o.stopwords.empty()) o.stopwords = in_lexicons("stopwords_de.txt");
  if (o.freq_table.empty()) o.freq_table = in_lexicons("freq_table_de.tsv");
  if (o.pos_lexicon.empty()) o.pos_lexicon = in_lexicons("pos_lexicon_de.tsv");
  if (o.pos_suffixes.empty()) o.pos_suffixes = in_lexicons("pos_suffix_de.tsv");
  o.ga.seed = o.seed;
}

stylo::LexiconSet load_lexica(const Options& o) {
  stylo::LexiconSet lexica;
  lexica.stops = stylo::load_stop_words(o.stopwords);
  lexica.freq = stylo::load_frequency_table(o.freq_table);
  lexica.pos = stylo::load_pos_lexicon(o.pos_lexicon, o.pos_suffixes);
  return lexica;
}

struct PipelineData {
  std::vector<stylo::FeatureRow> rows;
  std::vector<std::vector<double>> matrix;  // all numeric attributes
  std::vector<std::string> names;
  std::vector<std::string> genres;
};

PipelineData extract_pipeline(const Options& o) {
  PipelineData p;
  const auto docs = stylo::load_corpus(o.corpus);
  if (docs.empty()) throw stylo::DataError("corpus has no documents");
  const auto lexica = load_lexica(o);
  for (const auto& doc : docs) {
    const auto stream = stylo::tokenize(doc.text);
    if (stream.empty())
      throw stylo::DataError("document \"" + doc.id + "\" contains no tokens");
    p.rows.push_back({doc.id, doc.author, doc.genre,
                      stylo::extract_features(stream, lexica, o.entropy_window)});
  }
  p.matrix = stylo::numeric_matrix(p.rows);
  p.names = stylo::numeric_attribute_names();
  for (const auto& row : p.rows) p.genres.push_back(row.genre);
  return p;
}

stylo::AttributeCatalog prune_step(const PipelineData& p, const Options& o) {
  const auto corr = stylo::correlation_matrix(p.matrix, p.names);
  std::vector<std::size_t> priority;
  if (!o.priority_genre.empty()) {
    const auto report = stylo::genre_report(p.matrix, p.names, p.genres,
                                            o.priority_genre, o.bins);
    std::map<std::string, std::size_t> index_of;
    for (std::size_t i = 0; i < p.names.size(); ++i) index_of[p.names[i]] = i;
    for (const auto& stat : report.per_attribute)
      priority.push_back(index_of.at(stat.attribute));
  }
  return stylo::prune_dependent(corr, o.corr_threshold, priority);
}

struct KeptData {
  std::vector<std::string> names;
  std::vector<std::vector<double>> matrix;
  std::vector<stylo::LabeledVector> labeled;
};

KeptData select_kept(const PipelineData& p, const stylo::AttributeCatalog& catalog) {
  KeptData kept;
  kept.names = catalog.kept_names();
  const auto indices = catalog.kept_indices();
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    std::vector<double> values;
    values.reserve(indices.size());
    for (const std::size_t a : indices) values.push_back(p.matrix[i][a]);
    kept.matrix.push_back(values);
    kept.labeled.push_back({p.rows[i].author, p.rows[i].genre, p.rows[i].id,
                            std::move(values)});
  }
  return kept;
}

nlohmann::json config_json(const Options& o, const std::string& subcommand) {
  return {{"subcommand", subcommand},
          {"corpus", o.corpus},
          {"lexicons",
           {{"stopwords", o.stopwords},
            {"freq_table", o.freq_table},
            {"pos_lexicon", o.pos_lexicon},
            {"pos_suffixes", o.pos_suffixes}}},
          {"entropy_window", o.entropy_window},
          {"correlation_threshold", o.corr_threshold},
          {"priority_genre", o.priority_genre},
          {"bins", o.bins},
          {"alpha", o.alpha},
          {"max_passes", o.passes},
          {"ga",
           {{"population_size", o.ga.population_size},
            {"generations", o.ga.generations},
            {"crossover_rate", o.ga.crossover_rate},
            {"mutation_rate", o.ga.mutation_rate},
            {"mutation_sigma", o.ga.mutation_sigma},
            {"elitism_count", o.ga.elitism_count}}},
          {"seed", o.seed},
          {"out", o.out}};
}

void write_artifact(const Options& o, const std::string& name,
                    std::string_view content) {
  fs::create_directories(o.out);
  stylo::write_file(fs::path(o.out) / name, content);
}

void write_json_artifact(const Options& o, const std::string& name,
                         const nlohmann::json& j) {
  write_artifact(o, name, j.dump(2) + "\n");
}

std::string safe_file_part(const std::string& label) {
  std::string out;
  for (const char c : label)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
               ? c
               : '_';
  return out;
}

nlohmann::json parse_json_file(const std::string& path) {
  try {
    return nlohmann::json::parse(stylo::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw stylo::DataError("invalid JSON in " + path + ": " + e.what());
  }
}

std::vector<double> vector_for_model(const stylo::MedianModel& model,
                                     const stylo::FeatureVector& fv) {
  const auto& names = stylo::numeric_attribute_names();
  const auto values = stylo::numeric_row(fv);
  std::map<std::string, double> by_name;
  for (std::size_t i = 0; i < names.size(); ++i) by_name[names[i]] = values[i];
  std::vector<double> out;
  out.reserve(model.attributes.size());
  for (const auto& attr : model.attributes) {
    const auto it = by_name.find(attr);
    if (it == by_name.end())
      throw stylo::DataError("model attribute \"" + attr +
                             "\" is not produced by the feature extractor");
    out.push_back(it->second);
  }
  return out;
}

std::vector<stylo::GenreReport> all_genre_reports(const PipelineData& p,
                                                  const Options& o) {
  std::set<std::string> genre_set(p.genres.begin(), p.genres.end());
  std::vector<stylo::GenreReport> reports;
  for (const auto& genre : genre_set)
    reports.push_back(
        stylo::genre_report(p.matrix, p.names, p.genres, genre, o.bins));
  return reports;
}

void run_ingest(const Options& o) {
  const auto docs = stylo::load_corpus(o.corpus);
  std::set<std::string> authors, genres;
  for (const auto& doc : docs) {
    authors.insert(doc.author);
    genres.insert(doc.genre);
  }
  std::cout << "documents: " << docs.size() << "\n"
            << "authors: " << authors.size() << "\n"
            << "genres: " << genres.size() << "\n";
}

void run_extract(const Options& o) {
  const auto p = extract_pipeline(o);
  write_artifact(o, "features.csv", stylo::feature_csv(p.rows));
  write_json_artifact(o, "run_config.json", config_json(o, "extract"));
}

void run_filter(const Options& o) {
  const auto p = extract_pipeline(o);
  const auto catalog = prune_step(p, o);
  write_artifact(o, "attribute_catalog.csv", stylo::catalog_csv(catalog));
  write_artifact(o, "scatter_matrix.svg",
                 stylo::scatter_matrix_svg(p.matrix, p.names, catalog));
  write_json_artifact(o, "run_config.json", config_json(o, "filter"));
}

void run_stats(const Options& o) {
  const auto p = extract_pipeline(o);
  const auto reports = all_genre_reports(p, o);
  write_json_artifact(o, "genre_report.json",
                      stylo::combined_report_json(reports));
  if (o.svg)
    for (const auto& report : reports)
      write_artifact(o, "rings_" + safe_file_part(report.genre) + ".svg",
                     stylo::ring_chart_svg(report));
  write_json_artifact(o, "run_config.json", config_json(o, "stats"));
}

void run_cluster(const Options& o) {
  const auto p = extract_pipeline(o);
  const auto kept = select_kept(p, prune_step(p, o));
  const stylo::ClusterParams params{o.alpha, o.passes, o.seed};
  const auto clusters = stylo::demographic_cluster(kept.matrix, params);
  std::vector<stylo::DocumentLabel> labels;
  for (const auto& row : p.rows) labels.push_back({row.id, row.author, row.genre});
  write_json_artifact(o, "clusters.json",
                      stylo::cluster_report_json(clusters, kept.matrix,
                                                 kept.names, labels, params));
  write_json_artifact(o, "run_config.json", config_json(o, "cluster"));
}

void run_train(const Options& o) {
  const auto p = extract_pipeline(o);
  const auto kept = select_kept(p, prune_step(p, o));
  const auto model = stylo::train(kept.labeled, kept.names, o.ga);
  write_json_artifact(o, "model.json", stylo::model_json(model));
  write_json_artifact(o, "run_config.json", config_json(o, "train"));
}

void run_classify(const Options& o) {
  const auto model = stylo::model_from_json(parse_json_file(o.model_path));
  const auto lexica = load_lexica(o);
  for (const auto& path : o.inputs) {
    const std::string text = stylo::read_file(path);
    if (!stylo::valid_utf8(text))
      throw stylo::DataError("file is not valid UTF-8: " + path);
    const auto stream = stylo::tokenize(text);
    if (stream.empty())
      throw stylo::DataError("file contains no tokens: " + path);
    const auto fv = stylo::extract_features(stream, lexica, o.entropy_window);
    std::cout << path << "\t" << stylo::classify(model, vector_for_model(model, fv))
              << "\n";
  }
}

void run_evaluate(const Options& o) {
  const auto model = stylo::model_from_json(parse_json_file(o.model_path));
  const auto p = extract_pipeline(o);
  std::vector<stylo::LabeledVector> test;
  for (const auto& row : p.rows)
    test.push_back({row.author, row.genre, row.id,
                    vector_for_model(model, row.features)});
  write_json_artifact(o, "rates.json", stylo::rates_json(stylo::evaluate(model, test)));
  write_json_artifact(o, "run_config.json", config_json(o, "evaluate"));
}

void run_report(const Options& o) {
  const auto p = extract_pipeline(o);
  write_artifact(o, "features.csv", stylo::feature_csv(p.rows));

  const auto catalog = prune_step(p, o);
  write_artifact(o, "attribute_catalog.csv", stylo::catalog_csv(catalog));
  write_artifact(o, "scatter_matrix.svg",
                 stylo::scatter_matrix_svg(p.matrix, p.names, catalog));

  const auto reports = all_genre_reports(p, o);
  write_json_artifact(o, "genre_report.json",
                      stylo::combined_report_json(reports));
  if (o.svg)
    for (const auto& report : reports)
      write_artifact(o, "rings_" + safe_file_part(report.genre) + ".svg",
                     stylo::ring_chart_svg(report));

  const auto kept = select_kept(p, catalog);
  const stylo::ClusterParams params{o.alpha, o.passes, o.seed};
  const auto clusters = stylo::demographic_cluster(kept.matrix, params);
  std::vector<stylo::DocumentLabel> labels;
  for (const auto& row : p.rows) labels.push_back({row.id, row.author, row.genre});
  write_json_artifact(o, "clusters.json",
                      stylo::cluster_report_json(clusters, kept.matrix,
                                                 kept.names, labels, params));

  const auto model = stylo::train(kept.labeled, kept.names, o.ga);
  write_json_artifact(o, "model.json", stylo::model_json(model));
  write_json_artifact(o, "rates.json",
                      stylo::rates_json(stylo::evaluate(model, kept.labeled)));
  write_json_artifact(o, "run_config.json", config_json(o, "report"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stylometric authorship analysis pipeline", "stylo"};
  app.set_version_flag("--version", "stylo 1.0.0");
  app.require_subcommand(1);

  Options o;

  CLI::App* ingest = app.add_subcommand("ingest", "Validate a corpus manifest");
  ingest->add_option("--corpus", o.corpus, "Corpus directory containing manifest.csv")
      ->required();

  CLI::App* extract =
      app.add_subcommand("extract", "Write the per-document feature CSV");
  add_corpus_options(extract, o);
  add_out_option(extract, o);

  CLI::App* filter = app.add_subcommand(
      "filter", "Prune dependent attributes; write catalog and scatter matrix");
  add_corpus_options(filter, o);
  add_filter_options(filter, o);
  add_bins_option(filter, o);
  add_out_option(filter, o);

  CLI::App* stats = app.add_subcommand(
      "stats", "Rank attributes by chi-square against each genre");
  add_corpus_options(stats, o);
  add_bins_option(stats, o);
  stats->add_flag("--svg", o.svg, "Also write per-genre ring charts");
  add_out_option(stats, o);

  CLI::App* cluster =
      app.add_subcommand("cluster", "Demographic clustering of the corpus");
  add_corpus_options(cluster, o);
  add_filter_options(cluster, o);
  add_bins_option(cluster, o);
  add_cluster_options(cluster, o);
  add_seed_option(cluster, o);
  add_out_option(cluster, o);

  CLI::App* train =
      app.add_subcommand("train", "Train the genetic median-vector classifier");
  add_corpus_options(train, o);
  add_filter_options(train, o);
  add_bins_option(train, o);
  add_ga_options(train, o);
  add_seed_option(train, o);
  add_out_option(train, o);

  CLI::App* classify =
      app.add_subcommand("classify", "Assign authors to free-standing texts");
  classify->add_option("--model", o.model_path, "Trained model JSON")->required();
  add_lexicon_options(classify, o);
  classify->add_option("texts", o.inputs, "UTF-8 text files to classify")
      ->required()
      ->expected(-1);

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Classification rates of a model over a labeled corpus");
  evaluate->add_option("--model", o.model_path, "Trained model JSON")->required();
  add_corpus_options(evaluate, o);
  add_out_option(evaluate, o);

  CLI::App* report =
      app.add_subcommand("report", "Run the whole pipeline into one directory");
  add_corpus_options(report, o);
  add_filter_options(report, o);
  add_bins_option(report, o);
  report->add_flag("--svg", o.svg, "Also write per-genre ring charts");
  add_cluster_options(report, o);
  add_ga_options(report, o);
  add_seed_option(report, o);
  add_out_option(report, o);

  for (CLI::App* sub : app.get_subcommands(nullptr))
    sub->add_option("--config", o.config_file,
                    "Key=value config file; explicit flags win");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = with_config_args(std::move(args));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    resolve_defaults(o);
    if (ingest->parsed()) run_ingest(o);
    if (extract->parsed()) run_extract(o);
    if (filter->parsed()) run_filter(o);
    if (stats->parsed()) run_stats(o);
    if (cluster->parsed()) run_cluster(o);
    if (train->parsed()) run_train(o);
    if (classify->parsed()) run_classify(o);
    if (evaluate->parsed()) run_evaluate(o);
    if (report->parsed()) run_report(o);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
