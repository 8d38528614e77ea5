#include "stylo/clusgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "stylo/error.hpp"
#include "stylo/rng.hpp"

namespace stylo {

std::vector<double> median_vector(const std::vector<std::vector<double>>& vectors) {
  if (vectors.empty()) throw DataError("median of an empty vector set");
  const std::size_t width = vectors[0].size();
  for (const auto& v : vectors)
    if (v.size() != width) throw DataError("feature row width mismatch");

  std::vector<double> out(width);
  std::vector<double> column(vectors.size());
  for (std::size_t a = 0; a < width; ++a) {
    for (std::size_t i = 0; i < vectors.size(); ++i) column[i] = vectors[i][a];
    std::sort(column.begin(), column.end());
    const std::size_t n = column.size();
    out[a] = n % 2 == 1 ? column[n / 2]
                        : (column[n / 2 - 1] + column[n / 2]) / 2.0;
  }
  return out;
}

std::string classify(const MedianModel& model, const std::vector<double>& raw) {
  if (model.authors.empty()) throw DataError("model has no authors");
  const std::size_t width = model.attributes.size();
  if (raw.size() != width) throw DataError("feature vector width mismatch");

  std::vector<double> z(width, 0.0);
  for (std::size_t a = 0; a < width; ++a)
    if (model.sd[a] > 0.0) z[a] = (raw[a] - model.mean[a]) / model.sd[a];

  // Authors are sorted, so the first minimum is the lexicographic tie-break.
  std::string best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto& author : model.authors) {
    const auto& median = model.medians.at(author);
    double dist = 0.0;
    for (std::size_t a = 0; a < width; ++a) {
      const double d = z[a] - median[a];
      dist += model.weights[a] * d * d;
    }
    if (best.empty() || dist < best_dist) {
      best = author;
      best_dist = dist;
    }
  }
  return best;
}

namespace {

void normalize_genome(std::vector<double>& genome) {
  double sum = 0.0;
  for (const double g : genome) sum += g;
  if (sum > 0.0) {
    for (double& g : genome) g /= sum;
  } else {
    std::fill(genome.begin(), genome.end(),
              1.0 / static_cast<double>(genome.size()));
  }
}

}  // namespace

MedianModel train(const std::vector<LabeledVector>& training,
                  const std::vector<std::string>& attribute_names,
                  const GaParams& params) {
  const std::size_t n = training.size();
  const std::size_t width = attribute_names.size();
  if (n == 0) throw DataError("training set is empty");
  for (const auto& t : training)
    if (t.values.size() != width) throw DataError("feature row width mismatch");
  if (params.population_size < 2)
    throw DataError("population size must be at least 2");
  if (params.crossover_rate < 0.0 || params.crossover_rate > 1.0 ||
      params.mutation_rate < 0.0 || params.mutation_rate > 1.0)
    throw DataError("crossover and mutation rates must be in [0, 1]");
  if (params.mutation_sigma < 0.0)
    throw DataError("mutation sigma must be non-negative");
  if (params.elitism_count >= params.population_size)
    throw DataError("elitism count must be less than population size");

  std::map<std::string, std::vector<std::size_t>> by_author;
  for (std::size_t i = 0; i < n; ++i) by_author[training[i].author].push_back(i);
  if (by_author.size() < 2)
    throw DataError("training requires at least 2 authors");
  for (const auto& [author, docs] : by_author)
    if (docs.size() < 2)
      throw DataError("author \"" + author + "\" has fewer than 2 documents");

  MedianModel model;
  model.attributes = attribute_names;
  model.ga_params = params;
  for (const auto& [author, docs] : by_author) model.authors.push_back(author);

  model.mean.assign(width, 0.0);
  model.sd.assign(width, 0.0);
  for (const auto& t : training)
    for (std::size_t a = 0; a < width; ++a) model.mean[a] += t.values[a];
  for (double& mval : model.mean) mval /= static_cast<double>(n);
  for (const auto& t : training)
    for (std::size_t a = 0; a < width; ++a) {
      const double d = t.values[a] - model.mean[a];
      model.sd[a] += d * d;
    }
  for (double& s : model.sd) s = std::sqrt(s / static_cast<double>(n));

  std::vector<std::size_t> included;
  for (std::size_t a = 0; a < width; ++a) {
    if (model.sd[a] > 0.0)
      included.push_back(a);
    else
      model.excluded_attributes.push_back(attribute_names[a]);
  }
  const std::size_t m = included.size();

  std::vector<std::vector<double>> z(n, std::vector<double>(width, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < width; ++a)
      if (model.sd[a] > 0.0)
        z[i][a] = (training[i].values[a] - model.mean[a]) / model.sd[a];

  const std::size_t n_authors = model.authors.size();
  std::map<std::string, std::size_t> author_index;
  for (std::size_t c = 0; c < n_authors; ++c) author_index[model.authors[c]] = c;

  std::vector<std::vector<double>> full_median(n_authors);
  for (std::size_t c = 0; c < n_authors; ++c) {
    std::vector<std::vector<double>> rows;
    for (const std::size_t i : by_author[model.authors[c]]) rows.push_back(z[i]);
    full_median[c] = median_vector(rows);
  }
  for (std::size_t c = 0; c < n_authors; ++c)
    model.medians[model.authors[c]] = full_median[c];

  if (m == 0) {
    // No attribute separates anything; classify falls back to the first
    // author, so leave-one-out accuracy is that author's share.
    model.degenerate = true;
    model.weights.assign(width, 0.0);
    model.loo_accuracy =
        static_cast<double>(by_author[model.authors.front()].size()) /
        static_cast<double>(n);
    return model;
  }

  // Holding out one document only changes its own author's median, so the
  // per-fold squared differences can be precomputed once; fitness is then a
  // weight-only argmin scan.
  std::vector<std::size_t> truth(n);
  for (std::size_t i = 0; i < n; ++i) truth[i] = author_index[training[i].author];
  std::vector<double> fold_sq(n * n_authors * m);
  for (std::size_t d = 0; d < n; ++d) {
    for (std::size_t c = 0; c < n_authors; ++c) {
      const std::vector<double>* median = &full_median[c];
      std::vector<double> adjusted;
      if (c == truth[d]) {
        std::vector<std::vector<double>> rows;
        for (const std::size_t i : by_author[model.authors[c]])
          if (i != d) rows.push_back(z[i]);
        adjusted = median_vector(rows);
        median = &adjusted;
      }
      double* out = &fold_sq[(d * n_authors + c) * m];
      for (std::size_t j = 0; j < m; ++j) {
        const double diff = z[d][included[j]] - (*median)[included[j]];
        out[j] = diff * diff;
      }
    }
  }

  const auto fitness = [&](const std::vector<double>& genome) {
    std::size_t correct = 0;
    for (std::size_t d = 0; d < n; ++d) {
      std::size_t best_c = 0;
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < n_authors; ++c) {
        const double* sq = &fold_sq[(d * n_authors + c) * m];
        double dist = 0.0;
        for (std::size_t j = 0; j < m; ++j) dist += genome[j] * sq[j];
        if (dist < best_dist) {
          best_dist = dist;
          best_c = c;
        }
      }
      if (best_c == truth[d]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(n);
  };

  Rng rng(params.seed);
  const std::size_t pop_size = params.population_size;
  std::vector<std::vector<double>> pop(pop_size, std::vector<double>(m));
  std::fill(pop[0].begin(), pop[0].end(), 1.0 / static_cast<double>(m));
  for (std::size_t i = 1; i < pop_size; ++i) {
    for (double& g : pop[i]) g = rng.uniform();
    normalize_genome(pop[i]);
  }

  std::vector<double> fit(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) fit[i] = fitness(pop[i]);

  std::vector<double> best_genome;
  double best_fit = -1.0;
  const auto track_best = [&] {
    for (std::size_t i = 0; i < pop_size; ++i)
      if (fit[i] > best_fit) {
        best_fit = fit[i];
        best_genome = pop[i];
      }
  };
  track_best();

  const auto tournament = [&] {
    std::size_t winner = pop_size;
    for (int t = 0; t < 3; ++t) {
      const std::size_t i = static_cast<std::size_t>(rng.below(pop_size));
      if (winner == pop_size || fit[i] > fit[winner] ||
          (fit[i] == fit[winner] && i < winner))
        winner = i;
    }
    return winner;
  };

  std::size_t gens = 0;
  while (gens < params.generations && best_fit < 1.0) {
    std::vector<std::size_t> rank(pop_size);
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
      return fit[a] > fit[b];
    });

    std::vector<std::vector<double>> next;
    next.reserve(pop_size);
    for (std::size_t e = 0; e < params.elitism_count; ++e)
      next.push_back(pop[rank[e]]);

    while (next.size() < pop_size) {
      const std::size_t p1 = tournament();
      const std::size_t p2 = tournament();
      std::vector<double> child = pop[p1];
      if (rng.uniform() < params.crossover_rate) {
        for (std::size_t j = 0; j < m; ++j)
          if (rng.uniform() >= 0.5) child[j] = pop[p2][j];
        normalize_genome(child);
      }
      for (std::size_t j = 0; j < m; ++j)
        if (rng.uniform() < params.mutation_rate)
          child[j] = std::max(0.0, child[j] + rng.normal(0.0, params.mutation_sigma));
      normalize_genome(child);
      next.push_back(std::move(child));
    }

    pop = std::move(next);
    for (std::size_t i = 0; i < pop_size; ++i) fit[i] = fitness(pop[i]);
    track_best();
    ++gens;
  }

  model.generations_run = gens;
  model.loo_accuracy = best_fit;
  model.weights.assign(width, 0.0);
  for (std::size_t j = 0; j < m; ++j) model.weights[included[j]] = best_genome[j];
  return model;
}

RatesReport evaluate(const MedianModel& model,
                     const std::vector<LabeledVector>& test) {
  if (test.empty()) throw DataError("test set is empty");

  RatesReport report;
  report.n_test = test.size();
  std::map<std::string, std::size_t> genre_correct;
  std::size_t correct = 0;
  for (const auto& t : test) {
    const std::string pred = classify(model, t.values);
    ++report.confusion[t.author][pred];
    ++report.per_genre_count[t.genre];
    if (pred == t.author) {
      ++correct;
      ++genre_correct[t.genre];
    }
  }
  report.overall = static_cast<double>(correct) / static_cast<double>(test.size());
  for (const auto& [genre, total] : report.per_genre_count)
    report.per_genre[genre] =
        static_cast<double>(genre_correct[genre]) / static_cast<double>(total);
  return report;
}

nlohmann::json model_json(const MedianModel& model) {
  nlohmann::json medians = nlohmann::json::object();
  for (const auto& [author, median] : model.medians) medians[author] = median;
  return {{"format_version", 1},
          {"attributes", model.attributes},
          {"excluded_attributes", model.excluded_attributes},
          {"normalization", {{"mean", model.mean}, {"sd", model.sd}}},
          {"authors", model.authors},
          {"medians", medians},
          {"weights", model.weights},
          {"loo_accuracy", model.loo_accuracy},
          {"generations_run", model.generations_run},
          {"degenerate", model.degenerate},
          {"ga_params",
           {{"population_size", model.ga_params.population_size},
            {"generations", model.ga_params.generations},
            {"crossover_rate", model.ga_params.crossover_rate},
            {"mutation_rate", model.ga_params.mutation_rate},
            {"mutation_sigma", model.ga_params.mutation_sigma},
            {"elitism_count", model.ga_params.elitism_count},
            {"seed", model.ga_params.seed}}}};
}

MedianModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format_version").get<int>() != 1)
      throw DataError("unsupported model format version");

    MedianModel model;
    model.attributes = j.at("attributes").get<std::vector<std::string>>();
    model.excluded_attributes =
        j.at("excluded_attributes").get<std::vector<std::string>>();
    model.mean = j.at("normalization").at("mean").get<std::vector<double>>();
    model.sd = j.at("normalization").at("sd").get<std::vector<double>>();
    model.authors = j.at("authors").get<std::vector<std::string>>();
    for (const auto& [author, median] : j.at("medians").items())
      model.medians[author] = median.get<std::vector<double>>();
    model.weights = j.at("weights").get<std::vector<double>>();
    model.loo_accuracy = j.at("loo_accuracy").get<double>();
    model.generations_run = j.at("generations_run").get<std::size_t>();
    model.degenerate = j.at("degenerate").get<bool>();
    const auto& ga = j.at("ga_params");
    model.ga_params.population_size = ga.at("population_size").get<std::size_t>();
    model.ga_params.generations = ga.at("generations").get<std::size_t>();
    model.ga_params.crossover_rate = ga.at("crossover_rate").get<double>();
    model.ga_params.mutation_rate = ga.at("mutation_rate").get<double>();
    model.ga_params.mutation_sigma = ga.at("mutation_sigma").get<double>();
    model.ga_params.elitism_count = ga.at("elitism_count").get<std::size_t>();
    model.ga_params.seed = ga.at("seed").get<std::uint64_t>();

    const std::size_t width = model.attributes.size();
    if (model.mean.size() != width || model.sd.size() != width ||
        model.weights.size() != width)
      throw DataError("model arrays disagree with attribute count");
    std::sort(model.authors.begin(), model.authors.end());
    for (const auto& author : model.authors) {
      const auto it = model.medians.find(author);
      if (it == model.medians.end() || it->second.size() != width)
        throw DataError("model median missing or malformed for author \"" +
                        author + "\"");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid model file: ") + e.what());
  }
}

nlohmann::json rates_json(const RatesReport& report) {
  nlohmann::json per_genre = nlohmann::json::object();
  for (const auto& [genre, accuracy] : report.per_genre)
    per_genre[genre] = {{"accuracy", accuracy},
                        {"n", report.per_genre_count.at(genre)}};
  nlohmann::json confusion = nlohmann::json::object();
  for (const auto& [truth, row] : report.confusion) {
    nlohmann::json out_row = nlohmann::json::object();
    for (const auto& [pred, count] : row) out_row[pred] = count;
    confusion[truth] = out_row;
  }
  return {{"format_version", 1},
          {"overall_accuracy", report.overall},
          {"n_test", report.n_test},
          {"per_genre", per_genre},
          {"confusion", confusion}};
}

}  // namespace stylo
