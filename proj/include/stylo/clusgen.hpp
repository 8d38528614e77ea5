#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace stylo {

struct GaParams {
  std::size_t population_size = 64;
  std::size_t generations = 200;
  double crossover_rate = 0.8;
  double mutation_rate = 0.1;
  double mutation_sigma = 0.1;
  std::size_t elitism_count = 2;
  std::uint64_t seed = 42;
};

struct LabeledVector {
  std::string author;
  std::string genre;
  std::string id;
  std::vector<double> values;  // raw feature space, full attribute order
};

// Nearest-median classifier in z-score space. Vectors are full attribute
// width; zero-variance attributes are excluded from the metric (sd and weight
// both 0) and listed in excluded_attributes.
struct MedianModel {
  std::vector<std::string> attributes;
  std::vector<std::string> excluded_attributes;
  std::vector<double> mean;
  std::vector<double> sd;
  std::vector<std::string> authors;  // sorted, the tie-break order
  std::map<std::string, std::vector<double>> medians;  // z-space
  std::vector<double> weights;  // >= 0, sum 1 unless degenerate
  double loo_accuracy = 0.0;
  std::size_t generations_run = 0;
  bool degenerate = false;  // no attribute carried any variance
  GaParams ga_params;
};

// Componentwise median; even counts average the two central values.
std::vector<double> median_vector(const std::vector<std::vector<double>>& vectors);

// Argmin over authors of the weighted squared z-space distance; ties go to the
// lexicographically first author. `raw` is in raw feature space.
std::string classify(const MedianModel& model, const std::vector<double>& raw);

// GA over attribute weights; fitness is leave-one-out accuracy with the
// held-out author's median recomputed per fold. Fully determined by the seed.
MedianModel train(const std::vector<LabeledVector>& training,
                  const std::vector<std::string>& attribute_names,
                  const GaParams& params = {});

struct RatesReport {
  double overall = 0.0;
  std::map<std::string, double> per_genre;
  std::map<std::string, std::size_t> per_genre_count;
  std::map<std::string, std::map<std::string, std::size_t>> confusion;
  std::size_t n_test = 0;
};

RatesReport evaluate(const MedianModel& model,
                     const std::vector<LabeledVector>& test);

nlohmann::json model_json(const MedianModel& model);
MedianModel model_from_json(const nlohmann::json& j);
nlohmann::json rates_json(const RatesReport& report);

}  // namespace stylo
