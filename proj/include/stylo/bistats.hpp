#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace stylo {

inline constexpr std::size_t kDefaultBinCount = 5;

// Equal-frequency bins. Bin b covers (edges[b-1], edges[b]]; the first bin is
// open below. Edges are actual data values, strictly increasing after merging
// duplicate quantile cuts, so every bin holds at least its own edge value.
struct Binning {
  std::vector<double> edges;
  bool degenerate = false;  // all fitted values identical

  std::size_t bin_count() const { return edges.size(); }
  std::size_t bin_index(double v) const;
};

Binning bin_numeric(const std::vector<double>& values,
                    std::size_t k = kDefaultBinCount);

std::vector<std::size_t> histogram(const Binning& binning,
                                   const std::vector<double>& values);

// O/E chi-square of the in-genre bin occupancy against the population
// proportions. Bins with zero expected count are skipped.
double chi_square(const Binning& binning, const std::vector<double>& values,
                  const std::vector<std::string>& genres,
                  const std::string& genre);

struct AttributeGenreStat {
  std::string attribute;
  double chi_square = 0.0;
  Binning bins;
  std::vector<std::size_t> within_genre_hist;
  std::vector<std::size_t> population_hist;
  // (genre mean - population mean) / population sd; 0 when sd is 0.
  double mean_shift = 0.0;
};

struct GenreReport {
  std::string genre;
  std::map<std::string, double> genre_shares;
  // Sorted by chi-square descending, attribute name ascending on ties.
  std::vector<AttributeGenreStat> per_attribute;
};

GenreReport genre_report(const std::vector<std::vector<double>>& rows,
                         const std::vector<std::string>& names,
                         const std::vector<std::string>& genres,
                         const std::string& genre,
                         std::size_t bins = kDefaultBinCount);

nlohmann::json genre_report_json(const GenreReport& report);

// One document: genre shares plus the ranked attribute list for every genre.
nlohmann::json combined_report_json(const std::vector<GenreReport>& reports);

// Grid of ring panels in ranked attribute order: inner ring = within-genre
// bin shares, outer ring = population bin shares.
std::string ring_chart_svg(const GenreReport& report);

}  // namespace stylo
