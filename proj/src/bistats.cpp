#include "stylo/bistats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stylo/error.hpp"
#include "stylo/svg.hpp"

namespace stylo {

std::size_t Binning::bin_index(double v) const {
  for (std::size_t b = 0; b + 1 < edges.size(); ++b)
    if (v <= edges[b]) return b;
  return edges.empty() ? 0 : edges.size() - 1;
}

Binning bin_numeric(const std::vector<double>& values, std::size_t k) {
  if (values.empty()) throw DataError("cannot bin an empty value sequence");
  if (k < 2) throw DataError("bin count must be at least 2");

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());

  Binning binning;
  if (sorted.front() == sorted.back()) {
    binning.edges = {sorted.front()};
    binning.degenerate = true;
    return binning;
  }

  // Upper edge of quantile bin i is sorted[(i*n)/k - 1]; the last edge is the
  // maximum. Duplicate cuts collapse, so fewer than k bins may remain.
  const std::size_t n = sorted.size();
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t idx = std::max<std::size_t>(1, (i * n) / k) - 1;
    binning.edges.push_back(sorted[idx]);
  }
  binning.edges.erase(std::unique(binning.edges.begin(), binning.edges.end()),
                      binning.edges.end());
  return binning;
}

std::vector<std::size_t> histogram(const Binning& binning,
                                   const std::vector<double>& values) {
  std::vector<std::size_t> counts(binning.bin_count(), 0);
  for (const double v : values) ++counts[binning.bin_index(v)];
  return counts;
}

namespace {

double chi_square_from_hists(const std::vector<std::size_t>& within,
                             const std::vector<std::size_t>& population) {
  std::size_t n = 0, g = 0;
  for (const std::size_t c : population) n += c;
  for (const std::size_t c : within) g += c;
  if (n == 0) return 0.0;

  double chi = 0.0;
  for (std::size_t b = 0; b < population.size(); ++b) {
    const double expected = static_cast<double>(population[b]) /
                            static_cast<double>(n) * static_cast<double>(g);
    if (expected == 0.0) continue;
    const double diff = static_cast<double>(within[b]) - expected;
    chi += diff * diff / expected;
  }
  return chi;
}

}  // namespace

double chi_square(const Binning& binning, const std::vector<double>& values,
                  const std::vector<std::string>& genres,
                  const std::string& genre) {
  if (values.size() != genres.size())
    throw DataError("value and genre sequences differ in length");

  std::vector<double> in_genre;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (genres[i] == genre) in_genre.push_back(values[i]);
  if (in_genre.empty())
    throw DataError("genre \"" + genre + "\" absent from corpus");

  return chi_square_from_hists(histogram(binning, in_genre),
                               histogram(binning, values));
}

GenreReport genre_report(const std::vector<std::vector<double>>& rows,
                         const std::vector<std::string>& names,
                         const std::vector<std::string>& genres,
                         const std::string& genre, std::size_t bins) {
  const std::size_t n = rows.size();
  if (n == 0) throw DataError("genre report needs a non-empty corpus");
  if (genres.size() != n)
    throw DataError("row and genre sequences differ in length");
  for (const auto& row : rows)
    if (row.size() != names.size())
      throw DataError("feature row width mismatch");

  GenreReport report;
  report.genre = genre;

  std::map<std::string, std::size_t> genre_counts;
  for (const auto& g : genres) ++genre_counts[g];
  if (genre_counts.size() < 2)
    throw DataError("genre report requires at least 2 genres");
  if (!genre_counts.count(genre))
    throw DataError("genre \"" + genre + "\" absent from corpus");
  for (const auto& [label, count] : genre_counts)
    report.genre_shares[label] =
        static_cast<double>(count) / static_cast<double>(n);

  for (std::size_t a = 0; a < names.size(); ++a) {
    std::vector<double> all(n);
    std::vector<double> within;
    for (std::size_t i = 0; i < n; ++i) {
      all[i] = rows[i][a];
      if (genres[i] == genre) within.push_back(rows[i][a]);
    }

    AttributeGenreStat stat;
    stat.attribute = names[a];
    stat.bins = bin_numeric(all, bins);
    stat.within_genre_hist = histogram(stat.bins, within);
    stat.population_hist = histogram(stat.bins, all);
    stat.chi_square =
        chi_square_from_hists(stat.within_genre_hist, stat.population_hist);

    double pop_mean = 0.0;
    for (const double v : all) pop_mean += v;
    pop_mean /= static_cast<double>(n);
    double pop_var = 0.0;
    for (const double v : all) pop_var += (v - pop_mean) * (v - pop_mean);
    pop_var /= static_cast<double>(n);
    if (pop_var > 0.0) {
      double genre_mean = 0.0;
      for (const double v : within) genre_mean += v;
      genre_mean /= static_cast<double>(within.size());
      stat.mean_shift = (genre_mean - pop_mean) / std::sqrt(pop_var);
    }
    report.per_attribute.push_back(std::move(stat));
  }

  std::stable_sort(report.per_attribute.begin(), report.per_attribute.end(),
                   [](const AttributeGenreStat& a, const AttributeGenreStat& b) {
                     if (a.chi_square != b.chi_square)
                       return a.chi_square > b.chi_square;
                     return a.attribute < b.attribute;
                   });
  return report;
}

nlohmann::json genre_report_json(const GenreReport& report) {
  nlohmann::json attrs = nlohmann::json::array();
  for (const auto& stat : report.per_attribute) {
    attrs.push_back({{"attribute", stat.attribute},
                     {"chi_square", stat.chi_square},
                     {"bin_edges", stat.bins.edges},
                     {"degenerate", stat.bins.degenerate},
                     {"within_genre_hist", stat.within_genre_hist},
                     {"population_hist", stat.population_hist},
                     {"mean_shift", stat.mean_shift}});
  }
  return {{"genre", report.genre}, {"per_attribute", attrs}};
}

nlohmann::json combined_report_json(const std::vector<GenreReport>& reports) {
  if (reports.empty()) throw DataError("no genre reports to serialize");
  nlohmann::json per_genre = nlohmann::json::object();
  for (const auto& report : reports)
    per_genre[report.genre] = genre_report_json(report)["per_attribute"];
  return {{"format_version", 1},
          {"genre_shares", reports.front().genre_shares},
          {"per_genre", per_genre}};
}

namespace {

constexpr const char* kRingPalette[] = {"#4e79a7", "#f28e2b", "#e15759",
                                        "#76b7b2", "#59a14f", "#edc948",
                                        "#b07aa1", "#ff9da7"};
constexpr std::size_t kRingPaletteSize = 8;

void ring(svg::Writer& w, double cx, double cy, double r_in, double r_out,
          const std::vector<std::size_t>& hist) {
  std::size_t total = 0;
  for (const std::size_t c : hist) total += c;
  if (total == 0) return;

  double frac = 0.0;
  for (std::size_t b = 0; b < hist.size(); ++b) {
    if (hist[b] == 0) continue;
    const double span = static_cast<double>(hist[b]) / static_cast<double>(total);
    std::string style = "fill=\"" +
                        std::string(kRingPalette[b % kRingPaletteSize]) +
                        "\" stroke=\"white\" stroke-width=\"0.5\"";
    if (span >= 1.0) {
      // A full circle degenerates as one arc; draw it as two halves.
      w.path(svg::annulus_segment(cx, cy, r_in, r_out, 0.0, 0.5), style);
      w.path(svg::annulus_segment(cx, cy, r_in, r_out, 0.5, 1.0), style);
    } else {
      w.path(svg::annulus_segment(cx, cy, r_in, r_out, frac, frac + span),
             style);
    }
    frac += span;
  }
}

}  // namespace

std::string ring_chart_svg(const GenreReport& report) {
  const std::size_t count = report.per_attribute.size();
  if (count == 0) throw DataError("no attributes to chart");

  constexpr double kCellW = 100.0, kCellH = 118.0, kMargin = 10.0;
  const std::size_t cols = std::min<std::size_t>(5, count);
  const std::size_t rows = (count + cols - 1) / cols;
  const double width = 2 * kMargin + static_cast<double>(cols) * kCellW;
  const double height =
      2 * kMargin + 16.0 + static_cast<double>(rows) * kCellH;

  svg::Writer w(width, height);
  w.rect(0, 0, width, height, "fill=\"white\"");
  w.text(kMargin, kMargin + 10, "genre: " + report.genre,
         "font-family=\"monospace\" font-size=\"11\"");

  for (std::size_t i = 0; i < count; ++i) {
    const auto& stat = report.per_attribute[i];
    const double x0 =
        kMargin + static_cast<double>(i % cols) * kCellW;
    const double y0 =
        kMargin + 16.0 + static_cast<double>(i / cols) * kCellH;
    const double cx = x0 + kCellW / 2;
    const double cy = y0 + 64.0;

    w.open_group("class=\"panel\"");
    w.text(cx, y0 + 12, stat.attribute,
           "text-anchor=\"middle\" font-family=\"monospace\" font-size=\"8\"");
    ring(w, cx, cy, 14.0, 26.0, stat.within_genre_hist);
    ring(w, cx, cy, 28.0, 40.0, stat.population_hist);
    std::ostringstream chi;
    chi.precision(3);
    chi << "chi2 " << stat.chi_square;
    w.text(cx, y0 + kCellH - 4, chi.str(),
           "text-anchor=\"middle\" font-family=\"monospace\" font-size=\"8\"");
    w.close_group();
  }
  return std::move(w).finish();
}

}  // namespace stylo
