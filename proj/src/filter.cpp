#include "stylo/filter.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stylo/error.hpp"
#include "stylo/svg.hpp"

namespace stylo {

CorrelationMatrix correlation_matrix(const std::vector<std::vector<double>>& rows,
                                     const std::vector<std::string>& names) {
  const std::size_t n = rows.size();
  const std::size_t k = names.size();
  if (n < 3) throw DataError("insufficient sample: need at least 3 documents");
  for (const auto& row : rows) {
    if (row.size() != k) throw DataError("feature row width mismatch");
  }

  std::vector<double> mean(k, 0.0);
  for (const auto& row : rows)
    for (std::size_t a = 0; a < k; ++a) mean[a] += row[a];
  for (auto& m : mean) m /= static_cast<double>(n);

  std::vector<double> ss(k, 0.0);  // sum of squared deviations
  for (const auto& row : rows)
    for (std::size_t a = 0; a < k; ++a) {
      const double d = row[a] - mean[a];
      ss[a] += d * d;
    }

  CorrelationMatrix corr;
  corr.names = names;
  corr.constant.resize(k);
  for (std::size_t a = 0; a < k; ++a) corr.constant[a] = ss[a] == 0.0;
  corr.values.assign(k, std::vector<double>(k, 0.0));

  for (std::size_t a = 0; a < k; ++a) {
    corr.values[a][a] = 1.0;
    for (std::size_t b = a + 1; b < k; ++b) {
      double rho = 0.0;
      if (!corr.constant[a] && !corr.constant[b]) {
        double cross = 0.0;
        for (const auto& row : rows)
          cross += (row[a] - mean[a]) * (row[b] - mean[b]);
        rho = cross / std::sqrt(ss[a] * ss[b]);
        rho = std::clamp(rho, -1.0, 1.0);
      }
      corr.values[a][b] = rho;
      corr.values[b][a] = rho;
    }
  }
  return corr;
}

std::vector<std::string> AttributeCatalog::kept_names() const {
  std::vector<std::string> out;
  for (const auto& e : entries)
    if (e.kept) out.push_back(e.attribute);
  return out;
}

std::vector<std::size_t> AttributeCatalog::kept_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].kept) out.push_back(i);
  return out;
}

AttributeCatalog prune_dependent(const CorrelationMatrix& corr, double threshold,
                                 const std::vector<std::size_t>& priority) {
  const std::size_t k = corr.names.size();
  if (threshold <= 0.0 || threshold > 1.0)
    throw DataError("correlation threshold must be in (0, 1]");

  std::vector<std::size_t> order = priority;
  if (order.empty()) {
    order.resize(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
  }
  if (order.size() != k) throw DataError("priority order size mismatch");

  AttributeCatalog catalog;
  catalog.entries.resize(k);
  for (std::size_t i = 0; i < k; ++i) catalog.entries[i].attribute = corr.names[i];

  std::vector<std::size_t> kept;
  for (const std::size_t a : order) {
    CatalogEntry& entry = catalog.entries[a];
    if (corr.constant[a]) {
      entry.kept = false;
      entry.reason = "zero variance";
      continue;
    }
    // Prune against the strongest already-kept partner at or above threshold.
    std::size_t partner = k;
    double best = threshold;
    for (const std::size_t b : kept) {
      const double rho = std::abs(corr.values[a][b]);
      if (rho >= best) {
        best = rho;
        partner = b;
      }
    }
    if (partner != k) {
      entry.kept = false;
      entry.reason = "correlated";
      entry.dependent_with = corr.names[partner];
    } else {
      entry.kept = true;
      kept.push_back(a);
    }
  }
  return catalog;
}

std::string scatter_matrix_svg(const std::vector<std::vector<double>>& rows,
                               const std::vector<std::string>& names,
                               const AttributeCatalog& catalog) {
  const auto kept = catalog.kept_indices();
  if (kept.empty()) throw DataError("no kept attributes to plot");
  const std::size_t k = kept.size();

  constexpr double kCell = 150.0, kGap = 8.0, kMargin = 12.0, kPad = 8.0;
  const double size = 2 * kMargin + static_cast<double>(k) * kCell +
                      static_cast<double>(k - 1) * kGap;

  // Per-attribute value ranges for panel scaling.
  std::vector<double> lo(k), hi(k);
  for (std::size_t i = 0; i < k; ++i) {
    lo[i] = hi[i] = rows.empty() ? 0.0 : rows[0][kept[i]];
    for (const auto& row : rows) {
      lo[i] = std::min(lo[i], row[kept[i]]);
      hi[i] = std::max(hi[i], row[kept[i]]);
    }
  }
  const auto scaled = [&](std::size_t i, double v) {
    if (hi[i] == lo[i]) return 0.5;
    return (v - lo[i]) / (hi[i] - lo[i]);
  };

  svg::Writer w(size, size);
  w.rect(0, 0, size, size, "fill=\"white\"");
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      const double x0 = kMargin + static_cast<double>(c) * (kCell + kGap);
      const double y0 = kMargin + static_cast<double>(r) * (kCell + kGap);
      if (r == c) {
        w.open_group("class=\"panel diagonal\"");
        w.rect(x0, y0, kCell, kCell, "fill=\"#f4f4f4\" stroke=\"#999999\"");
        w.text(x0 + kCell / 2, y0 + kCell / 2, names[kept[r]],
               "text-anchor=\"middle\" dominant-baseline=\"middle\" "
               "font-family=\"monospace\" font-size=\"10\"");
        w.close_group();
      } else {
        w.open_group("class=\"panel\"");
        w.rect(x0, y0, kCell, kCell, "fill=\"none\" stroke=\"#999999\"");
        for (const auto& row : rows) {
          const double px =
              x0 + kPad + scaled(c, row[kept[c]]) * (kCell - 2 * kPad);
          const double py =
              y0 + kCell - kPad - scaled(r, row[kept[r]]) * (kCell - 2 * kPad);
          w.circle(px, py, 2.0, "fill=\"#336699\" fill-opacity=\"0.7\"");
        }
        w.close_group();
      }
    }
  }
  return std::move(w).finish();
}

std::string catalog_csv(const AttributeCatalog& catalog) {
  std::ostringstream out;
  out << "attribute,kept,reason,dependent_with\n";
  for (const auto& e : catalog.entries) {
    out << e.attribute << ',' << (e.kept ? "true" : "false") << ',' << e.reason
        << ',' << e.dependent_with << '\n';
  }
  return out.str();
}

}  // namespace stylo
