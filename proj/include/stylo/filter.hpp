#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace stylo {

struct CorrelationMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  // symmetric, diagonal 1
  std::vector<bool> constant;               // zero-variance attributes
};

// Pearson correlation per attribute pair over rows (documents x attributes).
// Constant attributes correlate 0 with everything and are flagged. Throws
// DataError with fewer than 3 rows.
CorrelationMatrix correlation_matrix(const std::vector<std::vector<double>>& rows,
                                     const std::vector<std::string>& names);

struct CatalogEntry {
  std::string attribute;
  bool kept = true;
  std::string reason;          // empty | "correlated" | "zero variance"
  std::string dependent_with;  // partner for "correlated"
};

struct AttributeCatalog {
  std::vector<CatalogEntry> entries;  // input attribute order

  std::vector<std::string> kept_names() const;
  std::vector<std::size_t> kept_indices() const;
};

inline constexpr double kDefaultCorrelationThreshold = 0.7;

// Greedy keep-first pruning: attributes are visited in priority order (default
// input order) and pruned when |rho| >= threshold against an already-kept
// attribute. Constant attributes are always pruned.
AttributeCatalog prune_dependent(const CorrelationMatrix& corr,
                                 double threshold = kDefaultCorrelationThreshold,
                                 const std::vector<std::size_t>& priority = {});

// k x k scatter-plot matrix over the kept attributes, names on the diagonal,
// mirrored point sets off it. Deterministic byte output.
std::string scatter_matrix_svg(const std::vector<std::vector<double>>& rows,
                               const std::vector<std::string>& names,
                               const AttributeCatalog& catalog);

// CSV: attribute,kept,reason,dependent_with
std::string catalog_csv(const AttributeCatalog& catalog);

}  // namespace stylo
