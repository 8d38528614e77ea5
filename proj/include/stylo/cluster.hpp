#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace stylo {

struct ClusterParams {
  double alpha = 0.5;          // vote threshold in z-score units
  std::size_t max_passes = 10;
  std::uint64_t seed = 42;
};

struct Cluster {
  std::size_t id = 0;
  std::vector<std::size_t> members;  // row indices, ascending
  std::vector<double> mean;          // raw space, per attribute
  std::vector<double> spread;        // raw space population sd, per attribute
};

// Condorcet voting: each attribute of each member votes +1 if within alpha
// (after z-scoring) else -1; a record joins the best positive-scoring cluster
// or founds its own. Records are visited in seeded shuffled order per pass
// until no membership changes or max_passes.
std::vector<Cluster> demographic_cluster(
    const std::vector<std::vector<double>>& rows,
    const ClusterParams& params = {});

struct ProfileEntry {
  std::string attribute;
  double cluster_mean = 0.0;
  double population_mean = 0.0;
  double population_sd = 0.0;
  double deviation = 0.0;  // (cluster mean - population mean) / population sd
  bool flagged = false;    // zero population variance, deviation forced to 0
};

// Sorted by |deviation| descending, attribute name ascending on ties.
struct ClusterProfile {
  std::vector<ProfileEntry> entries;
};

ClusterProfile cluster_profile(const std::vector<std::size_t>& members,
                               const std::vector<std::vector<double>>& rows,
                               const std::vector<std::string>& names);

struct DocumentLabel {
  std::string id;
  std::string author;
  std::string genre;
};

nlohmann::json cluster_report_json(const std::vector<Cluster>& clusters,
                                   const std::vector<std::vector<double>>& rows,
                                   const std::vector<std::string>& names,
                                   const std::vector<DocumentLabel>& labels,
                                   const ClusterParams& params);

}  // namespace stylo
