#include "stylo/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>

#include "stylo/error.hpp"
#include "stylo/rng.hpp"

namespace stylo {

namespace {

void moments(const std::vector<std::vector<double>>& rows, std::size_t width,
             std::vector<double>& mean, std::vector<double>& sd) {
  const double n = static_cast<double>(rows.size());
  mean.assign(width, 0.0);
  sd.assign(width, 0.0);
  for (const auto& row : rows)
    for (std::size_t a = 0; a < width; ++a) mean[a] += row[a];
  for (auto& m : mean) m /= n;
  for (const auto& row : rows)
    for (std::size_t a = 0; a < width; ++a) {
      const double d = row[a] - mean[a];
      sd[a] += d * d;
    }
  for (auto& s : sd) s = std::sqrt(s / n);
}

}  // namespace

std::vector<Cluster> demographic_cluster(
    const std::vector<std::vector<double>>& rows, const ClusterParams& params) {
  const std::size_t n = rows.size();
  if (n == 0) throw DataError("cannot cluster an empty vector set");
  if (params.max_passes == 0) throw DataError("max passes must be >= 1");
  const std::size_t width = rows[0].size();
  for (const auto& row : rows)
    if (row.size() != width) throw DataError("feature row width mismatch");

  std::vector<double> mean, sd;
  moments(rows, width, mean, sd);
  std::vector<std::vector<double>> z(n, std::vector<double>(width, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < width; ++a)
      if (sd[a] > 0.0) z[i][a] = (rows[i][a] - mean[a]) / sd[a];

  const auto pair_score = [&](std::size_t x, std::size_t y) {
    std::int64_t s = 0;
    for (std::size_t a = 0; a < width; ++a)
      s += std::abs(z[x][a] - z[y][a]) <= params.alpha ? 1 : -1;
    return s;
  };

  std::vector<std::ptrdiff_t> assign(n, -1);
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(params.seed);

  for (std::size_t pass = 0; pass < params.max_passes; ++pass) {
    rng.shuffle(order);
    bool moved = false;
    for (const std::size_t x : order) {
      const std::ptrdiff_t old = assign[x];
      if (old >= 0) {
        auto& m = members[static_cast<std::size_t>(old)];
        m.erase(std::find(m.begin(), m.end(), x));
      }

      // Join requires a strictly positive score; ties keep the lowest id.
      std::ptrdiff_t best = -1;
      std::int64_t best_score = 0;
      for (std::size_t c = 0; c < members.size(); ++c) {
        if (members[c].empty()) continue;
        std::int64_t score = 0;
        for (const std::size_t y : members[c]) score += pair_score(x, y);
        if (score > best_score) {
          best = static_cast<std::ptrdiff_t>(c);
          best_score = score;
        }
      }

      if (best >= 0) {
        members[static_cast<std::size_t>(best)].push_back(x);
        assign[x] = best;
        if (best != old) moved = true;
      } else if (old >= 0 && members[static_cast<std::size_t>(old)].empty()) {
        // No positive score and its old cluster is now empty: stay solo.
        members[static_cast<std::size_t>(old)].push_back(x);
        assign[x] = old;
      } else {
        members.push_back({x});
        assign[x] = static_cast<std::ptrdiff_t>(members.size()) - 1;
        moved = true;
      }
    }
    if (!moved) break;
  }

  std::vector<std::vector<std::size_t>> live;
  for (auto& m : members) {
    if (m.empty()) continue;
    std::sort(m.begin(), m.end());
    live.push_back(std::move(m));
  }
  std::sort(live.begin(), live.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  std::vector<Cluster> clusters;
  for (std::size_t c = 0; c < live.size(); ++c) {
    Cluster cluster;
    cluster.id = c;
    cluster.members = std::move(live[c]);
    std::vector<std::vector<double>> member_rows;
    for (const std::size_t i : cluster.members) member_rows.push_back(rows[i]);
    moments(member_rows, width, cluster.mean, cluster.spread);
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

ClusterProfile cluster_profile(const std::vector<std::size_t>& members,
                               const std::vector<std::vector<double>>& rows,
                               const std::vector<std::string>& names) {
  if (members.empty()) throw DataError("cluster profile needs a non-empty cluster");
  if (rows.empty()) throw DataError("cluster profile needs a population");
  const std::size_t width = names.size();
  for (const auto& row : rows)
    if (row.size() != width) throw DataError("feature row width mismatch");

  std::vector<double> pop_mean, pop_sd;
  moments(rows, width, pop_mean, pop_sd);

  ClusterProfile profile;
  for (std::size_t a = 0; a < width; ++a) {
    ProfileEntry entry;
    entry.attribute = names[a];
    entry.population_mean = pop_mean[a];
    entry.population_sd = pop_sd[a];
    double cmean = 0.0;
    for (const std::size_t i : members) cmean += rows[i][a];
    entry.cluster_mean = cmean / static_cast<double>(members.size());
    if (pop_sd[a] > 0.0) {
      entry.deviation = (entry.cluster_mean - pop_mean[a]) / pop_sd[a];
    } else {
      entry.flagged = true;
    }
    profile.entries.push_back(std::move(entry));
  }

  std::stable_sort(profile.entries.begin(), profile.entries.end(),
                   [](const ProfileEntry& a, const ProfileEntry& b) {
                     const double da = std::abs(a.deviation);
                     const double db = std::abs(b.deviation);
                     if (da != db) return da > db;
                     return a.attribute < b.attribute;
                   });
  return profile;
}

namespace {

nlohmann::json dominant_label(const std::map<std::string, std::size_t>& counts,
                              std::size_t total) {
  std::string best;
  std::size_t best_count = 0;
  for (const auto& [label, count] : counts) {
    if (count > best_count) {
      best = label;
      best_count = count;
    }
  }
  return {{"label", best},
          {"share", static_cast<double>(best_count) / static_cast<double>(total)}};
}

}  // namespace

nlohmann::json cluster_report_json(const std::vector<Cluster>& clusters,
                                   const std::vector<std::vector<double>>& rows,
                                   const std::vector<std::string>& names,
                                   const std::vector<DocumentLabel>& labels,
                                   const ClusterParams& params) {
  if (labels.size() != rows.size())
    throw DataError("label and row sequences differ in length");

  nlohmann::json out_clusters = nlohmann::json::array();
  for (const auto& cluster : clusters) {
    std::map<std::string, std::size_t> authors, genres;
    nlohmann::json ids = nlohmann::json::array();
    for (const std::size_t i : cluster.members) {
      ids.push_back(labels[i].id);
      ++authors[labels[i].author];
      ++genres[labels[i].genre];
    }

    nlohmann::json profile = nlohmann::json::array();
    for (const auto& entry : cluster_profile(cluster.members, rows, names).entries) {
      profile.push_back({{"attribute", entry.attribute},
                         {"cluster_mean", entry.cluster_mean},
                         {"population_mean", entry.population_mean},
                         {"population_sd", entry.population_sd},
                         {"deviation", entry.deviation},
                         {"zero_variance", entry.flagged}});
    }

    out_clusters.push_back(
        {{"id", cluster.id},
         {"size", cluster.members.size()},
         {"members", ids},
         {"dominant_author", dominant_label(authors, cluster.members.size())},
         {"dominant_genre", dominant_label(genres, cluster.members.size())},
         {"profile", profile}});
  }

  return {{"format_version", 1},
          {"parameters",
           {{"alpha", params.alpha},
            {"max_passes", params.max_passes},
            {"seed", params.seed}}},
          {"n_documents", rows.size()},
          {"n_clusters", clusters.size()},
          {"clusters", out_clusters}};
}

}  // namespace stylo
