#include "stylo/cluster.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "stylo/error.hpp"
#include "stylo/rng.hpp"

using namespace stylo;

namespace {

// Two well-separated blobs around the given centers.
std::vector<std::vector<double>> two_blobs(Rng& rng, std::size_t per_blob,
                                           double center_a, double center_b,
                                           std::size_t dims = 3) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < 2 * per_blob; ++i) {
    const double center = i < per_blob ? center_a : center_b;
    std::vector<double> row;
    for (std::size_t d = 0; d < dims; ++d)
      row.push_back(center + rng.normal(0.0, 0.05));
    rows.push_back(row);
  }
  return rows;
}

// Every row index appears in exactly one cluster.
void check_partition(const std::vector<Cluster>& clusters, std::size_t n) {
  std::set<std::size_t> seen;
  for (const auto& c : clusters) {
    CHECK_FALSE(c.members.empty());
    CHECK(std::is_sorted(c.members.begin(), c.members.end()));
    for (std::size_t m : c.members) {
      CHECK(m < n);
      CHECK(seen.insert(m).second);
    }
  }
  CHECK(seen.size() == n);
}

bool same_clustering(const std::vector<Cluster>& a,
                     const std::vector<Cluster>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].members != b[i].members) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("identical documents form a single cluster") {
  std::vector<std::vector<double>> rows(8, {3.0, 1.0, 4.0});
  auto clusters = demographic_cluster(rows);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].id == 0);
  CHECK(clusters[0].members.size() == 8);
  check_partition(clusters, 8);
  CHECK(clusters[0].mean == std::vector<double>{3.0, 1.0, 4.0});
  CHECK(clusters[0].spread == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("a single document is its own cluster") {
  auto clusters = demographic_cluster({{1.0, 2.0}});
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].members == std::vector<std::size_t>{0});
  CHECK(clusters[0].mean == std::vector<double>{1.0, 2.0});
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(demographic_cluster({}), DataError);
}

TEST_CASE("well-separated blobs split cleanly") {
  Rng rng(11);
  auto rows = two_blobs(rng, 6, 0.0, 10.0);
  auto clusters = demographic_cluster(rows);
  check_partition(clusters, rows.size());
  REQUIRE(clusters.size() == 2);

  // Clusters are ordered by smallest member, so blob A comes first.
  CHECK(clusters[0].members == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
  CHECK(clusters[1].members == std::vector<std::size_t>{6, 7, 8, 9, 10, 11});

  // Means land near the blob centers (raw space).
  for (double m : clusters[0].mean) CHECK(std::abs(m - 0.0) < 0.5);
  for (double m : clusters[1].mean) CHECK(std::abs(m - 10.0) < 0.5);
  for (double s : clusters[0].spread) CHECK(s < 0.5);
}

TEST_CASE("cluster ids are consecutive and ordered by smallest member") {
  Rng rng(23);
  auto rows = two_blobs(rng, 5, -4.0, 4.0, 2);
  auto clusters = demographic_cluster(rows);
  std::size_t prev_min = 0;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    CHECK(clusters[i].id == i);
    if (i > 0) CHECK(clusters[i].members.front() > prev_min);
    prev_min = clusters[i].members.front();
  }
}

TEST_CASE("the same seed reproduces the same clustering") {
  Rng rng(99);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 30; ++i)
    rows.push_back({rng.uniform(0.0, 4.0), rng.uniform(0.0, 4.0)});

  ClusterParams params;
  params.seed = 1234;
  auto a = demographic_cluster(rows, params);
  auto b = demographic_cluster(rows, params);
  CHECK(same_clustering(a, b));

  check_partition(a, rows.size());
}

TEST_CASE("alpha controls how permissive joining is") {
  Rng rng(7);
  auto rows = two_blobs(rng, 6, 0.0, 3.0);

  // A huge alpha makes every attribute vote +1, so one cluster absorbs all.
  ClusterParams loose;
  loose.alpha = 50.0;
  auto merged = demographic_cluster(rows, loose);
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].members.size() == rows.size());
}

TEST_CASE("max_passes zero is rejected") {
  // The first pass founds the clusters, so zero passes cannot mean anything.
  ClusterParams params;
  params.max_passes = 0;
  CHECK_THROWS_AS(demographic_cluster({{1.0}, {2.0}}, params), DataError);
}

TEST_CASE("a tiny alpha leaves distinct documents alone") {
  // alpha = 0 still lets identical z-vectors vote +1 (|0| <= 0), but any
  // difference votes -1 on every attribute, so nothing can merge.
  std::vector<std::vector<double>> rows = {{1.0, 1.0}, {2.0, 5.0}, {3.0, 2.0}};
  ClusterParams params;
  params.alpha = 0.0;
  auto clusters = demographic_cluster(rows, params);
  CHECK(clusters.size() == 3);
  check_partition(clusters, rows.size());
}

TEST_CASE("cluster means and spreads are raw-space moments") {
  // Force one cluster and verify its moments by hand.
  std::vector<std::vector<double>> rows = {{1.0, 10.0}, {3.0, 10.0}};
  ClusterParams params;
  params.alpha = 100.0;  // guarantees a merge
  auto clusters = demographic_cluster(rows, params);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].mean[0] == 2.0);
  CHECK(clusters[0].mean[1] == 10.0);
  CHECK(clusters[0].spread[0] == doctest::Approx(1.0).epsilon(1e-12));  // population sd
  CHECK(clusters[0].spread[1] == 0.0);
}

TEST_CASE("cluster_profile ranks attributes by absolute deviation") {
  // Population of 4 documents; cluster = rows {0, 1}.
  // attr "up": cluster mean 3, population mean 2, sd 1 -> deviation +1.
  // attr "way_up": cluster mean 6, population mean 3, sd 3 -> wait, keep it
  // simple and explicit below.
  std::vector<std::vector<double>> rows = {
      {3.0, 10.0, 5.0},
      {3.0, 10.0, 5.0},
      {1.0, 2.0, 5.0},
      {1.0, 2.0, 5.0},
  };
  std::vector<std::string> names = {"up", "strong", "flat"};
  ClusterProfile profile = cluster_profile({0, 1}, rows, names);
  REQUIRE(profile.entries.size() == 3);

  // "up": pop mean 2, sd 1, cluster mean 3 -> +1.
  // "strong": pop mean 6, sd 4, cluster mean 10 -> +1. Tie with "up"; name
  // order decides. "flat": zero variance, flagged, deviation 0, last.
  CHECK(profile.entries[0].attribute == "strong");
  CHECK(profile.entries[0].deviation == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(profile.entries[1].attribute == "up");
  CHECK(profile.entries[1].deviation == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(profile.entries[2].attribute == "flat");
  CHECK(profile.entries[2].deviation == 0.0);
  CHECK(profile.entries[2].flagged);
  CHECK_FALSE(profile.entries[0].flagged);

  CHECK(profile.entries[0].cluster_mean == 10.0);
  CHECK(profile.entries[0].population_mean == 6.0);
  CHECK(profile.entries[0].population_sd == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("negative deviations rank by magnitude") {
  // big_drop: pop mean 5, sd 5, cluster mean 0 -> -1.
  // tiny: pop mean 5.1, sd sqrt(0.005), cluster mean 5.05 -> about -0.707.
  std::vector<std::vector<double>> rows = {
      {0.0, 5.0},
      {0.0, 5.1},
      {10.0, 5.2},
      {10.0, 5.1},
  };
  ClusterProfile profile = cluster_profile({0, 1}, rows, {"big_drop", "tiny"});
  CHECK(profile.entries[0].attribute == "big_drop");
  CHECK(profile.entries[0].deviation == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(profile.entries[1].attribute == "tiny");
  CHECK(profile.entries[1].deviation < 0.0);
  CHECK(std::abs(profile.entries[1].deviation) <
        std::abs(profile.entries[0].deviation));
}

TEST_CASE("cluster_profile validates input") {
  std::vector<std::vector<double>> rows = {{1.0}, {2.0}};
  CHECK_THROWS_AS(cluster_profile({}, rows, {"a"}), DataError);
  CHECK_THROWS_AS(cluster_profile({0}, {}, {"a"}), DataError);
}

TEST_CASE("clustering is stable under relabeling of documents") {
  // Reversing the row order must produce the same partition of the same
  // value vectors (ids differ, the grouping does not).
  Rng rng(59);
  auto rows = two_blobs(rng, 5, 0.0, 8.0, 2);
  auto reversed = rows;
  std::reverse(reversed.begin(), reversed.end());

  auto a = demographic_cluster(rows);
  auto b = demographic_cluster(reversed);

  const auto key = [](const std::vector<Cluster>& clusters,
                      const std::vector<std::vector<double>>& data) {
    std::set<std::multiset<double>> groups;
    for (const auto& c : clusters) {
      std::multiset<double> group;
      for (std::size_t m : c.members) group.insert(data[m][0]);
      groups.insert(group);
    }
    return groups;
  };
  CHECK(key(a, rows) == key(b, reversed));
}

TEST_CASE("cluster_report_json summarizes members, labels and profile") {
  Rng rng(31);
  auto rows = two_blobs(rng, 3, 0.0, 9.0, 2);
  std::vector<std::string> names = {"n0", "n1"};
  std::vector<DocumentLabel> labels;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    labels.push_back({"d" + std::to_string(i), i < 3 ? "anna" : "bert",
                      i < 3 ? "ga" : "gb"});
  }
  ClusterParams params;
  auto clusters = demographic_cluster(rows, params);
  REQUIRE(clusters.size() == 2);

  nlohmann::json j = cluster_report_json(clusters, rows, names, labels, params);
  CHECK(j.at("format_version") == 1);
  CHECK(j.at("n_documents") == 6);
  CHECK(j.at("n_clusters") == 2);
  CHECK(j.at("parameters").at("alpha") == 0.5);
  CHECK(j.at("parameters").at("max_passes") == 10);
  CHECK(j.at("parameters").at("seed") == 42);

  const auto& c0 = j.at("clusters").at(0);
  CHECK(c0.at("id") == 0);
  CHECK(c0.at("size") == 3);
  CHECK(c0.at("members") == nlohmann::json({"d0", "d1", "d2"}));
  CHECK(c0.at("dominant_author").at("label") == "anna");
  CHECK(c0.at("dominant_author").at("share") == 1.0);
  CHECK(c0.at("dominant_genre").at("label") == "ga");
  REQUIRE(c0.at("profile").is_array());
  CHECK(c0.at("profile").size() == 2);
  CHECK(c0.at("profile").at(0).contains("attribute"));
  CHECK(c0.at("profile").at(0).contains("deviation"));
  CHECK(c0.at("profile").at(0).contains("zero_variance"));
}

TEST_CASE("dominant labels break ties lexicographically") {
  std::vector<std::vector<double>> rows(4, {1.0, 1.0});
  std::vector<std::string> names = {"a", "b"};
  std::vector<DocumentLabel> labels = {{"d0", "zoe", "gb"},
                                       {"d1", "anna", "ga"},
                                       {"d2", "zoe", "gb"},
                                       {"d3", "anna", "ga"}};
  ClusterParams params;
  auto clusters = demographic_cluster(rows, params);
  REQUIRE(clusters.size() == 1);
  nlohmann::json j = cluster_report_json(clusters, rows, names, labels, params);
  // 2 vs 2: the lexicographically smaller label wins.
  CHECK(j.at("clusters").at(0).at("dominant_author").at("label") == "anna");
  CHECK(j.at("clusters").at(0).at("dominant_author").at("share") == 0.5);
  CHECK(j.at("clusters").at(0).at("dominant_genre").at("label") == "ga");
}
