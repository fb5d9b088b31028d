#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pdmargin/persistence.hpp"
#include "pdmargin/rng.hpp"
#include "pdmargin/types.hpp"

namespace props {

struct Tally {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> messages;  // first few failures

  void check(bool ok, const std::string& what);
  bool ok() const { return failures == 0 && cases > 0; }
};

pdmargin::PointCloud random_cloud(pdmargin::Rng& rng, std::size_t n, std::size_t dim,
                                  double scale = 1.0);
// n evenly spaced points on the unit circle plus N(0, sd^2) noise per coordinate.
pdmargin::PointCloud ring_cloud(std::size_t n, double sd, std::uint64_t seed);
pdmargin::PersistenceDiagram random_diagram(pdmargin::Rng& rng, std::size_t max_bars = 6,
                                            double scale = 1.0);

// ingest
Tally contact_graph_suite(std::uint64_t seed, std::size_t cases);
Tally xyz_roundtrip_suite(std::uint64_t seed, std::size_t cases);
// embed
Tally walk_suite(std::uint64_t seed, std::size_t cases);
Tally embedding_suite(std::uint64_t seed, std::size_t cases);
// persistence
Tally oracle_suite(std::uint64_t seed, std::size_t cases);
Tally dim0_suite(std::uint64_t seed, std::size_t cases);
Tally permutation_suite(std::uint64_t seed, std::size_t cases);
Tally filtration_suite(std::uint64_t seed, std::size_t cases);
// metrics
Tally hausdorff_metric_suite(std::uint64_t seed, std::size_t cases);
Tally max_pairwise_suite(std::uint64_t seed, std::size_t cases);
Tally distance_scaling_suite(std::uint64_t seed, std::size_t cases);
// vectorize
Tally bs_row_suite(std::uint64_t seed, std::size_t cases);
Tally stats_permutation_suite(std::uint64_t seed, std::size_t cases);
Tally stats_scaling_suite(std::uint64_t seed, std::size_t cases);
// classify
Tally hinge_suite(std::uint64_t seed, std::size_t cases);
Tally label_flip_suite(std::uint64_t seed, std::size_t cases);
Tally landmark_permutation_suite(std::uint64_t seed, std::size_t cases);
Tally specialization_suite(std::uint64_t seed, std::size_t cases);
// Objective against the reference SVM (1e-5 relative) and KKT residuals <= 1e-8.
Tally svm_reference_suite(std::uint64_t seed, std::size_t cases);
// harness
Tally split_suite(std::uint64_t seed, std::size_t cases);
Tally accounting_suite(std::uint64_t seed, std::size_t cases);
Tally leakage_suite(std::uint64_t seed, std::size_t cases);
Tally reproducibility_suite(std::uint64_t seed, std::size_t cases);

struct Suite {
  const char* module;
  std::function<Tally(std::uint64_t, std::size_t)> run;
  std::size_t cases;
};

// Every suite with its default case count.
std::vector<Suite> all_suites();

}  // namespace props
