#pragma once

#include <cstdint>
#include <vector>

#include "pdmargin/types.hpp"

namespace pdmargin {

struct SynthConfig {
  std::size_t n_circles = 50;
  std::size_t n_blobs = 50;
  std::size_t points_per_cloud = 20;
  double circle_noise = 0.05;  // per-coordinate Gaussian sd
  double blob_sd = 0.25;
  double blob_separation = 2.0;  // distance between the two blob centers
  std::uint64_t seed = 20240601;
};

// Noisy unit circles (label +1) followed by two-blob clouds (label -1).
// Cloud i is drawn from a generator seeded with mix(cfg.seed, i).
std::vector<PointCloud> synth_circles_vs_blobs(const SynthConfig& cfg = {});

// n points at uniform angles on the unit circle plus N(0, sd^2) noise per coordinate.
PointCloud noisy_circle(std::size_t n, double sd, std::uint64_t seed);

}  // namespace pdmargin
