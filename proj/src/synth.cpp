#include "pdmargin/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "pdmargin/rng.hpp"

namespace pdmargin {

PointCloud noisy_circle(std::size_t n, double sd, std::uint64_t seed) {
  Rng rng(seed);
  PointCloud pc;
  pc.dim = 2;
  pc.coords.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * uniform01(rng);
    pc.coords.push_back(std::cos(t) + sd * gaussian(rng));
    pc.coords.push_back(std::sin(t) + sd * gaussian(rng));
  }
  return pc;
}

std::vector<PointCloud> synth_circles_vs_blobs(const SynthConfig& cfg) {
  std::vector<PointCloud> out;
  out.reserve(cfg.n_circles + cfg.n_blobs);
  char name[32];
  for (std::size_t i = 0; i < cfg.n_circles; ++i) {
    auto pc = noisy_circle(cfg.points_per_cloud, cfg.circle_noise, derive_seed(cfg.seed, {i}));
    std::snprintf(name, sizeof name, "circle_%03zu", i);
    pc.id = name;
    pc.label = 1;
    out.push_back(std::move(pc));
  }
  const double half = 0.5 * cfg.blob_separation;
  for (std::size_t i = 0; i < cfg.n_blobs; ++i) {
    Rng rng(derive_seed(cfg.seed, {cfg.n_circles + i}));
    PointCloud pc;
    pc.dim = 2;
    for (std::size_t k = 0; k < cfg.points_per_cloud; ++k) {
      const double cx = k % 2 == 0 ? -half : half;
      pc.coords.push_back(cx + cfg.blob_sd * gaussian(rng));
      pc.coords.push_back(cfg.blob_sd * gaussian(rng));
    }
    std::snprintf(name, sizeof name, "blobs_%03zu", i);
    pc.id = name;
    pc.label = -1;
    out.push_back(std::move(pc));
  }
  return out;
}

}  // namespace pdmargin
