#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdmargin/types.hpp"

namespace pdmargin {

enum class EmbeddingMethod { kRandomWalk, kSpectral };

struct EmbeddingConfig {
  std::size_t dim = 16;
  std::size_t walks_per_node = 10;
  std::size_t walk_length = 80;
  double return_param = 1.0;  // p
  double inout_param = 1.0;   // q
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 3;
  std::uint64_t seed = 0;
  EmbeddingMethod method = EmbeddingMethod::kRandomWalk;
  double learning_rate = 0.025;

  // Throws ConfigError when an invariant is violated.
  void validate() const;
};

struct WalkCorpus {
  std::size_t n_nodes = 0;
  // Ordered by start node, then by walk index for that node.
  std::vector<std::vector<std::uint32_t>> walks;
};

// Second-order biased random walks. Walks of node v are drawn from a
// generator seeded by mix(cfg.seed, v), so the corpus is independent of the
// order in which start nodes are processed.
WalkCorpus generate_walks(const ContactGraph& g, const EmbeddingConfig& cfg);

// Skip-gram with negative sampling over the walk corpus. Single-threaded and
// deterministic for a fixed seed.
PointCloud train_embedding(const WalkCorpus& corpus, const EmbeddingConfig& cfg);

// Laplacian eigenmap per connected component; components are shifted apart
// along the first axis.
PointCloud spectral_embedding(const ContactGraph& g, std::size_t dim);

// Dispatches on cfg.method.
PointCloud embed_graph(const ContactGraph& g, const EmbeddingConfig& cfg);

}  // namespace pdmargin
