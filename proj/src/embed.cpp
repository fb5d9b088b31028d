#include "pdmargin/embed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "pdmargin/error.hpp"
#include "pdmargin/parallel.hpp"
#include "pdmargin/rng.hpp"

namespace pdmargin {

void EmbeddingConfig::validate() const {
  if (dim < 2) throw ConfigError("embedding dim must be >= 2");
  if (walks_per_node < 1 || walk_length < 1 || window < 1 || negatives < 1 || epochs < 1) {
    throw ConfigError("embedding counts must be >= 1");
  }
  if (!(return_param > 0.0) || !(inout_param > 0.0)) {
    throw ConfigError("return and in-out parameters must be positive");
  }
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
}

namespace {

bool adjacent(const std::vector<std::size_t>& sorted_nbrs, std::size_t v) {
  return std::binary_search(sorted_nbrs.begin(), sorted_nbrs.end(), v);
}

std::uint32_t pick_weighted(const std::vector<double>& cumulative, Rng& rng) {
  const double r = uniform01(rng) * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
  return static_cast<std::uint32_t>(
      std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1));
}

}  // namespace

WalkCorpus generate_walks(const ContactGraph& g, const EmbeddingConfig& cfg) {
  cfg.validate();
  if (g.n_nodes == 0) throw InputError("cannot walk an empty graph");
  const auto adj = g.adjacency();
  WalkCorpus corpus;
  corpus.n_nodes = g.n_nodes;
  corpus.walks.resize(g.n_nodes * cfg.walks_per_node);

  const double inv_p = 1.0 / cfg.return_param;
  const double inv_q = 1.0 / cfg.inout_param;

  parallel_for(g.n_nodes, 0, [&](std::size_t start) {
    Rng rng(derive_seed(cfg.seed, {start}));
    std::vector<double> cumulative;
    for (std::size_t r = 0; r < cfg.walks_per_node; ++r) {
      auto& walk = corpus.walks[start * cfg.walks_per_node + r];
      walk.reserve(cfg.walk_length);
      walk.push_back(static_cast<std::uint32_t>(start));
      while (walk.size() < cfg.walk_length) {
        const std::size_t cur = walk.back();
        const auto& nbrs = adj[cur];
        if (nbrs.empty()) break;
        if (walk.size() == 1) {
          walk.push_back(static_cast<std::uint32_t>(nbrs[uniform_index(rng, nbrs.size())]));
          continue;
        }
        const std::size_t prev = walk[walk.size() - 2];
        cumulative.resize(nbrs.size());
        double acc = 0.0;
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
          const std::size_t x = nbrs[k];
          if (x == prev) {
            acc += inv_p;
          } else if (adjacent(adj[prev], x)) {
            acc += 1.0;
          } else {
            acc += inv_q;
          }
          cumulative[k] = acc;
        }
        walk.push_back(static_cast<std::uint32_t>(nbrs[pick_weighted(cumulative, rng)]));
      }
    }
  });
  return corpus;
}

PointCloud train_embedding(const WalkCorpus& corpus, const EmbeddingConfig& cfg) {
  cfg.validate();
  if (corpus.walks.empty() || corpus.n_nodes == 0) throw InputError("empty walk corpus");
  const std::size_t n = corpus.n_nodes;
  const std::size_t dim = cfg.dim;
  Rng rng(derive_seed(cfg.seed, {0x5eedULL}));

  std::vector<double> input(n * dim), output(n * dim, 0.0);
  for (auto& v : input) v = (uniform01(rng) - 0.5) / static_cast<double>(dim);

  // Negative-sampling distribution proportional to frequency^0.75.
  std::vector<double> freq(n, 0.0);
  std::size_t total_tokens = 0;
  for (const auto& w : corpus.walks) {
    for (auto v : w) freq[v] += 1.0;
    total_tokens += w.size();
  }
  std::vector<double> noise_cdf(n);
  double acc = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    acc += std::pow(freq[v], 0.75);
    noise_cdf[v] = acc;
  }

  const double lr0 = cfg.learning_rate;
  const double total_steps = static_cast<double>(total_tokens * cfg.epochs) + 1.0;
  std::size_t step = 0;
  std::vector<double> grad(dim);

  auto sigmoid = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (const auto& walk : corpus.walks) {
      for (std::size_t i = 0; i < walk.size(); ++i, ++step) {
        const double lr = std::max(lr0 * 1e-4, lr0 * (1.0 - static_cast<double>(step) / total_steps));
        const std::size_t center = walk[i];
        // word2vec-style shrunk window
        const std::size_t reach = cfg.window - uniform_index(rng, cfg.window);
        const std::size_t lo = i >= reach ? i - reach : 0;
        const std::size_t hi = std::min(walk.size() - 1, i + reach);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          double* in = &input[static_cast<std::size_t>(walk[j]) * dim];
          std::fill(grad.begin(), grad.end(), 0.0);
          for (std::size_t s = 0; s <= cfg.negatives; ++s) {
            std::size_t target;
            double label;
            if (s == 0) {
              target = center;
              label = 1.0;
            } else {
              target = pick_weighted(noise_cdf, rng);
              if (target == center) continue;
              label = 0.0;
            }
            double* out = &output[target * dim];
            double dot = 0.0;
            for (std::size_t k = 0; k < dim; ++k) dot += in[k] * out[k];
            const double g = (label - sigmoid(dot)) * lr;
            for (std::size_t k = 0; k < dim; ++k) {
              grad[k] += g * out[k];
              out[k] += g * in[k];
            }
          }
          for (std::size_t k = 0; k < dim; ++k) in[k] += grad[k];
        }
      }
    }
  }

  PointCloud pc;
  pc.dim = dim;
  pc.coords = std::move(input);
  return pc;
}

PointCloud spectral_embedding(const ContactGraph& g, std::size_t dim) {
  if (dim < 1) throw ConfigError("embedding dim must be positive");
  const std::size_t n = g.n_nodes;
  const auto adj = g.adjacency();

  // Connected components, each listed in ascending node order.
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int c = static_cast<int>(components.size());
    std::vector<std::size_t> members{s};
    comp[s] = c;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (auto v : adj[members[head]]) {
        if (comp[v] < 0) {
          comp[v] = c;
          members.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }

  PointCloud pc;
  pc.dim = dim;
  pc.coords.assign(n * dim, 0.0);
  double max_radius = 0.0;

  for (const auto& members : components) {
    const std::size_t s = members.size();
    if (s == 1) continue;
    std::vector<std::size_t> local(n);
    for (std::size_t k = 0; k < s; ++k) local[members[k]] = k;
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(s, s);
    for (std::size_t k = 0; k < s; ++k) {
      for (auto v : adj[members[k]]) {
        lap(k, local[v]) -= 1.0;
        lap(k, k) += 1.0;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
    const auto& vecs = es.eigenvectors();
    // Column 0 is the constant vector of the component.
    const std::size_t take = std::min(dim, s - 1);
    for (std::size_t c = 0; c < take; ++c) {
      Eigen::VectorXd v = vecs.col(static_cast<Eigen::Index>(c + 1));
      for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) > 1e-12) {
          if (v(k) < 0) v = -v;
          break;
        }
      }
      for (std::size_t k = 0; k < s; ++k) pc.coords[members[k] * dim + c] = v(static_cast<Eigen::Index>(k));
    }
    std::vector<double> centroid(dim, 0.0);
    for (auto m : members) {
      for (std::size_t c = 0; c < dim; ++c) centroid[c] += pc.coords[m * dim + c] / static_cast<double>(s);
    }
    for (auto m : members) max_radius = std::max(max_radius, euclidean(pc.point(m), centroid));
  }

  const double step = max_radius > 0.0 ? 2.0 * max_radius : 1.0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (auto m : components[c]) pc.coords[m * dim] += static_cast<double>(c) * step;
  }
  return pc;
}

PointCloud embed_graph(const ContactGraph& g, const EmbeddingConfig& cfg) {
  if (cfg.method == EmbeddingMethod::kSpectral) {
    cfg.validate();
    return spectral_embedding(g, cfg.dim);
  }
  return train_embedding(generate_walks(g, cfg), cfg);
}

}  // namespace pdmargin
