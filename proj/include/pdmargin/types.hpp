#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pdmargin {

// Points stored row-major: point i occupies coords[i*dim, (i+1)*dim).
struct PointCloud {
  std::string id;
  std::size_t dim = 0;
  std::vector<double> coords;
  std::optional<int> label;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  bool empty() const { return coords.empty(); }
  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * dim, dim};
  }
  std::span<double> point(std::size_t i) { return {coords.data() + i * dim, dim}; }
};

double euclidean(std::span<const double> a, std::span<const double> b);

struct ContactGraph {
  std::size_t n_nodes = 0;
  double threshold = 5.0;
  // Unordered pairs stored as (i, j) with i < j, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  // Sorted neighbor lists.
  std::vector<std::vector<std::size_t>> adjacency() const;
};

}  // namespace pdmargin
