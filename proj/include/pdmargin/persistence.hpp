#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "pdmargin/types.hpp"

namespace pdmargin {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kMaxHomologyDim = 2;
inline constexpr std::size_t kDefaultSimplexBudget = 5'000'000;

struct Simplex {
  std::array<std::uint32_t, 4> vertices{};  // ascending; first dim+1 entries used
  std::uint8_t dim = 0;
  double value = 0.0;
};

// Lexicographic on (value, dim, vertices).
bool filtration_less(const Simplex& a, const Simplex& b);

struct Filtration {
  std::vector<Simplex> simplices;
  std::size_t max_dim = 0;  // simplex dimension bound
  double max_radius = kInfinity;
  std::size_t n_vertices = 0;
};

// Every simplex of dimension <= max_dim with diameter <= max_radius, valued
// by its diameter. Throws ResourceError once more than `budget` simplices
// would be generated.
Filtration rips_filtration(const PointCloud& pc, std::size_t max_dim,
                           double max_radius = kInfinity,
                           std::size_t budget = kDefaultSimplexBudget);

// Faces precede cofaces and the order is strictly increasing.
bool is_monotone(const Filtration& f);

struct Bar {
  double birth = 0.0;
  double death = kInfinity;

  double persistence() const { return death - birth; }
  bool infinite() const { return death == kInfinity; }
  friend bool operator==(const Bar&, const Bar&) = default;
  friend auto operator<=>(const Bar&, const Bar&) = default;
};

// Homology dimensions 0..2 (components, loops, voids).
struct PersistenceDiagram {
  std::string id;
  std::array<std::vector<Bar>, kMaxHomologyDim + 1> bars;

  std::size_t total_bars() const;
  // Sorts every dimension so equal multisets compare equal.
  void canonicalize();
  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

enum class Reduction { kTwist, kPlain };

// Z/2 boundary-matrix reduction. Zero-length pairs are dropped in dimensions
// >= 1 and kept in dimension 0. Output is canonicalized.
PersistenceDiagram compute_persistence(const Filtration& f,
                                       Reduction mode = Reduction::kTwist);

// Removes finite bars with death - birth < cutoff in the listed dimensions.
PersistenceDiagram filter_noise(PersistenceDiagram pd, double cutoff = 0.01,
                                const std::set<std::size_t>& dims = {1, 2});

struct PersistenceOptions {
  std::size_t max_homology_dim = 2;
  double max_radius = kInfinity;
  std::size_t budget = kDefaultSimplexBudget;
  double cutoff = 0.01;
  std::set<std::size_t> filter_dims = {1, 2};
};

// Rips -> reduction -> noise filter; the diagram id is the cloud id.
PersistenceDiagram diagram_of(const PointCloud& pc, const PersistenceOptions& opts = {});

}  // namespace pdmargin
