#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdmargin/persistence.hpp"

namespace pdmargin {

enum class DistanceMode { kHausdorff, kMaxPairwise };

std::string_view to_string(DistanceMode mode);
DistanceMode parse_distance_mode(std::string_view s);

struct WeightVector {
  std::array<double, 3> w{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

  // Non-negative and not all zero; throws ConfigError otherwise.
  void validate() const;
};

WeightVector parse_weights(std::string_view csv);

// Replaces infinite deaths by 1.1 times the largest finite bar coordinate
// seen across `diagrams` (1.0 when there is none).
double truncation_constant(std::span<const PersistenceDiagram> diagrams);
PersistenceDiagram truncate_infinite(PersistenceDiagram pd, double value);
std::vector<PersistenceDiagram> truncate_all(std::span<const PersistenceDiagram> diagrams,
                                             double value);

// Bars are points (birth, death) in the plane. With exactly one side empty
// the result is the largest distance-to-diagonal of the other side.
double component_distance(std::span<const Bar> a, std::span<const Bar> b, DistanceMode mode);

// Weighted sum of per-dimension component distances.
double diagram_distance(const PersistenceDiagram& x, const PersistenceDiagram& y,
                        const WeightVector& w, DistanceMode mode);

struct DistanceMatrix {
  std::vector<std::string> ids;
  std::vector<double> values;  // row-major n x n

  std::size_t size() const { return ids.size(); }
  double operator()(std::size_t i, std::size_t j) const { return values[i * ids.size() + j]; }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * ids.size(), ids.size()};
  }
};

// Upper triangle computed (in parallel over rows), then mirrored.
DistanceMatrix distance_matrix(std::span<const PersistenceDiagram> diagrams,
                               const WeightVector& w, DistanceMode mode);

std::string distance_matrix_csv(const DistanceMatrix& m);

}  // namespace pdmargin
