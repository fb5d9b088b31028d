#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdmargin/metrics.hpp"

namespace pdmargin {

enum class Method { kBs, kStat1, kStat2, kStat3 };

std::string_view to_string(Method m);
Method parse_method(std::string_view s);

struct FeatureVector {
  std::vector<double> values;
  Method method = Method::kBs;
  std::vector<std::string> landmark_ids;  // bs only
};

inline constexpr std::size_t kStat1Length = 3;
inline constexpr std::size_t kStat2Length = 25;
inline constexpr std::size_t kStat3Length = 126;

// Distances from x to each landmark in order. Throws ConfigError when the
// landmark list is empty.
FeatureVector bs_vectorize(const PersistenceDiagram& x,
                           std::span<const PersistenceDiagram> landmarks,
                           const WeightVector& w, DistanceMode mode);

// (0.01 * #dim0, #dim1, #dim2)
FeatureVector stats_vector_1(const PersistenceDiagram& pd);

// (max, min, variance, mean, median) of dim0 deaths, dim1 births, dim1
// deaths, dim2 births, dim2 deaths.
FeatureVector stats_vector_2(const PersistenceDiagram& pd);

// Per dimension: for births, deaths, midpoints and lifespans the mean, sd,
// median, IQR, range, 10/25/75/90th percentiles and maximum (120 values),
// then per-dimension bar count and lifespan sum (6 values).
FeatureVector stats_vector_3(const PersistenceDiagram& pd);

FeatureVector statistical_vector(Method m, const PersistenceDiagram& pd);

// Summary statistics shared by the statistical vectorizers.
namespace stats {
double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // population
// Linear interpolation between closest ranks; q in [0, 1].
double percentile(std::span<const double> xs, double q);
double median(std::span<const double> xs);
}  // namespace stats

// Column standardization fitted on training rows.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(std::span<const std::vector<double>> rows);
  std::vector<double> apply(std::span<const double> row) const;
};

}  // namespace pdmargin
