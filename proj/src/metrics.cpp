#include "pdmargin/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pdmargin/error.hpp"
#include "pdmargin/parallel.hpp"

namespace pdmargin {

std::string_view to_string(DistanceMode mode) {
  return mode == DistanceMode::kHausdorff ? "hausdorff" : "max-pairwise";
}

DistanceMode parse_distance_mode(std::string_view s) {
  if (s == "hausdorff") return DistanceMode::kHausdorff;
  if (s == "max-pairwise") return DistanceMode::kMaxPairwise;
  throw ConfigError("unknown distance mode '" + std::string(s) + "'");
}

void WeightVector::validate() const {
  bool any = false;
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw ConfigError("weights must be finite and >= 0");
    any = any || x > 0.0;
  }
  if (!any) throw ConfigError("weights must not all be zero");
}

WeightVector parse_weights(std::string_view csv) {
  WeightVector out;
  std::size_t k = 0;
  std::string item;
  std::istringstream in{std::string(csv)};
  while (std::getline(in, item, ',')) {
    if (k == 3) throw ConfigError("expected three weights");
    try {
      std::size_t used = 0;
      out.w[k] = std::stod(item, &used);
      if (used != item.size()) throw ConfigError("bad weight '" + item + "'");
    } catch (const std::logic_error&) {
      throw ConfigError("bad weight '" + item + "'");
    }
    ++k;
  }
  if (k != 3) throw ConfigError("expected three weights");
  out.validate();
  return out;
}

double truncation_constant(std::span<const PersistenceDiagram> diagrams) {
  double top = 0.0;
  for (const auto& pd : diagrams) {
    for (const auto& bars : pd.bars) {
      for (const auto& b : bars) {
        top = std::max(top, b.birth);
        if (!b.infinite()) top = std::max(top, b.death);
      }
    }
  }
  return top > 0.0 ? 1.1 * top : 1.0;
}

PersistenceDiagram truncate_infinite(PersistenceDiagram pd, double value) {
  for (auto& bars : pd.bars) {
    for (auto& b : bars) {
      if (b.infinite()) b.death = std::max(value, b.birth);
    }
  }
  return pd;
}

std::vector<PersistenceDiagram> truncate_all(std::span<const PersistenceDiagram> diagrams,
                                             double value) {
  std::vector<PersistenceDiagram> out;
  out.reserve(diagrams.size());
  for (const auto& pd : diagrams) out.push_back(truncate_infinite(pd, value));
  return out;
}

namespace {

double point_distance(const Bar& a, const Bar& b) {
  return std::hypot(a.birth - b.birth, a.death - b.death);
}

double farthest_from_diagonal(std::span<const Bar> bars) {
  double top = 0.0;
  for (const auto& b : bars) top = std::max(top, (b.death - b.birth) / std::numbers::sqrt2);
  return top;
}

double directed_hausdorff(std::span<const Bar> from, std::span<const Bar> to) {
  double sup = 0.0;
  for (const auto& a : from) {
    double inf = std::numeric_limits<double>::infinity();
    for (const auto& b : to) inf = std::min(inf, point_distance(a, b));
    sup = std::max(sup, inf);
  }
  return sup;
}

}  // namespace

double component_distance(std::span<const Bar> a, std::span<const Bar> b, DistanceMode mode) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty()) return farthest_from_diagonal(b);
  if (b.empty()) return farthest_from_diagonal(a);
  if (mode == DistanceMode::kHausdorff) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
  }
  double top = 0.0;
  for (const auto& x : a) {
    for (const auto& y : b) top = std::max(top, point_distance(x, y));
  }
  return top;
}

double diagram_distance(const PersistenceDiagram& x, const PersistenceDiagram& y,
                        const WeightVector& w, DistanceMode mode) {
  double d = 0.0;
  for (std::size_t k = 0; k <= kMaxHomologyDim; ++k) {
    if (w.w[k] == 0.0) continue;
    d += w.w[k] * component_distance(x.bars[k], y.bars[k], mode);
  }
  return d;
}

DistanceMatrix distance_matrix(std::span<const PersistenceDiagram> diagrams,
                               const WeightVector& w, DistanceMode mode) {
  DistanceMatrix m;
  const std::size_t n = diagrams.size();
  for (const auto& pd : diagrams) m.ids.push_back(pd.id);
  m.values.assign(n * n, 0.0);
  parallel_for(n, 0, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m.values[i * n + j] = diagram_distance(diagrams[i], diagrams[j], w, mode);
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    if (mode == DistanceMode::kMaxPairwise) {
      m.values[i * n + i] = diagram_distance(diagrams[i], diagrams[i], w, mode);
    }
    for (std::size_t j = 0; j < i; ++j) m.values[i * n + j] = m.values[j * n + i];
  }
  return m;
}

std::string distance_matrix_csv(const DistanceMatrix& m) {
  std::ostringstream out;
  out.precision(17);
  out << "id";
  for (const auto& id : m.ids) out << ',' << id;
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.ids[i];
    for (std::size_t j = 0; j < m.size(); ++j) out << ',' << m(i, j);
    out << '\n';
  }
  return out.str();
}

}  // namespace pdmargin
