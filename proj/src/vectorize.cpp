#include "pdmargin/vectorize.hpp"

#include <algorithm>
#include <cmath>

#include "pdmargin/error.hpp"

namespace pdmargin {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kBs: return "bs";
    case Method::kStat1: return "stat1";
    case Method::kStat2: return "stat2";
    case Method::kStat3: return "stat3";
  }
  return "?";
}

Method parse_method(std::string_view s) {
  if (s == "bs") return Method::kBs;
  if (s == "stat1") return Method::kStat1;
  if (s == "stat2") return Method::kStat2;
  if (s == "stat3") return Method::kStat3;
  throw ConfigError("unknown method '" + std::string(s) + "'");
}

FeatureVector bs_vectorize(const PersistenceDiagram& x,
                           std::span<const PersistenceDiagram> landmarks,
                           const WeightVector& w, DistanceMode mode) {
  if (landmarks.empty()) throw ConfigError("bs vectorization needs at least one landmark");
  FeatureVector fv;
  fv.method = Method::kBs;
  fv.values.reserve(landmarks.size());
  for (const auto& z : landmarks) {
    fv.values.push_back(diagram_distance(x, z, w, mode));
    fv.landmark_ids.push_back(z.id);
  }
  return fv;
}

namespace stats {

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size());
}

double percentile(std::span<const double> xs, double q) {
  if (xs.empty()) return 0.0;
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double median(std::span<const double> xs) { return percentile(xs, 0.5); }

}  // namespace stats

FeatureVector stats_vector_1(const PersistenceDiagram& pd) {
  FeatureVector fv;
  fv.method = Method::kStat1;
  fv.values = {0.01 * static_cast<double>(pd.bars[0].size()),
               static_cast<double>(pd.bars[1].size()),
               static_cast<double>(pd.bars[2].size())};
  return fv;
}

namespace {

std::vector<double> births(const std::vector<Bar>& bars) {
  std::vector<double> out;
  for (const auto& b : bars) out.push_back(b.birth);
  return out;
}

std::vector<double> deaths(const std::vector<Bar>& bars) {
  std::vector<double> out;
  for (const auto& b : bars) out.push_back(b.death);
  return out;
}

void require_finite(const PersistenceDiagram& pd) {
  for (const auto& bars : pd.bars) {
    for (const auto& b : bars) {
      if (b.infinite()) throw InputError("diagram " + pd.id + " has untruncated infinite bars");
    }
  }
}

}  // namespace

FeatureVector stats_vector_2(const PersistenceDiagram& pd) {
  require_finite(pd);
  FeatureVector fv;
  fv.method = Method::kStat2;
  const std::vector<double> series[5] = {deaths(pd.bars[0]), births(pd.bars[1]), deaths(pd.bars[1]),
                                         births(pd.bars[2]), deaths(pd.bars[2])};
  for (const auto& s : series) {
    if (s.empty()) {
      fv.values.insert(fv.values.end(), 5, 0.0);
      continue;
    }
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    fv.values.push_back(*hi);
    fv.values.push_back(*lo);
    fv.values.push_back(stats::variance(s));
    fv.values.push_back(stats::mean(s));
    fv.values.push_back(stats::median(s));
  }
  return fv;
}

FeatureVector stats_vector_3(const PersistenceDiagram& pd) {
  require_finite(pd);
  FeatureVector fv;
  fv.method = Method::kStat3;
  fv.values.reserve(kStat3Length);
  for (const auto& bars : pd.bars) {
    std::vector<double> b, d, mid, life;
    for (const auto& bar : bars) {
      b.push_back(bar.birth);
      d.push_back(bar.death);
      mid.push_back(0.5 * (bar.birth + bar.death));
      life.push_back(bar.death - bar.birth);
    }
    for (const auto* s : {&b, &d, &mid, &life}) {
      if (s->empty()) {
        fv.values.insert(fv.values.end(), 10, 0.0);
        continue;
      }
      const auto [lo, hi] = std::minmax_element(s->begin(), s->end());
      const double p25 = stats::percentile(*s, 0.25);
      const double p75 = stats::percentile(*s, 0.75);
      fv.values.push_back(stats::mean(*s));
      fv.values.push_back(std::sqrt(stats::variance(*s)));
      fv.values.push_back(stats::median(*s));
      fv.values.push_back(p75 - p25);
      fv.values.push_back(*hi - *lo);
      fv.values.push_back(stats::percentile(*s, 0.10));
      fv.values.push_back(p25);
      fv.values.push_back(p75);
      fv.values.push_back(stats::percentile(*s, 0.90));
      fv.values.push_back(*hi);
    }
  }
  for (const auto& bars : pd.bars) {
    double total = 0.0;
    for (const auto& bar : bars) total += bar.death - bar.birth;
    fv.values.push_back(static_cast<double>(bars.size()));
    fv.values.push_back(total);
  }
  return fv;
}

FeatureVector statistical_vector(Method m, const PersistenceDiagram& pd) {
  switch (m) {
    case Method::kStat1: return stats_vector_1(pd);
    case Method::kStat2: return stats_vector_2(pd);
    case Method::kStat3: return stats_vector_3(pd);
    case Method::kBs: break;
  }
  throw ConfigError("bs is not a statistical vectorization");
}

Standardizer Standardizer::fit(std::span<const std::vector<double>> rows) {
  Standardizer s;
  if (rows.empty()) return s;
  const std::size_t m = rows.front().size();
  s.mean.assign(m, 0.0);
  s.scale.assign(m, 1.0);
  std::vector<double> col(rows.size());
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < rows.size(); ++i) col[i] = rows[i][k];
    s.mean[k] = stats::mean(col);
    const double sd = std::sqrt(stats::variance(col));
    s.scale[k] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

std::vector<double> Standardizer::apply(std::span<const double> row) const {
  if (row.size() != mean.size()) throw InputError("standardizer width mismatch");
  std::vector<double> out(row.size());
  for (std::size_t k = 0; k < row.size(); ++k) out[k] = (row[k] - mean[k]) / scale[k];
  return out;
}

}  // namespace pdmargin
