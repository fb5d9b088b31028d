#include "pdmargin/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "pdmargin/error.hpp"

namespace pdmargin {

bool filtration_less(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.dim != b.dim) return a.dim < b.dim;
  return std::lexicographical_compare(a.vertices.begin(), a.vertices.begin() + a.dim + 1,
                                      b.vertices.begin(), b.vertices.begin() + b.dim + 1);
}

namespace {

// Combinatorial number system: distinct vertex sets of equal size get
// distinct keys.
class SimplexKeys {
 public:
  explicit SimplexKeys(std::size_t n) : binom_(n + 1) {
    for (std::size_t v = 0; v <= n; ++v) {
      binom_[v][0] = 1;
      for (std::size_t k = 1; k < 5; ++k) {
        binom_[v][k] = v == 0 ? 0 : binom_[v - 1][k - 1] + binom_[v - 1][k];
      }
    }
  }

  std::uint64_t key(const std::uint32_t* vertices, std::size_t count) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < count; ++i) k += binom_[vertices[i]][i + 1];
    return k;
  }

 private:
  std::vector<std::array<std::uint64_t, 5>> binom_;
};

void xor_into(std::vector<std::uint32_t>& target, const std::vector<std::uint32_t>& source,
              std::vector<std::uint32_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

Filtration rips_filtration(const PointCloud& pc, std::size_t max_dim, double max_radius,
                           std::size_t budget) {
  if (pc.empty()) throw InputError("Rips filtration needs at least one point");
  if (max_dim < 1 || max_dim > 3) throw ConfigError("max simplex dimension must be 1, 2 or 3");
  for (double v : pc.coords) {
    if (!std::isfinite(v)) throw InputError("non-finite coordinate in " + pc.id);
  }
  const std::size_t n = pc.size();
  if (n > (std::size_t{1} << 31)) throw ResourceError("too many points");

  Filtration f;
  f.max_dim = max_dim;
  f.max_radius = max_radius;
  f.n_vertices = n;

  std::vector<double> dist(n * n, 0.0);
  std::vector<std::vector<std::uint32_t>> upper(n);  // neighbors j > i within radius
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean(pc.point(i), pc.point(j));
      dist[i * n + j] = dist[j * n + i] = d;
      if (d <= max_radius) upper[i].push_back(static_cast<std::uint32_t>(j));
    }
  }

  auto push = [&](const Simplex& s) {
    if (f.simplices.size() >= budget) {
      throw ResourceError("Rips filtration exceeds the simplex budget of " + std::to_string(budget) +
                          " (" + std::to_string(n) + " points, max_dim " + std::to_string(max_dim) +
                          "); lower max_radius or the homology dimension");
    }
    f.simplices.push_back(s);
  };

  // Depth-first clique expansion over the upper neighbor lists.
  Simplex s;
  auto expand = [&](auto&& self, const std::vector<std::uint32_t>& candidates, std::uint8_t dim,
                    double diameter) -> void {
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const std::uint32_t v = candidates[a];
      double diam = diameter;
      for (std::uint8_t k = 0; k <= dim; ++k) diam = std::max(diam, dist[s.vertices[k] * n + v]);
      s.vertices[dim + 1] = v;
      s.dim = static_cast<std::uint8_t>(dim + 1);
      s.value = diam;
      push(s);
      if (s.dim < max_dim) {
        std::vector<std::uint32_t> next;
        const auto& nv = upper[v];
        std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(a) + 1,
                              candidates.end(), nv.begin(), nv.end(), std::back_inserter(next));
        if (!next.empty()) self(self, next, s.dim, diam);
      }
      s.dim = dim;
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    s = Simplex{};
    s.vertices[0] = static_cast<std::uint32_t>(i);
    s.dim = 0;
    s.value = 0.0;
    push(s);
    expand(expand, upper[i], 0, 0.0);
  }

  std::sort(f.simplices.begin(), f.simplices.end(), filtration_less);
  return f;
}

bool is_monotone(const Filtration& f) {
  SimplexKeys keys(f.n_vertices);
  std::array<std::unordered_map<std::uint64_t, std::size_t>, 4> index;
  for (std::size_t i = 0; i < f.simplices.size(); ++i) {
    const auto& s = f.simplices[i];
    if (i > 0 && !filtration_less(f.simplices[i - 1], s)) return false;
    index[s.dim][keys.key(s.vertices.data(), s.dim + 1u)] = i;
  }
  for (std::size_t i = 0; i < f.simplices.size(); ++i) {
    const auto& s = f.simplices[i];
    if (s.dim == 0) continue;
    std::array<std::uint32_t, 4> face{};
    for (std::size_t drop = 0; drop <= s.dim; ++drop) {
      std::size_t w = 0;
      for (std::size_t k = 0; k <= s.dim; ++k) {
        if (k != drop) face[w++] = s.vertices[k];
      }
      const auto it = index[s.dim - 1].find(keys.key(face.data(), s.dim));
      if (it == index[s.dim - 1].end() || it->second >= i) return false;
      if (f.simplices[it->second].value > s.value) return false;
    }
  }
  return true;
}

std::size_t PersistenceDiagram::total_bars() const {
  std::size_t t = 0;
  for (const auto& b : bars) t += b.size();
  return t;
}

void PersistenceDiagram::canonicalize() {
  for (auto& b : bars) std::sort(b.begin(), b.end());
}

PersistenceDiagram compute_persistence(const Filtration& f, Reduction mode) {
  const auto& sx = f.simplices;
  const std::size_t count = sx.size();
  SimplexKeys keys(f.n_vertices);

  std::array<std::unordered_map<std::uint64_t, std::uint32_t>, 4> index;
  for (std::size_t i = 0; i < count; ++i) {
    index[sx[i].dim][keys.key(sx[i].vertices.data(), sx[i].dim + 1u)] = static_cast<std::uint32_t>(i);
  }

  std::vector<std::vector<std::uint32_t>> columns(count);
  for (std::size_t j = 0; j < count; ++j) {
    const auto& s = sx[j];
    if (s.dim == 0) continue;
    std::array<std::uint32_t, 4> face{};
    auto& col = columns[j];
    for (std::size_t drop = 0; drop <= s.dim; ++drop) {
      std::size_t w = 0;
      for (std::size_t k = 0; k <= s.dim; ++k) {
        if (k != drop) face[w++] = s.vertices[k];
      }
      const auto it = index[s.dim - 1].find(keys.key(face.data(), s.dim));
      if (it == index[s.dim - 1].end()) throw InputError("filtration is missing a face");
      col.push_back(it->second);
    }
    std::sort(col.begin(), col.end());
  }

  constexpr std::int64_t kNone = -1;
  std::vector<std::int64_t> owner(count, kNone);  // row -> column whose low it is
  std::vector<bool> is_low(count, false);
  std::vector<std::uint32_t> scratch;

  auto reduce = [&](std::size_t j) {
    auto& col = columns[j];
    while (!col.empty()) {
      const auto k = owner[col.back()];
      if (k == kNone) break;
      xor_into(col, columns[static_cast<std::size_t>(k)], scratch);
    }
    if (!col.empty()) {
      owner[col.back()] = static_cast<std::int64_t>(j);
      is_low[col.back()] = true;
    }
  };

  if (mode == Reduction::kPlain) {
    for (std::size_t j = 0; j < count; ++j) reduce(j);
  } else {
    // Clearing: a column whose simplex is already a pivot row reduces to zero.
    std::vector<bool> cleared(count, false);
    for (std::size_t d = f.max_dim; d >= 1; --d) {
      for (std::size_t j = 0; j < count; ++j) {
        if (sx[j].dim != d) continue;
        if (cleared[j]) {
          columns[j].clear();
          continue;
        }
        reduce(j);
        if (!columns[j].empty()) cleared[columns[j].back()] = true;
      }
    }
  }

  PersistenceDiagram pd;
  for (std::size_t j = 0; j < count; ++j) {
    const auto& col = columns[j];
    if (!col.empty()) {
      const auto& born = sx[col.back()];
      if (born.dim > kMaxHomologyDim || born.dim + 1u > f.max_dim) continue;
      if (born.dim > 0 && born.value == sx[j].value) continue;
      pd.bars[born.dim].push_back({born.value, sx[j].value});
    } else if (!is_low[j] && sx[j].dim + 1u <= f.max_dim && sx[j].dim <= kMaxHomologyDim) {
      pd.bars[sx[j].dim].push_back({sx[j].value, kInfinity});
    }
  }
  pd.canonicalize();
  return pd;
}

PersistenceDiagram filter_noise(PersistenceDiagram pd, double cutoff,
                                const std::set<std::size_t>& dims) {
  if (!(cutoff >= 0.0)) throw ConfigError("noise cutoff must be non-negative");
  for (auto d : dims) {
    if (d > kMaxHomologyDim) continue;
    auto& bars = pd.bars[d];
    std::erase_if(bars, [&](const Bar& b) { return !b.infinite() && b.persistence() < cutoff; });
  }
  return pd;
}

PersistenceDiagram diagram_of(const PointCloud& pc, const PersistenceOptions& opts) {
  if (opts.max_homology_dim > kMaxHomologyDim) throw ConfigError("homology dimension must be <= 2");
  auto f = rips_filtration(pc, opts.max_homology_dim + 1, opts.max_radius, opts.budget);
  auto pd = filter_noise(compute_persistence(f), opts.cutoff, opts.filter_dims);
  pd.id = pc.id;
  return pd;
}

}  // namespace pdmargin
