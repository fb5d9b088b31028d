#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pdmargin/error.hpp"
#include "pdmargin/persistence.hpp"
#include "pdmargin/synth.hpp"
#include "properties.hpp"

using namespace pdmargin;

namespace {

const PointCloud kTwoPoints{"two", 2, {0, 0, 1, 0}, {}};
const PointCloud kSquare{"square", 2, {0, 0, 1, 0, 1, 1, 0, 1}, {}};

PointCloud equilateral() { return {"tri", 2, {0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2.0}, {}}; }

std::size_t count_dim(const Filtration& f, std::size_t dim) {
  std::size_t n = 0;
  for (const auto& s : f.simplices) n += s.dim == dim;
  return n;
}

}  // namespace

TEST_CASE("rips filtration of two points") {
  const auto f = rips_filtration(kTwoPoints, 1);
  REQUIRE(f.simplices.size() == 3);
  CHECK(f.simplices[0].dim == 0);
  CHECK(f.simplices[0].value == 0.0);
  CHECK(f.simplices[1].dim == 0);
  CHECK(f.simplices[1].value == 0.0);
  CHECK(f.simplices[2].dim == 1);
  CHECK(f.simplices[2].value == 1.0);
  CHECK(f.simplices[2].vertices[0] == 0);
  CHECK(f.simplices[2].vertices[1] == 1);
  CHECK(is_monotone(f));
}

TEST_CASE("equilateral triangle enters with its edges") {
  const auto f = rips_filtration(equilateral(), 2);
  REQUIRE(count_dim(f, 2) == 1);
  for (const auto& s : f.simplices) {
    if (s.dim >= 1) CHECK(s.value == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(f.simplices.back().dim == 2);
  CHECK(is_monotone(f));
}

TEST_CASE("radius cutoff drops the square diagonals") {
  const auto f = rips_filtration(kSquare, 2, 1.2);
  CHECK(count_dim(f, 1) == 4);
  CHECK(count_dim(f, 2) == 0);
  for (const auto& s : f.simplices) CHECK(s.value <= 1.2);
  CHECK(count_dim(rips_filtration(kSquare, 2), 1) == 6);
}

TEST_CASE("rips filtration preconditions") {
  CHECK_THROWS_AS(rips_filtration(PointCloud{"", 2, {}, {}}, 1), InputError);
  CHECK_THROWS_AS(rips_filtration(kSquare, 0), ConfigError);
  CHECK_THROWS_AS(rips_filtration(kSquare, 4), ConfigError);
}

TEST_CASE("simplex budget raises a resource error") {
  Rng rng(5);
  const auto pc = props::random_cloud(rng, 40, 3);
  CHECK_THROWS_AS(rips_filtration(pc, 3, kInfinity, 1000), ResourceError);
  CHECK_NOTHROW(rips_filtration(pc, 1, kInfinity, 1000));
  PersistenceOptions opts;
  opts.budget = 1000;
  CHECK_THROWS_AS(diagram_of(pc, opts), ResourceError);
}

TEST_CASE("two points give one finite and one infinite component") {
  const auto pd = compute_persistence(rips_filtration(kTwoPoints, 1));
  CHECK(pd.bars[0] == std::vector<Bar>{{0.0, 1.0}, {0.0, kInfinity}});
  CHECK(pd.bars[1].empty());
  CHECK(pd.bars == oracle::rank_persistence(kTwoPoints).bars);
  CHECK(oracle::components(kTwoPoints, 0.999) == 2);
  CHECK(oracle::components(kTwoPoints, 1.0) == 1);
}

TEST_CASE("square corners give one loop from 1 to sqrt 2") {
  for (auto mode : {Reduction::kTwist, Reduction::kPlain}) {
    const auto pd = compute_persistence(rips_filtration(kSquare, 2), mode);
    REQUIRE(pd.bars[1].size() == 1);
    CHECK(std::abs(pd.bars[1][0].birth - 1.0) <= 1e-9);
    CHECK(std::abs(pd.bars[1][0].death - std::sqrt(2.0)) <= 1e-9);
    CHECK(pd.bars[2].empty());
    CHECK(pd.bars[0].size() == 4);
  }
  CHECK(oracle::rank_persistence(kSquare).bars[1].size() == 1);
}

TEST_CASE("equilateral triangle has no loop under Rips") {
  const auto pd = compute_persistence(rips_filtration(equilateral(), 2));
  CHECK(pd.bars[1].empty());
  CHECK(pd.bars[0].size() == 3);
  CHECK(oracle::rank_persistence(equilateral()).bars[1].empty());
}

TEST_CASE("regular octahedron carries a void") {
  const PointCloud oct{"oct", 3, {1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1}, {}};
  const auto pd = compute_persistence(rips_filtration(oct, 3));
  REQUIRE(pd.bars[2].size() == 1);
  CHECK(pd.bars[2][0].birth == doctest::Approx(std::sqrt(2.0)));
  CHECK(pd.bars[2][0].death == doctest::Approx(2.0));
  CHECK(pd.bars == oracle::rank_persistence(oct).bars);
}

TEST_CASE("homology dimensions are bounded by the filtration") {
  const auto pd = compute_persistence(rips_filtration(kSquare, 1));
  CHECK(pd.bars[0].size() == 4);
  CHECK(pd.bars[1].empty());
  CHECK(pd.bars[2].empty());
  const auto loops = compute_persistence(rips_filtration(kSquare, 2, 1.2));
  REQUIRE(loops.bars[1].size() == 1);
  CHECK(loops.bars[1][0] == Bar{1.0, kInfinity});
}

TEST_CASE("filter_noise examples") {
  PersistenceDiagram pd;
  pd.bars[0] = {{0.0, 0.001}, {0.0, kInfinity}};
  pd.bars[1] = {{0.5, 0.505}, {0.5, 0.52}, {0.7, kInfinity}};
  pd.bars[2] = {{1.0, 1.009}};
  const auto out = filter_noise(pd);
  CHECK(out.bars[0] == pd.bars[0]);
  CHECK(out.bars[1] == std::vector<Bar>{{0.5, 0.52}, {0.7, kInfinity}});
  CHECK(out.bars[2].empty());
  CHECK(filter_noise(pd, 0.0) == pd);
  CHECK(filter_noise(pd, 0.01, {0}).bars[0] == std::vector<Bar>{{0.0, kInfinity}});
  CHECK_THROWS_AS(filter_noise(pd, -1.0), ConfigError);
}

TEST_CASE("noisy circle keeps exactly one long loop") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto pd = diagram_of(props::ring_cloud(20, 0.01, seed));
    std::size_t long_bars = 0;
    for (const auto& b : pd.bars[1]) long_bars += b.persistence() > 0.5;
    INFO("seed ", seed);
    CHECK(long_bars == 1);
  }
}

TEST_CASE("diagram_of carries the cloud id and respects the radius") {
  auto pc = noisy_circle(12, 0.01, 3);
  pc.id = "ring";
  PersistenceOptions opts;
  opts.max_radius = 0.3;
  const auto pd = diagram_of(pc, opts);
  CHECK(pd.id == "ring");
  std::size_t infinite = 0;
  for (const auto& b : pd.bars[0]) infinite += b.infinite();
  CHECK(infinite == oracle::components(pc, 0.3));
}

TEST_CASE("persistence properties") {
  for (auto [suite, n] : {std::pair{props::oracle_suite, 100}, std::pair{props::dim0_suite, 200},
                          std::pair{props::permutation_suite, 100},
                          std::pair{props::filtration_suite, 150}}) {
    const auto t = suite(20240613, n);
    INFO(t.name, ": ", t.messages.empty() ? "" : t.messages.front());
    CHECK(t.ok());
  }
}
