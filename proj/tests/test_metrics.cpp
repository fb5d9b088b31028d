#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pdmargin/error.hpp"
#include "pdmargin/metrics.hpp"
#include "properties.hpp"

using namespace pdmargin;

namespace {

constexpr auto kH = DistanceMode::kHausdorff;
constexpr auto kM = DistanceMode::kMaxPairwise;

PersistenceDiagram diagram(std::vector<Bar> d0, std::vector<Bar> d1 = {}, std::vector<Bar> d2 = {}) {
  PersistenceDiagram pd;
  pd.bars = {std::move(d0), std::move(d1), std::move(d2)};
  return pd;
}

}  // namespace

TEST_CASE("component distance examples") {
  const std::vector<Bar> a{{0, 1}, {0.5, 2}};
  CHECK(component_distance(a, a, kH) == 0.0);
  const std::vector<Bar> one{{0, 1}}, two{{0, 2}};
  CHECK(component_distance(one, two, kH) == doctest::Approx(1.0));
  CHECK(component_distance(one, two, kM) == doctest::Approx(1.0));
  CHECK(component_distance({}, {}, kH) == 0.0);
  CHECK(component_distance({}, {}, kM) == 0.0);
}

TEST_CASE("one empty side uses the distance to the diagonal") {
  const std::vector<Bar> b{{0, 2}};
  const double expected = oracle::diagonal_distance_search(0.0, 2.0);
  CHECK(expected == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  for (auto mode : {kH, kM}) {
    CHECK(component_distance(b, {}, mode) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(component_distance({}, b, mode) == doctest::Approx(expected).epsilon(1e-9));
  }
  const std::vector<Bar> several{{0, 0.5}, {1, 4}, {2, 2.1}};
  CHECK(component_distance(several, {}, kH) ==
        doctest::Approx(oracle::diagonal_distance_search(1, 4)).epsilon(1e-9));
}

TEST_CASE("hausdorff and max-pairwise on a worked pair") {
  const std::vector<Bar> a{{0, 1}, {0, 3}};
  const std::vector<Bar> b{{0, 1.5}};
  CHECK(component_distance(a, b, kH) == doctest::Approx(1.5));
  CHECK(component_distance(a, b, kM) == doctest::Approx(1.5));
  const std::vector<Bar> c{{0, 1}, {0, 1.2}};
  CHECK(component_distance(c, c, kH) == 0.0);
  CHECK(component_distance(c, c, kM) == doctest::Approx(0.2));
}

TEST_CASE("diagram distance weights") {
  const auto x = diagram({{0, 3}});
  const auto y = diagram({{0, 6}});
  CHECK(component_distance(x.bars[0], y.bars[0], kH) == doctest::Approx(3.0));
  CHECK(diagram_distance(x, y, WeightVector{}, kH) == doctest::Approx(1.0));
  CHECK(diagram_distance(x, x, WeightVector{}, kH) == 0.0);

  const auto p = diagram({{0, 1}}, {{0.2, 0.9}}, {{0.5, 0.7}});
  const auto q = diagram({{0, 2}}, {}, {{0.4, 0.6}});
  const WeightVector dim0{{1, 0, 0}};
  CHECK(diagram_distance(p, q, dim0, kH) == component_distance(p.bars[0], q.bars[0], kH));
  const WeightVector mixed{{0.2, 0.5, 0.3}};
  double expected = 0;
  for (std::size_t k = 0; k < 3; ++k) expected += mixed.w[k] * component_distance(p.bars[k], q.bars[k], kM);
  CHECK(diagram_distance(p, q, mixed, kM) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("weight parsing and validation") {
  const auto w = parse_weights("0.5,0.25,0.25");
  CHECK(w.w == std::array<double, 3>{0.5, 0.25, 0.25});
  CHECK_THROWS_AS(parse_weights("1,1"), ConfigError);
  CHECK_THROWS_AS(parse_weights("1,1,1,1"), ConfigError);
  CHECK_THROWS_AS(parse_weights("1,x,1"), ConfigError);
  CHECK_THROWS_AS(parse_weights("0,0,0"), ConfigError);
  CHECK_THROWS_AS(parse_weights("-1,1,1"), ConfigError);
  CHECK_THROWS_AS((WeightVector{{NAN, 1, 1}}.validate()), ConfigError);
}

TEST_CASE("distance mode names") {
  CHECK(parse_distance_mode("hausdorff") == kH);
  CHECK(parse_distance_mode("max-pairwise") == kM);
  CHECK(to_string(kH) == "hausdorff");
  CHECK(to_string(kM) == "max-pairwise");
  CHECK_THROWS_AS(parse_distance_mode("bottleneck"), ConfigError);
}

TEST_CASE("truncation of infinite deaths") {
  const std::vector<PersistenceDiagram> ds{diagram({{0, 2}, {0, kInfinity}}),
                                           diagram({{0, kInfinity}}, {{1, 5}})};
  const double t = truncation_constant(ds);
  CHECK(t == doctest::Approx(5.5));
  const auto out = truncate_all(ds, t);
  CHECK(out[0].bars[0] == std::vector<Bar>{{0, 2}, {0, t}});
  CHECK(out[1].bars[0] == std::vector<Bar>{{0, t}});
  CHECK(out[1].bars[1] == ds[1].bars[1]);
  const std::vector<PersistenceDiagram> only_inf{diagram({{0, kInfinity}})};
  CHECK(truncation_constant(only_inf) == 1.0);
}

TEST_CASE("distance matrix examples") {
  const std::vector<PersistenceDiagram> same(4, diagram({{0, 1}, {0, 2}}, {{0.3, 0.8}}));
  const auto z = distance_matrix(same, WeightVector{}, kH);
  CHECK(z.size() == 4);
  for (double v : z.values) CHECK(v == 0.0);

  auto a = diagram({{0, 1}});
  auto b = diagram({{0, 4}});
  a.id = "a";
  b.id = "b";
  const std::vector<PersistenceDiagram> pair{a, b};
  const auto m = distance_matrix(pair, WeightVector{}, kH);
  CHECK(m.ids == std::vector<std::string>{"a", "b"});
  CHECK(m(0, 0) == 0.0);
  CHECK(m(0, 1) == doctest::Approx(1.0));
  CHECK(m(1, 0) == m(0, 1));
  CHECK(distance_matrix_csv(m).rfind("id,a,b\n", 0) == 0);

  Rng rng(9);
  std::vector<PersistenceDiagram> rnd;
  for (int i = 0; i < 12; ++i) rnd.push_back(props::random_diagram(rng));
  const auto r = distance_matrix(rnd, WeightVector{{0.1, 0.6, 0.3}}, kM);
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      CHECK(r(i, j) == r(j, i));
      CHECK(r(i, j) == diagram_distance(rnd[std::min(i, j)], rnd[std::max(i, j)],
                                        WeightVector{{0.1, 0.6, 0.3}}, kM));
    }
  }
}

TEST_CASE("the empty-set convention breaks the triangle inequality through an empty middle") {
  // A short bar, an empty diagram and a distant short bar: each is close to
  // the empty set through the diagonal but far from the other.
  const auto x = diagram({}, {{0, 0.1}});
  const auto y = diagram({}, {});
  const auto z = diagram({}, {{5, 5.1}});
  const WeightVector w{{0, 1, 0}};
  const double xz = diagram_distance(x, z, w, kH);
  const double via = diagram_distance(x, y, w, kH) + diagram_distance(y, z, w, kH);
  CHECK(xz == doctest::Approx(5.0 * std::sqrt(2.0)));
  CHECK(via == doctest::Approx(0.2 / std::sqrt(2.0)));
  CHECK(xz > via);
}

TEST_CASE("metric properties") {
  for (auto [suite, n] : {std::pair{props::hausdorff_metric_suite, 1000},
                          std::pair{props::max_pairwise_suite, 300},
                          std::pair{props::distance_scaling_suite, 300}}) {
    const auto t = suite(20240614, n);
    INFO(t.name, ": ", t.messages.empty() ? "" : t.messages.front());
    CHECK(t.ok());
  }
}
