#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pdmargin/classify.hpp"
#include "pdmargin/error.hpp"
#include "properties.hpp"

using namespace pdmargin;

namespace {

LabeledSet features(std::vector<std::vector<double>> rows, std::vector<int> labels) {
  LabeledSet s;
  s.rows = std::move(rows);
  s.labels = std::move(labels);
  for (std::size_t j = 0; j < s.labels.size(); ++j) s.ids.push_back("s" + std::to_string(j));
  return s;
}

double norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Two tight clusters far apart in the plane.
LabeledSet clusters(Rng& rng, std::size_t per_class, double spread) {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int y : {1, -1}) {
    for (std::size_t i = 0; i < per_class; ++i) {
      rows.push_back({3.0 * y + spread * gaussian(rng), 1.0 + spread * gaussian(rng)});
      labels.push_back(y);
    }
  }
  return features(rows, labels);
}

}  // namespace

TEST_CASE("assembled program blocks for two samples") {
  DistanceMatrix d{{"p", "q"}, {0.0, 0.7, 0.7, 0.0}};
  const std::vector<int> y{1, -1};
  const auto set = labeled_distances(d, y);
  CHECK(set.kind == FeatureKind::kBsDistances);
  CHECK(set.landmark_ids == std::vector<std::string>{"p", "q"});
  const auto mq = assemble_qp(set, 1.0);
  const auto& p = mq.qp;
  REQUIRE(p.Q.rows() == 5);
  REQUIRE(p.Q.cols() == 5);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(5, 5);
  q(0, 0) = 2;
  q(1, 1) = 2;
  CHECK(p.Q == q);
  CHECK(p.b == (Eigen::VectorXd(5) << 0, 0, 1, 1, 0).finished());
  CHECK(p.h == (Eigen::VectorXd(4) << 1, 1, 0, 0).finished());
  REQUIRE(p.G.rows() == 4);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < 2; ++i) CHECK(p.G(j, i) == y[j] * d(j, i));
    CHECK(p.G(j, 2 + j) == 1.0);
    CHECK(p.G(j, 2 + (1 - j)) == 0.0);
    CHECK(p.G(j, 4) == y[j]);
    CHECK(p.G(2 + j, 2 + j) == 1.0);
    CHECK(p.G(2 + j, 4) == 0.0);
    for (std::size_t i = 0; i < 2; ++i) CHECK(p.G(2 + j, i) == 0.0);
  }
  CHECK(assemble_qp(set, 2.5).qp.b(2) == 2.5);
}

TEST_CASE("assembled program resizes for statistical features") {
  const auto set = features({{1, 2, 3}, {4, 5, 6}, {7, 8, 9.5}, {0, 1, 0}}, {1, -1, 1, -1});
  const auto mq = assemble_qp(set, 1.0);
  CHECK(mq.n == 4);
  CHECK(mq.m == 3);
  CHECK(mq.qp.Q.rows() == 3 + 4 + 1);
  CHECK(mq.qp.G.rows() == 8);
  CHECK(mq.qp.G(1, 2) == -6.0);
}

TEST_CASE("assembly input errors") {
  CHECK_THROWS_AS(assemble_qp(features({{1}, {2}}, {1, 0}), 1.0), InputError);
  CHECK_THROWS_AS(assemble_qp(features({{1}, {2}}, {1, 1}), 1.0), InputError);
  CHECK_THROWS_AS(assemble_qp(features({{1}, {2}}, {1, -1}), 0.0), InputError);
  CHECK_THROWS_AS(assemble_qp(features({{1}, {2, 3}}, {1, -1}), 1.0), InputError);
  auto bs = features({{0, 1, 2}, {1, 0, 2}}, {1, -1});
  bs.kind = FeatureKind::kBsDistances;
  CHECK_THROWS_AS(assemble_qp(bs, 1.0), InputError);
}

TEST_CASE("one-variable smoke problem") {
  QpProblem p{Eigen::MatrixXd::Constant(1, 1, 2.0), Eigen::VectorXd::Zero(1),
              Eigen::MatrixXd::Constant(1, 1, 1.0), Eigen::VectorXd::Constant(1, 1.0)};
  const auto sol = solve_qp(p);
  CHECK(sol.x(0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(sol.report.converged);
  CHECK(sol.z(0) == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("two points on a line give the analytic maximum margin") {
  const auto set = features({{-1.0}, {1.0}}, {-1, 1});
  const auto model = train(set, 100.0);
  REQUIRE(model.beta.size() == 1);
  CHECK(std::abs(model.beta[0] - 1.0) <= 1e-6);
  CHECK(std::abs(model.bias) <= 1e-6);
  for (double x : model.slack) CHECK(std::abs(x) <= 1e-6);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(std::abs(set.labels[j] * model.score(set.rows[j]) - 1.0) <= 1e-6);
  }
}

TEST_CASE("KKT residuals of the returned point") {
  Rng rng(77);
  const auto set = clusters(rng, 8, 1.5);
  const auto sol = solve_qp(assemble_qp(set, 1.0).qp);
  const auto again = qp_residuals(assemble_qp(set, 1.0).qp, sol.x, sol.z);
  CHECK(again.primal_residual == sol.report.primal_residual);
  CHECK(sol.report.primal_residual <= 1e-8);
  CHECK(sol.report.stationarity_residual <= 1e-8);
  CHECK(sol.report.complementarity_residual <= 1e-8);
  CHECK(sol.report.regularization == 1e-10);
  CHECK(sol.report.objective == doctest::Approx(qp_objective(assemble_qp(set, 1.0).qp, sol.x)));
}

TEST_CASE("solver errors") {
  // x >= 1 and -x >= 0 cannot both hold
  QpProblem infeasible{Eigen::MatrixXd::Constant(1, 1, 2.0), Eigen::VectorXd::Zero(1),
                       (Eigen::MatrixXd(2, 1) << 1, -1).finished(), (Eigen::VectorXd(2) << 1, 0).finished()};
  CHECK_THROWS_AS(solve_qp(infeasible), InfeasibleError);

  Rng rng(3);
  const auto set = clusters(rng, 10, 2.0);
  QpSettings tight;
  tight.max_iter = 2;
  try {
    solve_qp(assemble_qp(set, 1.0).qp, tight);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(e.report().iterations == 2);
    CHECK_FALSE(e.report().converged);
  }
  CHECK_THROWS_AS(train(set, 1.0, 1e-8, 2), ConvergenceError);
}

TEST_CASE("separable clusters train with zero slack") {
  Rng rng(12);
  const auto set = clusters(rng, 10, 0.3);
  REQUIRE(oracle::perceptron_separable(set.rows, set.labels));
  const double tol = 1e-8;
  const auto model = train(set, 1.0, tol);
  for (double x : model.slack) CHECK(x <= 10.0 * tol);
  for (std::size_t j = 0; j < set.size(); ++j) {
    CHECK(predict(model, set.rows[j]).label == set.labels[j]);
  }
}

TEST_CASE("separable distance matrix trains with zero slack") {
  const std::size_t k = 5;
  std::vector<std::string> ids;
  std::vector<int> y;
  for (std::size_t i = 0; i < 2 * k; ++i) {
    ids.push_back("d" + std::to_string(i));
    y.push_back(i < k ? 1 : -1);
  }
  DistanceMatrix d{ids, std::vector<double>(4 * k * k)};
  for (std::size_t i = 0; i < 2 * k; ++i) {
    for (std::size_t j = 0; j < 2 * k; ++j) {
      d.values[i * 2 * k + j] = i == j ? 0.0 : ((i < k) == (j < k) ? 0.1 : 5.0);
    }
  }
  const auto set = labeled_distances(d, y);
  REQUIRE(oracle::perceptron_separable(set.rows, set.labels));
  const auto model = train(set, 1.0);
  for (double x : model.slack) CHECK(x <= 1e-7);
  CHECK(model.landmark_ids == ids);
  CHECK(model.kind == FeatureKind::kBsDistances);
}

TEST_CASE("conflicting duplicates sit inside the margin") {
  const auto set = features({{0.5, 0.5}, {0.5, 0.5}, {2, 2}, {-2, -2}}, {1, -1, 1, -1});
  const auto model = train(set, 0.05);
  CHECK(std::max(model.slack[0], model.slack[1]) >= 1.0 - 1e-7);
  CHECK(model.slack[0] + model.slack[1] >= 2.0 - 1e-7);
}

TEST_CASE("weight norm shrinks with the penalty") {
  Rng rng(21);
  const auto set = clusters(rng, 12, 2.5);
  double previous = INFINITY;
  for (double a : {1.0, 0.1, 0.01}) {
    const auto model = train(set, a);
    const double n = norm(model.beta);
    CHECK(n <= previous + 1e-7);
    previous = n;
  }
}

TEST_CASE("prediction examples") {
  MarginModel m;
  m.beta = {1.0};
  m.bias = 0.0;
  const std::vector<double> v{2.0};
  CHECK(predict(m, v).score == 2.0);
  CHECK(predict(m, v).label == 1);
  m.bias = -3.0;
  CHECK(predict(m, v).score == -1.0);
  CHECK(predict(m, v).label == -1);
  m.bias = -2.0;
  CHECK(predict(m, v).score == 0.0);
  CHECK(predict(m, v).label == 1);
  CHECK_THROWS_AS(predict(m, std::vector<double>{1.0, 2.0}), InputError);
}

TEST_CASE("hinge slacks and primal objective") {
  MarginModel m;
  m.beta = {2.0, 0.0};
  m.bias = -1.0;
  m.penalty = 3.0;
  const auto set = features({{1, 0}, {0, 0}, {2, 0}}, {1, -1, -1});
  CHECK(hinge_slacks(m, set) == std::vector<double>{0.0, 0.0, 4.0});
  m.slack = hinge_slacks(m, set);
  CHECK(primal_objective(m) == 4.0 + 12.0);
}

TEST_CASE("feature kind names") {
  CHECK(parse_feature_kind(to_string(FeatureKind::kBsDistances)) == FeatureKind::kBsDistances);
  CHECK(parse_feature_kind(to_string(FeatureKind::kStatFeatures)) == FeatureKind::kStatFeatures);
  CHECK_THROWS_AS(parse_feature_kind("kernel"), InputError);
  DistanceMatrix d{{"a"}, {0.0}};
  CHECK_THROWS_AS(labeled_distances(d, std::vector<int>{1, -1}), InputError);
}

TEST_CASE("classify properties") {
  for (auto [suite, n] : {std::pair{props::hinge_suite, 100}, std::pair{props::label_flip_suite, 50},
                          std::pair{props::landmark_permutation_suite, 30},
                          std::pair{props::specialization_suite, 30},
                          std::pair{props::svm_reference_suite, 50}}) {
    const auto t = suite(20240616, n);
    INFO(t.name, ": ", t.messages.empty() ? "" : t.messages.front());
    CHECK(t.ok());
  }
}
