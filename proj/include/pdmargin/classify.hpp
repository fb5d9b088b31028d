#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdmargin/metrics.hpp"
#include "pdmargin/qp.hpp"

namespace pdmargin {

enum class FeatureKind { kBsDistances, kStatFeatures };

std::string_view to_string(FeatureKind k);
FeatureKind parse_feature_kind(std::string_view s);

// Row j holds the features of training sample j: distances to every
// landmark (bs) or a statistical vector.
struct LabeledSet {
  std::vector<std::string> ids;
  std::vector<int> labels;  // -1 / +1
  std::vector<std::vector<double>> rows;
  FeatureKind kind = FeatureKind::kStatFeatures;
  std::vector<std::string> landmark_ids;  // bs only

  std::size_t size() const { return rows.size(); }
  std::size_t n_features() const { return rows.empty() ? 0 : rows.front().size(); }
};

// Training set from a square training distance matrix.
LabeledSet labeled_distances(const DistanceMatrix& d, std::span<const int> labels);

// Variables ordered (beta[m], xi[n], c). Q = diag(2 I_m, 0, 0),
// b = (0, a 1_n, 0), G = [[y*X, I_n, y], [0, I_n, 0]], h = (1_n, 0).
struct MarginQp {
  QpProblem qp;
  std::size_t n = 0;  // samples
  std::size_t m = 0;  // features
};

// Throws InputError for labels other than +-1 or a single-class set.
MarginQp assemble_qp(const LabeledSet& data, double penalty);

struct MarginModel {
  std::vector<double> beta;
  double bias = 0.0;
  std::vector<double> slack;
  std::vector<std::string> landmark_ids;
  double penalty = 1.0;
  double tol = 1e-8;
  FeatureKind kind = FeatureKind::kStatFeatures;
  QpReport solver_report;

  double score(std::span<const double> features) const;
};

// Solves the soft-margin program and cross-checks the slack block against
// the hinge formula (max |xi - hinge| <= 10 tol). The bias is then moved to
// the midpoint of its optimal interval for the solved beta (a single point
// unless the hinge sum is flat there) and the slacks are recomputed.
MarginModel train(const LabeledSet& data, double penalty = 1.0, double tol = 1e-8,
                  int max_iter = 20000);

struct Prediction {
  double score = 0.0;
  int label = 1;  // score == 0 predicts +1
};

// Throws InputError on a feature-length mismatch.
Prediction predict(const MarginModel& model, std::span<const double> features);

// max(0, 1 - y_j (beta . x_j + c)) per training row.
std::vector<double> hinge_slacks(const MarginModel& model, const LabeledSet& data);

// ||beta||^2 + a * sum(xi)
double primal_objective(const MarginModel& model);

}  // namespace pdmargin
