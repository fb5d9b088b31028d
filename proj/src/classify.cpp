#include "pdmargin/classify.hpp"

#include <algorithm>
#include <cmath>

#include "pdmargin/error.hpp"

namespace pdmargin {

namespace {

std::string row_name(const LabeledSet& data, std::size_t j) {
  return j < data.ids.size() ? data.ids[j] : "#" + std::to_string(j);
}

// Minimizer of sum_j max(0, 1 - y_j (f_j + c)) over c. The sum is convex and
// piecewise linear with kinks at y_j - f_j; between kinks its slope is the
// integer #{neg kinks below c} - #{pos kinks above c}. A flat stretch yields
// its midpoint, otherwise the kink where the slope changes sign.
double canonical_bias(const std::vector<double>& f, std::span<const int> labels) {
  std::vector<std::pair<double, int>> kinks;
  long pos_above = 0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    kinks.emplace_back(labels[j] - f[j], labels[j]);
    if (labels[j] > 0) ++pos_above;
  }
  std::sort(kinks.begin(), kinks.end());
  long neg_below = 0;
  for (std::size_t k = 0; k < kinks.size();) {
    const double here = kinks[k].first;
    for (; k < kinks.size() && kinks[k].first == here; ++k) {
      if (kinks[k].second > 0) {
        --pos_above;
      } else {
        ++neg_below;
      }
    }
    const long slope = neg_below - pos_above;  // just right of `here`
    if (slope > 0) return here;
    if (slope == 0) return k < kinks.size() ? 0.5 * (here + kinks[k].first) : here;
  }
  return kinks.back().first;
}

}  // namespace

std::string_view to_string(FeatureKind k) {
  return k == FeatureKind::kBsDistances ? "bs-distances" : "stat-features";
}

FeatureKind parse_feature_kind(std::string_view s) {
  if (s == "bs-distances") return FeatureKind::kBsDistances;
  if (s == "stat-features") return FeatureKind::kStatFeatures;
  throw InputError("unknown feature kind '" + std::string(s) + "'");
}

LabeledSet labeled_distances(const DistanceMatrix& d, std::span<const int> labels) {
  if (labels.size() != d.size()) throw InputError("label count does not match the distance matrix");
  LabeledSet set;
  set.kind = FeatureKind::kBsDistances;
  set.ids = d.ids;
  set.landmark_ids = d.ids;
  set.labels.assign(labels.begin(), labels.end());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto r = d.row(i);
    set.rows.emplace_back(r.begin(), r.end());
  }
  return set;
}

MarginQp assemble_qp(const LabeledSet& data, double penalty) {
  if (!(penalty > 0.0) || !std::isfinite(penalty)) throw InputError("penalty a must be positive");
  const std::size_t n = data.size();
  if (data.labels.size() != n) throw InputError("labels and rows differ in length");
  if (n == 0) throw InputError("empty training set");
  const std::size_t m = data.n_features();
  bool pos = false, neg = false;
  for (std::size_t j = 0; j < n; ++j) {
    const int y = data.labels[j];
    if (y != 1 && y != -1) throw InputError("label of " + row_name(data, j) + " is not +-1");
    (y > 0 ? pos : neg) = true;
    if (data.rows[j].size() != m) throw InputError("ragged feature rows");
    for (double v : data.rows[j]) {
      if (!std::isfinite(v)) throw InputError("non-finite feature in row " + std::to_string(j));
    }
  }
  if (!pos || !neg) throw InputError("training set needs both classes");
  if (data.kind == FeatureKind::kBsDistances && m != n) {
    throw InputError("bs distance rows must form a square matrix");
  }

  const auto nv = static_cast<Eigen::Index>(m + n + 1);
  const auto N = static_cast<Eigen::Index>(n);
  const auto M = static_cast<Eigen::Index>(m);
  MarginQp out;
  out.n = n;
  out.m = m;
  auto& qp = out.qp;
  qp.Q = Eigen::MatrixXd::Zero(nv, nv);
  qp.Q.topLeftCorner(M, M).diagonal().setConstant(2.0);
  qp.b = Eigen::VectorXd::Zero(nv);
  qp.b.segment(M, N).setConstant(penalty);
  qp.G = Eigen::MatrixXd::Zero(2 * N, nv);
  qp.h = Eigen::VectorXd::Zero(2 * N);
  for (Eigen::Index j = 0; j < N; ++j) {
    const double y = data.labels[static_cast<std::size_t>(j)];
    const auto& row = data.rows[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < M; ++i) qp.G(j, i) = y * row[static_cast<std::size_t>(i)];
    qp.G(j, M + j) = 1.0;
    qp.G(j, nv - 1) = y;
    qp.G(N + j, M + j) = 1.0;
    qp.h(j) = 1.0;
  }
  return out;
}

double MarginModel::score(std::span<const double> features) const {
  double f = bias;
  for (std::size_t i = 0; i < beta.size(); ++i) f += beta[i] * features[i];
  return f;
}

std::vector<double> hinge_slacks(const MarginModel& model, const LabeledSet& data) {
  std::vector<double> xi(data.size());
  for (std::size_t j = 0; j < data.size(); ++j) {
    xi[j] = std::max(0.0, 1.0 - data.labels[j] * model.score(data.rows[j]));
  }
  return xi;
}

double primal_objective(const MarginModel& model) {
  double obj = 0.0;
  for (double b : model.beta) obj += b * b;
  for (double x : model.slack) obj += model.penalty * x;
  return obj;
}

MarginModel train(const LabeledSet& data, double penalty, double tol, int max_iter) {
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  const MarginQp mq = assemble_qp(data, penalty);

  // The gap between the QP slack and the hinge slack is bounded by roughly
  // 2 * complementarity / a, so small penalties need a tighter solve.
  QpSettings settings;
  settings.max_iter = max_iter;
  settings.tol = tol * std::min(1.0, 2.0 * penalty / (1.0 + penalty));
  QpSolution sol;
  try {
    sol = solve_qp(mq.qp, settings);
  } catch (const ConvergenceError&) {
    if (settings.tol == tol) throw;
    settings.tol = tol;
    sol = solve_qp(mq.qp, settings);
  }

  MarginModel model;
  model.penalty = penalty;
  model.tol = tol;
  model.kind = data.kind;
  model.landmark_ids = data.landmark_ids;
  model.solver_report = sol.report;
  const auto M = static_cast<Eigen::Index>(mq.m);
  const auto N = static_cast<Eigen::Index>(mq.n);
  model.beta.assign(sol.x.data(), sol.x.data() + M);
  model.slack.assign(sol.x.data() + M, sol.x.data() + M + N);
  model.bias = sol.x(M + N);

  const auto hinge = hinge_slacks(model, data);
  for (std::size_t j = 0; j < hinge.size(); ++j) {
    if (std::abs(hinge[j] - model.slack[j]) > 10.0 * tol) {
      throw Error("QP slack of " + row_name(data, j) + " disagrees with the hinge slack (" +
                  std::to_string(model.slack[j]) + " vs " + std::to_string(hinge[j]) + ")");
    }
  }

  // The program fixes beta but leaves c free along a flat stretch of the
  // hinge sum; pick the canonical minimizer and report its exact slacks.
  std::vector<double> f(data.size());
  for (std::size_t j = 0; j < data.size(); ++j) f[j] = model.score(data.rows[j]) - model.bias;
  model.bias = canonical_bias(f, data.labels);
  model.slack = hinge_slacks(model, data);
  return model;
}

Prediction predict(const MarginModel& model, std::span<const double> features) {
  if (features.size() != model.beta.size()) {
    throw InputError("feature vector has length " + std::to_string(features.size()) +
                     ", model expects " + std::to_string(model.beta.size()));
  }
  Prediction p;
  p.score = model.score(features);
  p.label = p.score >= 0.0 ? 1 : -1;
  return p;
}

}  // namespace pdmargin
