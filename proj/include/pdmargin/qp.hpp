#pragma once

#include <Eigen/Dense>

#include "pdmargin/error.hpp"

namespace pdmargin {

// minimize 1/2 x'Qx + b'x  subject to  Gx >= h
struct QpProblem {
  Eigen::MatrixXd Q;
  Eigen::VectorXd b;
  Eigen::MatrixXd G;
  Eigen::VectorXd h;
};

struct QpSettings {
  double tol = 1e-8;
  int max_iter = 20000;
  // Added to zero diagonal entries of Q in the Newton matrix only, so the
  // systems stay nonsingular while residuals refer to the original problem.
  double regularization = 1e-10;
};

// Residuals are measured on the returned point against the unregularized Q:
//   primal          max_i (h - Gx)_i^+
//   stationarity    ||Qx + b - G'z||_inf
//   complementarity max_i |z_i (Gx - h)_i|
struct QpReport {
  int iterations = 0;
  double primal_residual = 0.0;
  double stationarity_residual = 0.0;
  double complementarity_residual = 0.0;
  double objective = 0.0;
  double regularization = 0.0;
  bool converged = false;
};

struct QpSolution {
  Eigen::VectorXd x;
  Eigen::VectorXd z;  // multipliers of Gx >= h
  QpReport report;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, QpReport report)
      : Error(what), report_(report) {}
  const QpReport& report() const { return report_; }

 private:
  QpReport report_;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

double qp_objective(const QpProblem& p, const Eigen::VectorXd& x);
QpReport qp_residuals(const QpProblem& p, const Eigen::VectorXd& x, const Eigen::VectorXd& z);

// Infeasible-start primal-dual interior-point method with Mehrotra
// predictor-corrector steps. Stops once the primal, stationarity and
// complementarity residuals are all <= tol.
QpSolution solve_qp(const QpProblem& p, const QpSettings& settings = {});

}  // namespace pdmargin
