#include "pdmargin/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pdmargin {

double qp_objective(const QpProblem& p, const Eigen::VectorXd& x) {
  return 0.5 * x.dot(p.Q * x) + p.b.dot(x);
}

QpReport qp_residuals(const QpProblem& p, const Eigen::VectorXd& x, const Eigen::VectorXd& z) {
  QpReport r;
  const Eigen::VectorXd slack = p.G * x - p.h;
  r.primal_residual = std::max(0.0, (-slack).maxCoeff());
  r.stationarity_residual = (p.Q * x + p.b - p.G.transpose() * z).lpNorm<Eigen::Infinity>();
  r.complementarity_residual = slack.cwiseProduct(z).lpNorm<Eigen::Infinity>();
  r.objective = qp_objective(p, x);
  return r;
}

namespace {

void validate(const QpProblem& p) {
  const auto n = p.Q.rows();
  if (p.Q.cols() != n || p.b.size() != n || p.G.cols() != n || p.h.size() != p.G.rows()) {
    throw Error("QP dimensions are inconsistent");
  }
  if (!p.Q.allFinite() || !p.b.allFinite() || !p.G.allFinite() || !p.h.allFinite()) {
    throw Error("QP data must be finite");
  }
  if ((p.Q - p.Q.transpose()).lpNorm<Eigen::Infinity>() > 1e-12 * (1.0 + p.Q.lpNorm<Eigen::Infinity>())) {
    throw Error("Q must be symmetric");
  }
}

// Largest step in (0, 1] keeping v + step * dv >= 0.
double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  double step = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv(i) < 0.0) step = std::min(step, -v(i) / dv(i));
  }
  return step;
}

}  // namespace

QpSolution solve_qp(const QpProblem& p, const QpSettings& settings) {
  validate(p);
  const Eigen::Index nx = p.Q.rows();
  const Eigen::Index m = p.G.rows();
  const Eigen::MatrixXd Gt = p.G.transpose();

  Eigen::MatrixXd Qr = p.Q;
  for (Eigen::Index i = 0; i < nx; ++i) {
    if (Qr(i, i) == 0.0) Qr(i, i) = settings.regularization;
  }

  const double scale_h = 1.0 + p.h.lpNorm<Eigen::Infinity>();
  const double scale_b = 1.0 + p.b.lpNorm<Eigen::Infinity>();
  const double tol = settings.tol;

  QpSolution sol;
  sol.report.regularization = settings.regularization;

  if (m == 0) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(Qr);
    sol.x = ldlt.solve(-p.b);
    sol.z = Eigen::VectorXd::Zero(0);
    sol.report = qp_residuals(p, sol.x, sol.z);
    sol.report.regularization = settings.regularization;
    sol.report.converged = true;
    return sol;
  }

  // Starting point: least-squares fit of Gx = h. At that x the choice
  // z = h - Gx satisfies stationarity; slacks and duals are then shifted
  // into the interior as in Mehrotra's heuristic.
  Eigen::VectorXd x;
  {
    Eigen::MatrixXd M0 = Qr + Gt * p.G;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(M0);
    x = ldlt.solve(Gt * p.h - p.b);
    if (!x.allFinite()) x = Eigen::VectorXd::Zero(nx);
  }
  Eigen::VectorXd s = p.G * x - p.h;
  Eigen::VectorXd z = -s;
  s.array() += std::max(-1.5 * s.minCoeff(), 0.0);
  z.array() += std::max(-1.5 * z.minCoeff(), 0.0);
  if (s.dot(z) <= 0.0) {
    s.setOnes();
    z.setOnes();
  } else {
    const double sz = s.dot(z);
    const double ds = 0.5 * sz / z.sum();
    const double dz = 0.5 * sz / s.sum();
    s.array() += ds;
    z.array() += dz;
  }
  s = s.cwiseMax(1e-8);
  z = z.cwiseMax(1e-8);

  auto check = [&](QpReport& rep) {
    return rep.primal_residual <= tol && rep.stationarity_residual <= tol &&
           rep.complementarity_residual <= tol;
  };

  double best_merit = std::numeric_limits<double>::infinity();
  int since_improvement = 0;
  QpReport rep;

  for (int iter = 0; iter <= settings.max_iter; ++iter) {
    rep = qp_residuals(p, x, z);
    rep.iterations = iter;
    rep.regularization = settings.regularization;
    const Eigen::VectorXd r_p = p.G * x - s - p.h;
    if (check(rep) && r_p.lpNorm<Eigen::Infinity>() <= tol) {
      rep.converged = true;
      sol.x = x;
      sol.z = z;
      sol.report = rep;
      return sol;
    }
    if (iter == settings.max_iter) break;

    // Primal infeasibility certificate: z >= 0, G'z ~ 0, h'z > 0.
    const double hz = p.h.dot(z);
    if (hz > 1e6 * scale_b && (Gt * z).lpNorm<Eigen::Infinity>() <= 1e-6 * hz) {
      throw InfeasibleError("QP is primal infeasible (h'z = " + std::to_string(hz) + ")");
    }

    const double merit = std::max({rep.primal_residual / scale_h, rep.stationarity_residual / scale_b,
                                   rep.complementarity_residual / scale_b,
                                   r_p.lpNorm<Eigen::Infinity>() / scale_h});
    if (merit < 0.9 * best_merit) {
      best_merit = merit;
      since_improvement = 0;
    } else if (++since_improvement > 60) {
      throw ConvergenceError("interior-point method stalled at iteration " + std::to_string(iter), rep);
    }

    const Eigen::VectorXd r_d = p.Q * x + p.b - Gt * z;
    const double mu = s.dot(z) / static_cast<double>(m);
    const Eigen::VectorXd w = z.cwiseQuotient(s);

    Eigen::MatrixXd M = Qr;
    M.noalias() += Gt * w.asDiagonal() * p.G;
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    Eigen::LDLT<Eigen::MatrixXd> ldlt;
    const bool use_llt = llt.info() == Eigen::Success;
    if (!use_llt) ldlt.compute(M);

    auto newton = [&](const Eigen::VectorXd& r_c, Eigen::VectorXd& dx, Eigen::VectorXd& ds,
                      Eigen::VectorXd& dz) {
      const Eigen::VectorXd rhs = -r_d - Gt * (r_c + z.cwiseProduct(r_p)).cwiseQuotient(s);
      dx = use_llt ? Eigen::VectorXd(llt.solve(rhs)) : Eigen::VectorXd(ldlt.solve(rhs));
      ds = p.G * dx + r_p;
      dz = -(r_c + z.cwiseProduct(ds)).cwiseQuotient(s);
    };

    Eigen::VectorXd dx, ds, dz;
    const Eigen::VectorXd sz = s.cwiseProduct(z);
    newton(sz, dx, ds, dz);
    const double step_aff = std::min(max_step(s, ds), max_step(z, dz));
    const double mu_aff = (s + step_aff * ds).dot(z + step_aff * dz) / static_cast<double>(m);
    const double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3);

    const Eigen::VectorXd r_c =
        sz + ds.cwiseProduct(dz) - Eigen::VectorXd::Constant(m, sigma * mu);
    newton(r_c, dx, ds, dz);
    if (!dx.allFinite() || !ds.allFinite() || !dz.allFinite()) {
      throw ConvergenceError("non-finite Newton step at iteration " + std::to_string(iter), rep);
    }
    const double step = std::min(1.0, 0.995 * std::min(max_step(s, ds), max_step(z, dz)));
    x += step * dx;
    s += step * ds;
    z += step * dz;
  }

  throw ConvergenceError("interior-point method reached max_iter = " +
                             std::to_string(settings.max_iter),
                         rep);
}

}  // namespace pdmargin
