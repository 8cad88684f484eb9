#include "sensorplace/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sensorplace/errors.hpp"

namespace sensorplace {

void LassoProblem::validate() const {
  const Index m = h_bar.rows();
  const Index n = h_bar.cols();
  require(m > 0 && n > 0, ErrorCode::InvalidParameter, "empty sensing matrix");
  require(y_bar.size() == m, ErrorCode::DimensionMismatch, "y_bar length differs from H rows");
  require(weights.size() == n && col_norms.size() == n, ErrorCode::DimensionMismatch,
          "weights / column norms must have one entry per column");
  require(std::abs(y_bar.norm() - 1.0) <= 1e-12, ErrorCode::InvalidParameter,
          "y_bar must have unit norm");
  const RealVector norms = h_bar.colwise().norm().transpose();
  require((norms.array() - 1.0).abs().maxCoeff() <= 1e-12, ErrorCode::InvalidParameter,
          "H_bar columns must have unit norm");
  require(mu_bar > 0.0 && std::isfinite(mu_bar), ErrorCode::InvalidParameter,
          "mu_bar must be positive");
  require((weights.array() > 0.0).all() && weights.allFinite(), ErrorCode::InvalidParameter,
          "penalty weights must be positive");
  require((col_norms.array() > 0.0).all() && col_norms.allFinite(), ErrorCode::InvalidParameter,
          "column norms must be positive");
  require(y_norm > 0.0 && std::isfinite(y_norm), ErrorCode::InvalidParameter,
          "y_norm must be positive");
}

double default_mu(const ComplexMatrix& h_bar, const ComplexVector& y_bar, double c) {
  require(c > 0.0 && std::isfinite(c), ErrorCode::InvalidParameter, "mu fraction must be positive");
  require(y_bar.size() == h_bar.rows(), ErrorCode::DimensionMismatch,
          "y_bar length differs from H rows");
  require(y_bar.norm() > 0.0, ErrorCode::InvalidParameter, "measurement vector is zero");
  return c * (h_bar.adjoint() * y_bar).cwiseAbs().maxCoeff();
}

LassoProblem make_problem(const ComplexMatrix& h, const ComplexVector& y, double mu_fraction,
                          PenaltyWeighting weighting) {
  require(h.rows() == y.size(), ErrorCode::DimensionMismatch,
          "measurement length " + std::to_string(y.size()) + " differs from " +
              std::to_string(h.rows()) + " sensor rows");
  LassoProblem p;
  p.col_norms = h.colwise().norm().transpose();
  const double largest = p.col_norms.size() ? p.col_norms.maxCoeff() : 0.0;
  for (Index c = 0; c < p.col_norms.size(); ++c)
    require(largest > 0.0 && p.col_norms(c) > 1.0e-300 * largest, ErrorCode::DegenerateColumn,
            "sensing matrix column " + std::to_string(c) + " is zero");
  p.y_norm = y.norm();
  require(p.y_norm > 0.0 && std::isfinite(p.y_norm), ErrorCode::InvalidParameter,
          "measurement vector is zero");
  p.h_bar = h * p.col_norms.cwiseInverse().asDiagonal();
  p.y_bar = y / p.y_norm;
  p.mu_bar = default_mu(p.h_bar, p.y_bar, mu_fraction);
  p.weights = weighting == PenaltyWeighting::Unit ? RealVector(RealVector::Ones(h.cols()))
                                                  : RealVector(p.col_norms.cwiseInverse());
  return p;
}

Complex soft_threshold(Complex z, double t) {
  const double mag = std::abs(z);
  if (mag <= t) return {0.0, 0.0};
  return z * (1.0 - t / mag);
}

double lipschitz_bound(const ComplexMatrix& h) {
  // Largest eigenvalue of the smaller of H^H H and H H^H.
  const ComplexMatrix g = h.rows() < h.cols() ? ComplexMatrix(h * h.adjoint()) : ComplexMatrix(h.adjoint() * h);
  if (g.size() == 0) return 1.0;
  const double lambda = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(g, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  return lambda > 0.0 ? lambda : 1.0;
}

double lasso_objective(const LassoProblem& problem, const ComplexVector& x_bar) {
  const double fit = (problem.h_bar * x_bar - problem.y_bar).squaredNorm();
  return 0.5 * fit + problem.mu_bar * problem.weights.dot(x_bar.cwiseAbs());
}

namespace {

double kkt_from_correlation(const LassoProblem& problem, const ComplexVector& x_bar,
                            const ComplexVector& corr) {
  double worst = 0.0;
  for (Index i = 0; i < x_bar.size(); ++i) {
    const double t = problem.mu_bar * problem.weights(i);
    const double mag = std::abs(x_bar(i));
    const double v = mag == 0.0 ? std::max(0.0, std::abs(corr(i)) - t)
                                : std::abs(corr(i) - t * x_bar(i) / mag);
    worst = std::max(worst, v);
  }
  return worst;
}

}  // namespace

double kkt_residual(const LassoProblem& problem, const ComplexVector& x_bar) {
  require(x_bar.size() == problem.h_bar.cols(), ErrorCode::DimensionMismatch,
          "x_bar length differs from H columns");
  const ComplexVector corr = problem.h_bar.adjoint() * (problem.y_bar - problem.h_bar * x_bar);
  return kkt_from_correlation(problem, x_bar, corr);
}

LassoSolution solve(const LassoProblem& problem, const SolverOptions& options) {
  problem.validate();
  require(options.tol > 0.0 && std::isfinite(options.tol), ErrorCode::InvalidParameter,
          "solver tolerance must be positive");
  require(options.max_iter >= 1, ErrorCode::InvalidParameter, "max_iter must be >= 1");

  const ComplexMatrix& h = problem.h_bar;
  const ComplexVector& y = problem.y_bar;
  const Index n = h.cols();
  const RealVector thresholds = problem.mu_bar * problem.weights;

  double lip = lipschitz_bound(h);
  ComplexVector x = ComplexVector::Zero(n);
  ComplexVector v = x;
  ComplexVector x_next(n);
  double t = 1.0;
  double obj = lasso_objective(problem, x);

  LassoSolution sol;
  ComplexVector residual = y - h * x;
  double kkt = kkt_from_correlation(problem, x, h.adjoint() * residual);

  int it = 0;
  while (kkt >= options.tol && it < options.max_iter) {
    ++it;
    const ComplexVector resid_v = h * v - y;
    const ComplexVector grad = h.adjoint() * resid_v;
    const double smooth_v = 0.5 * resid_v.squaredNorm();
    double smooth_next = 0.0;
    // Backtrack if the bound underestimates the true Lipschitz constant.
    for (;;) {
      for (Index i = 0; i < n; ++i)
        x_next(i) = soft_threshold(v(i) - grad(i) / lip, thresholds(i) / lip);
      const ComplexVector step = x_next - v;
      smooth_next = 0.5 * (h * x_next - y).squaredNorm();
      const double model = smooth_v + grad.dot(step).real() + 0.5 * lip * step.squaredNorm();
      if (smooth_next <= model * (1.0 + 1e-14) + 1e-300) break;
      lip *= 2.0;
    }
    const double obj_next = smooth_next + thresholds.dot(x_next.cwiseAbs());

    if (obj_next > obj && t > 1.0) {
      // Momentum overshot: restart from the last accepted iterate.
      t = 1.0;
      v = x;
      continue;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    v = x_next + ((t - 1.0) / t_next) * (x_next - x);
    x = x_next;
    t = t_next;
    obj = obj_next;

    residual = y - h * x;
    kkt = kkt_from_correlation(problem, x, h.adjoint() * residual);
  }

  sol.x_bar_hat = x;
  sol.x_hat = problem.y_norm * x.cwiseQuotient(problem.col_norms.cast<Complex>());
  sol.objective = lasso_objective(problem, x);
  sol.kkt_residual = kkt;
  sol.iterations = it;
  sol.converged = kkt < options.tol;
  return sol;
}

}  // namespace sensorplace
