#pragma once

#include "sensorplace/linalg.hpp"

namespace sensorplace {

/// How the l1 penalty weights the normalized unknowns.
enum class PenaltyWeighting {
  /// mu_bar * ||x_bar||_1
  Unit,
  /// mu_bar * ||F x_bar||_1 with F_nn = 1 / ||h_n||_2
  ColumnNorm,
};

/// Normalized weighted LASSO
///   min 0.5 ||H_bar x - y_bar||^2 + mu_bar * sum_n w_n |x_n|
/// together with what is needed to map x_bar back to physical forces.
struct LassoProblem {
  ComplexMatrix h_bar;
  ComplexVector y_bar;
  double mu_bar = 0.0;
  RealVector weights;
  /// ||h_n||_2 of the un-normalized columns (diagonal of F^{-1}).
  RealVector col_norms;
  double y_norm = 1.0;

  void validate() const;
};

struct SolverOptions {
  double tol = 1e-8;
  int max_iter = 50'000;
};

struct LassoSolution {
  ComplexVector x_bar_hat;
  /// y_norm * F * x_bar_hat, in newtons.
  ComplexVector x_hat;
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// c * max_n |h_bar_n^H y_bar|
double default_mu(const ComplexMatrix& h_bar, const ComplexVector& y_bar, double c = 0.1);

/// Normalizes H and y, applies default_mu(fraction), and sets the weights.
LassoProblem make_problem(const ComplexMatrix& h, const ComplexVector& y,
                          double mu_fraction = 0.1,
                          PenaltyWeighting weighting = PenaltyWeighting::Unit);

/// Accelerated proximal gradient with function-value restart. Accepted
/// iterates never increase the objective.
LassoSolution solve(const LassoProblem& problem, const SolverOptions& options = {});

double lasso_objective(const LassoProblem& problem, const ComplexVector& x_bar);

/// Largest violation of the subgradient optimality conditions at x_bar.
double kkt_residual(const LassoProblem& problem, const ComplexVector& x_bar);

/// Complex soft-threshold z * max(1 - t / |z|, 0).
Complex soft_threshold(Complex z, double t);

/// Largest squared singular value of H (1 for a zero matrix).
double lipschitz_bound(const ComplexMatrix& h);

}  // namespace sensorplace
