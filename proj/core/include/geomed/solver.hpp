#pragma once

#include <optional>

#include "geomed/lp.hpp"
#include "geomed/types.hpp"

namespace geomed {

struct SolverOptions {
  double tol = 1e-8;          // dual-norm gradient tolerance
  double rel_obj_tol = 1e-12; // relative objective-change stop
  int max_iter = 500;
  double coincidence_eps = 1e-12;  // iterate-vs-row distance treated as a tie
  std::optional<Vector> warm_start;
  bool validate = true;  // skip re-validation inside posterior loops
};

struct SolveReport {
  Vector minimizer;
  double objective = 0.0;
  // Dual-norm size of the gradient over the non-coincident rows; when
  // coincident_row is set this is the quantity certified against the
  // coincident mass.
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::optional<Index> coincident_row;
};

// sum_i w_i * Phi_p(u, X_i - xi); convex in xi and nonnegative.
double objective(const Matrix& data, const Vector& w, const Direction& u,
                 const Vector& xi, const NormSpec& spec);

// argmin_theta sum_i w_i ||X_i - theta||_p.
//
// p = 2 runs the damped Weiszfeld iteration with the Vardi-Zhang shift rule
// at data points; other p run damped Newton with Armijo backtracking on the
// score Jacobian, falling back to the negative gradient when the Hessian
// estimate is ill-conditioned. When the minimizer sits on a data point the
// report carries the row index and the subgradient certificate
// ||sum_{i not tied} w_i psi(X_i, theta)||_q <= tied weight.
SolveReport weighted_median(const Matrix& data, const Vector& w,
                            const NormSpec& spec,
                            const SolverOptions& opts = {});

// argmin_xi sum_i w_i Phi_p(u, X_i - xi); u = 0 recovers weighted_median.
SolveReport geometric_quantile(const Matrix& data, const Vector& w,
                               const Direction& u, const NormSpec& spec,
                               const SolverOptions& opts = {});

// Smallest value whose cumulative weight reaches 1/2, per coordinate.
// Translation and positive-scale equivariant; the solver's starting point.
Vector coordinatewise_weighted_median(const Matrix& data, const Vector& w);

// Uniform weights 1/n.
Vector uniform_weights(Index n);

}  // namespace geomed
