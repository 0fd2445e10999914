#include "geomed/solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace geomed {

namespace {

constexpr double kArmijoSlope = 1e-4;
constexpr double kMaxCondition = 1e12;

struct Coincidence {
  std::vector<char> tied;  // per-row flag
  double weight = 0.0;     // total tied weight
  Index representative = -1;
};

Coincidence find_ties(const Matrix& data, const Vector& w, const Vector& xi,
                      const NormSpec& spec, double eps) {
  Coincidence c;
  c.tied.assign(static_cast<std::size_t>(data.rows()), 0);
  for (Index i = 0; i < data.rows(); ++i) {
    const double d = lp_norm_exponent(data.row(i).transpose() - xi, spec.p());
    if (d <= eps) {
      c.tied[static_cast<std::size_t>(i)] = 1;
      c.weight += w[i];
      if (c.representative < 0) c.representative = i;
    }
  }
  return c;
}

// Gradient of the smooth part: sum over non-tied rows of w_i psi(X_i, xi),
// minus u (the inner-product part is smooth everywhere).
Vector smooth_gradient(const Matrix& data, const Vector& w, const Vector& u,
                       const Vector& xi, const NormSpec& spec,
                       const Coincidence& ties) {
  Vector g = -u;
  for (Index i = 0; i < data.rows(); ++i) {
    if (ties.tied[static_cast<std::size_t>(i)] || w[i] == 0.0) continue;
    g += w[i] * score_psi(data.row(i).transpose(), xi, spec);
  }
  return g;
}

double objective_at(const Matrix& data, const Vector& w, const Vector& u,
                    const Vector& xi, const NormSpec& spec) {
  double f = 0.0;
  for (Index i = 0; i < data.rows(); ++i) {
    if (w[i] == 0.0) continue;
    const Vector t = data.row(i).transpose() - xi;
    f += w[i] * (lp_norm(t, spec) + u.dot(t));
  }
  return f;
}

// Rank of the centered positive-weight rows; < 2 means the support lies on
// a line and the minimizer need not be unique for k >= 2.
bool support_on_a_line(const Matrix& data, const Vector& w) {
  std::vector<Index> rows;
  for (Index i = 0; i < data.rows(); ++i) {
    if (w[i] > 0.0) rows.push_back(i);
  }
  if (rows.size() < 2) return true;
  Matrix sub(static_cast<Index>(rows.size()), data.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) sub.row(static_cast<Index>(r)) = data.row(rows[r]);
  const Vector mean = sub.colwise().mean();
  sub.rowwise() -= mean.transpose();
  Eigen::JacobiSVD<Matrix> svd(sub);
  const auto& sv = svd.singularValues();
  const double thresh = sv.size() > 0 ? sv[0] * 1e-10 : 0.0;
  Index rank = 0;
  for (Index j = 0; j < sv.size(); ++j) {
    if (sv[j] > thresh && sv[j] > 0.0) ++rank;
  }
  return rank < 2;
}

bool all_rows_tied(const Matrix& data, const Vector& w, double eps,
                   Index* row_out) {
  Index first = -1;
  for (Index i = 0; i < data.rows(); ++i) {
    if (w[i] == 0.0) continue;
    if (first < 0) {
      first = i;
      continue;
    }
    if ((data.row(i) - data.row(first)).cwiseAbs().maxCoeff() > eps) {
      return false;
    }
  }
  *row_out = first;
  return first >= 0;
}

// One tilted Weiszfeld/Vardi-Zhang step for p = 2. Derived from minimizing
// the standard quadratic majorant of the distance terms; the linear term is
// kept exact, so each step cannot increase the objective.
Vector weiszfeld_step(const Matrix& data, const Vector& w, const Vector& u,
                      const Vector& xi, const Coincidence& ties,
                      const Vector& grad) {
  double inv_sum = 0.0;
  Vector num = u;
  for (Index i = 0; i < data.rows(); ++i) {
    if (ties.tied[static_cast<std::size_t>(i)] || w[i] == 0.0) continue;
    const Vector t = data.row(i).transpose() - xi;
    const double d = t.norm();
    const double c = w[i] / d;
    inv_sum += c;
    num += c * (data.row(i).transpose());
  }
  Vector target = num / inv_sum;
  if (ties.weight > 0.0) {
    // Vardi-Zhang: damp the step by the tied mass relative to the pull of
    // the remaining points.
    const double pull = grad.norm();
    const double step = std::max(0.0, 1.0 - ties.weight / pull);
    return xi + step * (target - xi);
  }
  return target;
}

struct NewtonDirection {
  Vector d;
  bool from_hessian = false;
};

NewtonDirection newton_direction(const Matrix& data, const Vector& w,
                                 const Vector& xi, const NormSpec& spec,
                                 const Coincidence& ties, const Vector& grad) {
  const Index k = data.cols();
  Matrix h = Matrix::Zero(k, k);
  bool usable = true;
  for (Index i = 0; i < data.rows() && usable; ++i) {
    if (ties.tied[static_cast<std::size_t>(i)] || w[i] == 0.0) continue;
    try {
      h += w[i] * psi_dot(data.row(i).transpose(), xi, spec);
    } catch (const Error&) {
      usable = false;  // p < 2 coordinate tie; fall back to the gradient
    }
  }
  if (usable) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    const Vector& ev = eig.eigenvalues();
    const double emax = ev[k - 1];
    if (emax > 0.0 && ev[0] > emax / kMaxCondition) {
      Vector d = eig.eigenvectors() *
                 (eig.eigenvectors().transpose() * (-grad)).cwiseQuotient(ev);
      if (d.allFinite()) return {std::move(d), true};
    }
  }
  return {-grad, false};
}

SolveReport solve_impl(const Matrix& data, const Vector& w, const Direction& u,
                       const NormSpec& spec, const SolverOptions& opts) {
  if (opts.validate) {
    validate_data(data);
    validate_weights(w, data.rows());
    validate_direction(u, spec);
    if (u.size() != data.cols()) {
      fail(ErrorKind::invalid_input, "direction dimension mismatch");
    }
  }
  const Index k = data.cols();

  SolveReport report;
  Index tied_row = -1;
  if (all_rows_tied(data, w, opts.coincidence_eps, &tied_row)) {
    // Single support point: Phi_p(u, t) > 0 for t != 0, so this is exact.
    report.minimizer = data.row(tied_row).transpose();
    report.objective = objective_at(data, w, u.u, report.minimizer, spec);
    report.gradient_norm = 0.0;
    report.converged = true;
    report.coincident_row = tied_row;
    return report;
  }
  if (k >= 2 && support_on_a_line(data, w)) {
    fail(ErrorKind::degenerate,
         "data support lies on a line; the minimizer is not identified");
  }

  Vector xi = opts.warm_start ? *opts.warm_start
                              : coordinatewise_weighted_median(data, w);
  if (opts.warm_start && (xi.size() != k || !xi.allFinite())) {
    fail(ErrorKind::invalid_input, "warm start has the wrong shape");
  }

  double f = objective_at(data, w, u.u, xi, spec);
  const bool weiszfeld = spec.p() == 2.0;

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    const Coincidence ties =
        find_ties(data, w, xi, spec, opts.coincidence_eps);
    const Vector grad = smooth_gradient(data, w, u.u, xi, spec, ties);
    const double grad_q = dual_norm(grad, spec);

    report.iterations = iter;
    report.gradient_norm = grad_q;

    if (ties.weight > 0.0) {
      if (grad_q <= ties.weight + opts.tol) {
        report.minimizer = xi;
        report.objective = f;
        report.converged = true;
        report.coincident_row = ties.representative;
        return report;
      }
    } else if (grad_q <= opts.tol) {
      report.minimizer = xi;
      report.objective = f;
      report.converged = true;
      return report;
    }

    Vector next;
    double f_next;
    if (weiszfeld) {
      next = weiszfeld_step(data, w, u.u, xi, ties, grad);
      f_next = objective_at(data, w, u.u, next, spec);
      if (!(f_next <= f) || !next.allFinite()) {
        // Floating-point hiccup: halve toward the current iterate.
        Vector dir = next - xi;
        double t = 0.5;
        for (int ls = 0; ls < 50; ++ls, t *= 0.5) {
          next = xi + t * dir;
          f_next = objective_at(data, w, u.u, next, spec);
          if (f_next <= f && next.allFinite()) break;
        }
      }
    } else {
      const NewtonDirection nd =
          newton_direction(data, w, xi, spec, ties, grad);
      // One-sided slope; tied rows contribute their worst-case growth.
      double slope = grad.dot(nd.d) + ties.weight * lp_norm(nd.d, spec);
      if (slope >= 0.0) {
        // Direction not provably descending (possible only at a tie);
        // fall back to the negative gradient.
        Vector d = -grad;
        slope = grad.dot(d) + ties.weight * lp_norm(d, spec);
        double t = 1.0;
        next = xi + t * d;
        f_next = objective_at(data, w, u.u, next, spec);
        for (int ls = 0; ls < 60 && f_next > f + kArmijoSlope * t * slope;
             ++ls) {
          t *= 0.5;
          next = xi + t * d;
          f_next = objective_at(data, w, u.u, next, spec);
        }
      } else {
        double t = 1.0;
        next = xi + nd.d;
        f_next = objective_at(data, w, u.u, next, spec);
        for (int ls = 0; ls < 60 && (f_next > f + kArmijoSlope * t * slope ||
                                     !next.allFinite());
             ++ls) {
          t *= 0.5;
          next = xi + t * nd.d;
          f_next = objective_at(data, w, u.u, next, spec);
        }
      }
    }

    const double rel_change =
        std::abs(f - f_next) / std::max(1.0, std::abs(f));
    xi = next;
    f = f_next;

    if (rel_change <= opts.rel_obj_tol && iter > 1) {
      const Coincidence t2 =
          find_ties(data, w, xi, spec, opts.coincidence_eps);
      const Vector g2 = smooth_gradient(data, w, u.u, xi, spec, t2);
      report.minimizer = xi;
      report.objective = f;
      report.gradient_norm = dual_norm(g2, spec);
      report.iterations = iter;
      report.converged = true;
      if (t2.weight > 0.0) report.coincident_row = t2.representative;
      return report;
    }
  }

  report.minimizer = xi;
  report.objective = f;
  report.converged = false;
  Error err(ErrorKind::non_convergence,
            "solver exhausted its iteration budget");
  (void)err;
  throw err;
}

}  // namespace

double objective(const Matrix& data, const Vector& w, const Direction& u,
                 const Vector& xi, const NormSpec& spec) {
  validate_data(data);
  validate_weights(w, data.rows());
  validate_direction(u, spec);
  if (xi.size() != data.cols() || !xi.allFinite()) {
    fail(ErrorKind::invalid_input, "objective: bad evaluation point");
  }
  return objective_at(data, w, u.u, xi, spec);
}

SolveReport weighted_median(const Matrix& data, const Vector& w,
                            const NormSpec& spec, const SolverOptions& opts) {
  return solve_impl(data, w, Direction::zero(data.cols()), spec, opts);
}

SolveReport geometric_quantile(const Matrix& data, const Vector& w,
                               const Direction& u, const NormSpec& spec,
                               const SolverOptions& opts) {
  return solve_impl(data, w, u, spec, opts);
}

Vector coordinatewise_weighted_median(const Matrix& data, const Vector& w) {
  const Index n = data.rows();
  const Index k = data.cols();
  Vector out(k);
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index j = 0; j < k; ++j) {
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
      return data(a, j) < data(b, j);
    });
    double cum = 0.0;
    double value = data(order.back(), j);
    for (Index r : order) {
      cum += w[r];
      if (cum >= 0.5) {
        value = data(r, j);
        break;
      }
    }
    out[j] = value;
  }
  return out;
}

Vector uniform_weights(Index n) {
  if (n < 1) fail(ErrorKind::invalid_input, "uniform_weights: n must be >= 1");
  return Vector::Constant(n, 1.0 / static_cast<double>(n));
}

}  // namespace geomed
