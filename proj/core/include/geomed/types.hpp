#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace geomed {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Error taxonomy shared by the library and the CLI exit codes.
enum class ErrorKind {
  invalid_input,      // malformed arguments, non-finite data, bad weights
  domain,             // direction outside the open dual-norm unit ball, p <= 1
  coincident_point,   // score requested at x == theta
  singular,           // p < 2 diagonal singularity in the score Jacobian
  degenerate,         // data geometry does not identify the estimate
  non_convergence,    // iteration budget exhausted
  unstable_estimate,  // near-singular matrix in a plug-in estimate
  insufficient_data,  // too few usable rows
  sampler_degeneracy, // too many posterior draws failed
  io,                 // file access / parse problems
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

// lp-norm exponent together with its conjugate q (1/p + 1/q = 1).
//
// Integer p >= 2 is remembered so powers can be computed with exact integer
// exponents. For k >= 3 and p < 2 the estimate is still computable but the
// normal-limit theory does not cover it; the spec is tracked with a flag.
class NormSpec {
 public:
  static NormSpec make(double p, Index k);

  double p() const { return p_; }
  double q() const { return q_; }
  bool integer_p() const { return int_p_; }
  // |x|^p as an exact integer power when p is an integer >= 2.
  int p_as_int() const { return p_int_; }
  bool theory_flagged() const { return flagged_; }

 private:
  NormSpec(double p, double q, bool int_p, int p_int, bool flagged)
      : p_(p), q_(q), int_p_(int_p), p_int_(p_int), flagged_(flagged) {}
  double p_ = 2.0;
  double q_ = 2.0;
  bool int_p_ = true;
  int p_int_ = 2;
  bool flagged_ = false;
};

// A quantile direction u with ||u||_q < 1 (strict). u = 0 is the median.
struct Direction {
  Vector u;

  static Direction zero(Index k) { return Direction{Vector::Zero(k)}; }
  Index size() const { return u.size(); }
};

// Throws ErrorKind::domain unless ||u||_q < 1.
void validate_direction(const Direction& d, const NormSpec& spec);

// Throws unless data is a finite n x k matrix with n, k >= 1.
void validate_data(const Matrix& data);

// Throws unless w has length n, is nonnegative and sums to 1 within 1e-12.
void validate_weights(const Vector& w, Index n);

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace geomed
