#include "geomed/types.hpp"

#include "geomed/lp.hpp"

#include <sstream>

namespace geomed {

NormSpec NormSpec::make(double p, Index k) {
  if (!std::isfinite(p) || p <= 1.0) {
    fail(ErrorKind::domain, "norm exponent p must be finite and > 1");
  }
  if (k < 1) fail(ErrorKind::invalid_input, "dimension k must be >= 1");
  const double q = p / (p - 1.0);
  const double rounded = std::round(p);
  const bool int_p = (p == rounded) && p >= 2.0 && rounded < 64.0;
  // Normal-limit theory covers integer p >= 2 for k >= 2 and any p > 1 only
  // when k = 2; computation stays allowed for flagged specs.
  const bool flagged = (k >= 3) && (p < 2.0);
  return NormSpec(p, q, int_p, int_p ? static_cast<int>(rounded) : 0, flagged);
}

void validate_direction(const Direction& d, const NormSpec& spec) {
  if (d.u.size() < 1 || !d.u.allFinite()) {
    fail(ErrorKind::invalid_input, "direction must be a finite vector");
  }
  const double nq = dual_norm(d.u, spec);
  if (nq >= 1.0) {
    std::ostringstream os;
    os << "direction lies outside the open dual-norm unit ball (||u||_q = "
       << nq << ")";
    fail(ErrorKind::domain, os.str());
  }
}

void validate_data(const Matrix& data) {
  if (data.rows() < 1 || data.cols() < 1) {
    fail(ErrorKind::invalid_input, "data matrix must be at least 1 x 1");
  }
  if (!data.allFinite()) {
    fail(ErrorKind::invalid_input, "data matrix contains non-finite entries");
  }
}

void validate_weights(const Vector& w, Index n) {
  if (w.size() != n) {
    fail(ErrorKind::invalid_input, "weight vector length does not match data");
  }
  if (!w.allFinite() || (w.array() < 0.0).any()) {
    fail(ErrorKind::invalid_input, "weights must be finite and nonnegative");
  }
  if (std::abs(w.sum() - 1.0) > 1e-12) {
    fail(ErrorKind::invalid_input, "weights must sum to 1 within 1e-12");
  }
}

}  // namespace geomed
