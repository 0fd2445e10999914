#include "geomed/lp.hpp"

#include <cmath>

namespace geomed {

namespace {

inline double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// x^e for integer e >= 0 by repeated squaring; exact operation sequence so
// integer-p results do not drift with pow() implementations.
inline double ipow(double x, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

inline double pow_abs(double a, double e, bool int_e, int e_int) {
  // a >= 0 expected; exact integer path when the exponent is integral.
  if (int_e) return ipow(a, e_int);
  return std::pow(a, e);
}

inline void require_distinct(double r, const char* op) {
  if (r == 0.0) {
    fail(ErrorKind::coincident_point,
         std::string(op) + " is undefined at x == theta");
  }
}

}  // namespace

double lp_norm_exponent(const Vector& v, double exponent) {
  if (v.size() < 1 || !v.allFinite()) {
    fail(ErrorKind::invalid_input, "lp_norm requires a finite vector");
  }
  const double m = v.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  const double rounded = std::round(exponent);
  const bool int_e = (exponent == rounded) && exponent >= 1.0 && rounded < 64.0;
  const int e_int = int_e ? static_cast<int>(rounded) : 0;
  double s = 0.0;
  for (Index j = 0; j < v.size(); ++j) {
    s += pow_abs(std::abs(v[j]) / m, exponent, int_e, e_int);
  }
  return m * std::pow(s, 1.0 / exponent);
}

double lp_norm(const Vector& v, const NormSpec& spec) {
  return lp_norm_exponent(v, spec.p());
}

double phi(const Direction& u, const Vector& t, const NormSpec& spec) {
  validate_direction(u, spec);
  if (t.size() != u.size()) {
    fail(ErrorKind::invalid_input, "phi: dimension mismatch");
  }
  return lp_norm(t, spec) + u.u.dot(t);
}

Vector score_psi(const Vector& x, const Vector& theta, const NormSpec& spec) {
  if (x.size() != theta.size()) {
    fail(ErrorKind::invalid_input, "score_psi: dimension mismatch");
  }
  const Vector t = x - theta;
  const double r = lp_norm(t, spec);
  require_distinct(r, "score_psi");
  const bool int_p = spec.integer_p();
  const int pm1 = int_p ? spec.p_as_int() - 1 : 0;
  Vector psi(t.size());
  for (Index j = 0; j < t.size(); ++j) {
    // (|t_j|/r)^(p-1) keeps every factor in [0, 1].
    const double a = std::abs(t[j]) / r;
    psi[j] = pow_abs(a, spec.p() - 1.0, int_p, pm1) * (-sgn(t[j]));
  }
  return psi;
}

Vector score_psi_u(const Vector& x, const Vector& xi, const Direction& u,
                   const NormSpec& spec) {
  validate_direction(u, spec);
  if (u.size() != x.size()) {
    fail(ErrorKind::invalid_input, "score_psi_u: dimension mismatch");
  }
  return score_psi(x, xi, spec) + u.u;
}

Matrix psi_dot(const Vector& x, const Vector& theta, const NormSpec& spec) {
  if (x.size() != theta.size()) {
    fail(ErrorKind::invalid_input, "psi_dot: dimension mismatch");
  }
  const Index k = x.size();
  const Vector t = x - theta;
  const double r = lp_norm(t, spec);
  require_distinct(r, "psi_dot");
  const double p = spec.p();

  if (p == 2.0) {
    // Projector form (I - uu^T)/r; avoids 0^0 in the diagonal at ties.
    const Vector unit = t / r;
    return (Matrix::Identity(k, k) - unit * unit.transpose()) / r;
  }

  if (p < 2.0) {
    for (Index j = 0; j < k; ++j) {
      if (t[j] == 0.0) {
        fail(ErrorKind::singular,
             "psi_dot: coordinate tie makes the p < 2 diagonal diverge");
      }
    }
  }

  const bool int_p = spec.integer_p();
  Vector diag(k);  // (|t_j|/r)^(p-2)
  Vector b(k);     // y_j / r^(p-1) = (|t_j|/r)^(p-1) sign(t_j)
  for (Index j = 0; j < k; ++j) {
    const double a = std::abs(t[j]) / r;
    const double a_pm2 = int_p ? pow_abs(a, p - 2.0, true, spec.p_as_int() - 2)
                               : std::pow(a, p - 2.0);
    diag[j] = a_pm2;
    b[j] = a_pm2 * a * sgn(t[j]);
  }
  Matrix m = -b * b.transpose();
  m.diagonal() += diag;
  return m * ((p - 1.0) / r);
}

Matrix sigma_integrand(const Vector& x, const Vector& theta,
                       const NormSpec& spec) {
  const Vector s = score_psi(x, theta, spec);
  return s * s.transpose();
}

}  // namespace geomed
