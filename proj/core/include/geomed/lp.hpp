#pragma once

#include "geomed/types.hpp"

namespace geomed {

// ||v||_p = (sum_j |v_j|^p)^(1/p), computed with the largest component
// factored out so large exponents cannot overflow.
double lp_norm(const Vector& v, const NormSpec& spec);

// Same, for an arbitrary exponent (used for the conjugate norm ||.||_q).
double lp_norm_exponent(const Vector& v, double exponent);

inline double dual_norm(const Vector& v, const NormSpec& spec) {
  return lp_norm_exponent(v, spec.q());
}

// Phi_p(u, t) = ||t||_p + <u, t>. Strictly positive for t != 0 because
// |<u,t>| <= ||u||_q ||t||_p < ||t||_p.
double phi(const Direction& u, const Vector& t, const NormSpec& spec);

// Score of the lp location functional,
//   psi_j(x, theta) = |x_j - theta_j|^{p-1} / ||x - theta||_p^{p-1}
//                     * sign(theta_j - x_j),
// the gradient of theta -> ||x - theta||_p away from x. sign(0) = 0, so
// exactly tied coordinates contribute zero. ||psi||_q = 1 identically.
Vector score_psi(const Vector& x, const Vector& theta, const NormSpec& spec);

// Directional quantile score: score_psi(x, xi) + u, componentwise.
Vector score_psi_u(const Vector& x, const Vector& xi, const Direction& u,
                   const NormSpec& spec);

// Jacobian of theta -> score_psi(x, theta):
//   (p-1)/r * [ diag(|t_j|^{p-2} / r^{p-2}) - y y^T / r^{2(p-1)} ],
// with t = x - theta, r = ||t||_p and y_j = |t_j|^{p-1} sign(t_j).
// Symmetric positive semidefinite. p = 2 reduces to (I - uu^T)/r and is
// special-cased so no 0^0 arises at tied coordinates. For p < 2 a zero
// coordinate gap makes the diagonal diverge; that is reported as an error.
Matrix psi_dot(const Vector& x, const Vector& theta, const NormSpec& spec);

// Integrand of the score second-moment matrix: psi psi^T at (x, theta).
Matrix sigma_integrand(const Vector& x, const Vector& theta,
                       const NormSpec& spec);

}  // namespace geomed
