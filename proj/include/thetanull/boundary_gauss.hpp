#pragma once
//
// Boundary criterion for the stratum tests, one genus down.  For tau' in
// H_h (h = g-1) with Riemann theta theta' = theta[0](., tau'), the bordered
// matrix at a divisor point z' (theta'(z', tau') = 0) is
//
//   D(z', tau') = | d^2 theta'/dz_i dz_j     d theta'/dz_i |
//                 | d theta'/dz_j                 0        |,
//
// an (h+1) x (h+1) complex symmetric matrix; the boundary point (2z', tau')
// lies in the closure of the rank-h stratum exactly when rk D <= h.  At a
// smooth divisor point this is equivalent to rk d(gauss) <= h - 2, where
// gauss(z') = [d theta'/dz_1 : ... : d theta'/dz_h] is the Gauss map to
// P^(h-1) and d(gauss) its differential restricted to the divisor - the rank
// that also drives the Thom-Boardman classification of z'.  Odd two-torsion
// points always satisfy rk D <= 2 (the translated series is odd up to an
// exponential factor exp(l^t u), forcing Hessian = l q^t + q l^t with
// q = grad theta'), and correspondingly d(gauss) = 0 there.
//
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "thetanull/schottky.hpp"
#include "thetanull/siegel.hpp"

namespace thetanull {

struct BorderedGaussMatrix {
  int h = 0;                         // genus of tau'
  Eigen::MatrixXcd matrix;           // (h+1) x (h+1), symmetric, 0 corner
  std::complex<double> theta_value;  // residual of the divisor equation at z'
  double theta_scale = 0.0;          // probe-set scale used for the residual test
  Eigen::VectorXd singular_values;   // descending
  int numerical_rank = 0;
};

// Assembles D from the order-2 jet of the Riemann theta at (z', tau').
// Throws NotOnDivisor when |theta'(z')| exceeds tol.tol_vanish * scale,
// where scale = max |theta'| over a small deterministic probe set.
BorderedGaussMatrix bordered_gauss(const PeriodMatrix& tau_p,
                                   const Eigen::VectorXcd& z_p,
                                   const Tolerances& tol = {});

// True iff the divisor residual passes and rk D <= h.
bool boundary_stratum_check(const PeriodMatrix& tau_p, const Eigen::VectorXcd& z_p,
                            int h, const Tolerances& tol = {});

// Gauss map at a smooth divisor point, normalized to unit norm with the first
// nonzero coordinate real positive.  Throws NotOnDivisor / BasePoint.
Eigen::VectorXcd gauss_map(const PeriodMatrix& tau_p, const Eigen::VectorXcd& z_p,
                           const Tolerances& tol = {});

// Rank of the Gauss-map differential restricted to the divisor: probes
// z' +/- step along an orthonormal tangent basis, Newton-projects each probe
// back onto {theta' = 0} along the gradient, forms the finite-difference
// Jacobian in an affine chart of the target (Richardson-refined from the 2x
// and 1x steps), and returns its numerical rank with a noise floor derived
// from the certified evaluation bounds.  Throws StepTooLarge when a probe's
// Newton correction exceeds half the step.
int gauss_diff_rank(const PeriodMatrix& tau_p, const Eigen::VectorXcd& z_p,
                    double fd_step = 1e-4, const Tolerances& tol = {});

// Reproducible divisor-point sampler: root-solves theta' along a random
// complex line from a seeded base point (coarse |theta'| scan, then complex
// Newton), retrying on fresh lines until a smooth divisor point is found.
Eigen::VectorXcd find_divisor_point(const PeriodMatrix& tau_p, std::uint64_t seed);

}  // namespace thetanull
