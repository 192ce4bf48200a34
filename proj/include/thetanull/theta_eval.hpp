#pragma once
//
// Certified evaluation of theta functions with characteristics,
//
//   theta[m](z, tau) = sum_{n in Z^g} exp( pi i (n+eps/2)^t tau (n+eps/2)
//                                        + 2 pi i (n+eps/2)^t (z+del/2) ),
//
// together with the first and second z-derivatives (each term gains a factor
// 2 pi i (n+eps/2)_j per d/dz_j).  Writing Y = Im tau = U^t U (Cholesky),
// y = Im z and w = Y^(-1) y, the modulus of the n-th term is
//
//   |term| = P * exp(-pi r^2),   r = ||U(n + eps/2 + w)||,
//   P = exp(pi y^t Y^(-1) y),
//
// so the sum is truncated to the ellipsoid r <= R.  The returned error bound
// certifies the discarded tail of the series (under exact arithmetic): it is
// the sum of two certified pieces, the exactly enumerated shell between R and
// an outer radius, and a ball-packing Gaussian-tail bound (incomplete-gamma
// form) beyond the outer radius.  Derivative tails carry the polynomial
// majorant (2 pi ||n+eps/2||)^k.
//
// Arguments are always reduced first: integer vectors a, b are chosen so that
// z_red = z - a - tau b has Re(z_red) and Y^(-1) Im(z_red) in [-1/2, 1/2]^g,
// and the exact quasi-periodicity cocycle
//
//   theta[m](z, tau) = exp(pi i (eps^t a - del^t b))
//                      * exp(-pi i b^t tau b - 2 pi i b^t z_red)
//                      * theta[m](z_red, tau)
//
// is reapplied (for derivatives, together with the chain terms -2 pi i b_j).
//
#include <complex>
#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "thetanull/characteristics.hpp"
#include "thetanull/siegel.hpp"

namespace thetanull {

struct ThetaEval {
  std::complex<double> value{0.0, 0.0};
  double error_bound = 0.0;       // certified |computed - exact| of the series
  std::int64_t terms_used = 0;
  double radius = 0.0;            // ellipsoid radius in the chol(Im tau) metric
};

struct ThetaJet {
  std::complex<double> value{0.0, 0.0};
  Eigen::VectorXcd gradient;      // d theta / d z_j
  Eigen::MatrixXcd hessian;       // d^2 theta / d z_i d z_j, exactly symmetric
  double value_error = 0.0;       // certified per-order bounds
  double gradient_error = 0.0;    // bound valid for every gradient component
  double hessian_error = 0.0;     // bound valid for every hessian entry
  std::int64_t terms_used = 0;
  double radius = 0.0;
};

// Default targets: values 1e-10, jets (all orders) 1e-8.
inline constexpr double kDefaultTargetValue = 1e-10;
inline constexpr double kDefaultTargetJet = 1e-8;

// Resource caps; exceeding either raises NonConvergent ("tau too close to the
// boundary for the configured precision").  The radius cap bounds R in the
// chol(Im tau) metric; the term cap bounds the number of enumerated lattice
// points, which is the quantity that actually blows up near the boundary.
inline constexpr double kRadiusCap = 40.0;
inline constexpr std::int64_t kTermCap = std::int64_t(1) << 22;

// Radius R such that the tail sum of |term| (and, for order k, of
// (2 pi ||n+eps/2||)^k |term|) beyond R is provably < target_error, with the
// global prefactor P factored out.  Computed for the zero characteristic's
// lattice translate; per-characteristic evaluations plan their own radii.
double truncation_radius(const PeriodMatrix& tau, const Eigen::VectorXcd& z,
                         double target_error, int order);

ThetaEval eval_theta(const Characteristic& m, const Eigen::VectorXcd& z,
                     const PeriodMatrix& tau, double target_error = kDefaultTargetValue);

ThetaJet eval_theta_jet(const Characteristic& m, const Eigen::VectorXcd& z,
                        const PeriodMatrix& tau, double target_error = kDefaultTargetJet);

// (z_reduced, cocycle) with theta[m](z, tau) = cocycle * theta[m](z_reduced, tau).
std::pair<Eigen::VectorXcd, std::complex<double>> reduce_argument(
    const Characteristic& m, const Eigen::VectorXcd& z, const PeriodMatrix& tau);

}  // namespace thetanull
