#pragma once
//
// Vanishing-theta-null stratum tests.  The theta-null divisor is the locus of
// tau possessing an even characteristic m with theta[m](0, tau) = 0; such a
// point is automatically a singular point of the translated theta divisor,
// and the rank of its quadric tangent cone - the rank of the z-Hessian of
// theta[m] at 0, equal by the heat equation
//
//   d^2 theta[m] / dz_i dz_j = (1 + delta_ij) * 2 pi i * d theta[m] / d tau_ij
//
// to the rank of the tau-derivative matrix - stratifies the divisor into
// nested loci indexed by h (rank <= h).  The genus-5 verdict encodes the weak
// Schottky characterization: a vanishing theta null whose tangent-cone rank
// is at most 3 is consistent with a Jacobian with vanishing theta null (up to
// the extra components permitted by that characterization), while rank > 3
// for every vanishing null certifies that tau is not such a Jacobian point.
//
// Ranks are decided from singular values (the Hessian is complex symmetric,
// not Hermitian, so eigenvalues are reported only for comparison purposes).
//
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "thetanull/characteristics.hpp"
#include "thetanull/siegel.hpp"
#include "thetanull/theta_eval.hpp"

namespace thetanull {

struct Tolerances {
  double tol_vanish = 1e-4;        // relative to the largest even theta constant
  double tol_rank = 1e-3;          // relative to the largest singular value
  double target_error = kDefaultTargetValue;
  double target_error_jet = kDefaultTargetJet;
};

struct NullCandidate {
  Characteristic m;                       // even
  std::complex<double> theta_value{0, 0};
  double theta_scale = 0.0;               // max |theta[m'](0,tau)| over even m'
  Eigen::MatrixXcd hessian;
  Eigen::VectorXd singular_values;        // descending
  Eigen::VectorXcd eigenvalues;           // sorted by descending modulus
  int numerical_rank = 0;
};

enum class Verdict { NOT_IN_THETA_NULL, IN_THETA_NULL_RANK_LE_3, IN_THETA_NULL_RANK_GT_3 };

const char* to_string(Verdict v);

struct SchottkyReport {
  int g = 0;
  Tolerances tolerances;
  // all even theta constants in enumeration order, with certified bounds
  std::vector<std::pair<Characteristic, ThetaEval>> constants;
  double scale = 0.0;                     // max |theta constant|
  std::vector<NullCandidate> candidates;  // one per vanishing null
  std::optional<int> min_stratum;         // min candidate rank; empty if none
  Verdict verdict = Verdict::NOT_IN_THETA_NULL;
};

// One certified evaluation per even characteristic, in enumeration order.
// Work fans out over a thread pool (THETA_THREADS overrides the size); the
// result is assembled by index and is identical for every thread count.
std::vector<std::pair<Characteristic, ThetaEval>> theta_constants_all(
    const PeriodMatrix& tau, double target_error = kDefaultTargetValue);

// All even m with |theta[m](0,tau)| < tol_vanish * max_m' |theta[m'](0,tau)|.
std::vector<Characteristic> vanishing_nulls(const PeriodMatrix& tau,
                                            double tol_vanish = 1e-4,
                                            double target_error = kDefaultTargetValue);

// #{k : sigma_k >= tol_rank * sigma_1}, or 0 when sigma_1 sits at the
// absolute underflow floor.  `sigma` must be descending.
int numerical_rank(const Eigen::VectorXd& sigma, double tol_rank);

NullCandidate null_candidate(const PeriodMatrix& tau, const Characteristic& m,
                             const Tolerances& tol = {});

// Minimal stratum h over all vanishing nulls (empty optional if none), plus
// the full report.
std::pair<std::optional<int>, SchottkyReport> stratum(const PeriodMatrix& tau,
                                                      const Tolerances& tol = {});

// Genus-5 weak Schottky verdict; throws WrongGenus unless tau.g == 5.
SchottkyReport genus5_verdict(const PeriodMatrix& tau, const Tolerances& tol = {});

}  // namespace thetanull
