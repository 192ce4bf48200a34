#pragma once
//
// The Siegel upper-half space H_g is the set of complex symmetric g x g
// matrices tau with positive definite imaginary part.  The modular group
// Sp(2g, Z), written in g x g blocks gamma = (A B; C D) with
// gamma^t J gamma = J for J = (0 I; -I 0), acts on H_g by
//
//     gamma . tau = (A tau + B)(C tau + D)^(-1),
//
// on points of C^g x H_g by gamma . (z, tau) = ((C tau + D)^(-t) z,
// gamma . tau), and on characteristics by the affine mod-2 map
//
//     gamma . [eps; del] = (D -C; -B A)[eps; del]
//                          + [diag(C D^t); diag(A B^t)]   (mod 2).
//
// Two congruence subgroups matter downstream: Gamma_g(4) = {gamma == Id mod 4}
// and Gamma_g(4,8) = {gamma in Gamma_g(4) : diag(A^t B) == diag(C^t B) == 0
// mod 8}; on the latter the characteristic action is trivial, so
// per-characteristic data is well defined on its quotient.
//
#include <cstdint>

#include <Eigen/Dense>

#include "thetanull/characteristics.hpp"

namespace thetanull {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// A validated point of H_g.  Construct through validate_period_matrix (or the
// other operations below, which revalidate); `entries` is exactly symmetric.
struct PeriodMatrix {
  int g = 0;
  Eigen::MatrixXcd entries;
};

// Exact integer symplectic matrix; the constructor-surrogate `checked` throws
// NotSymplectic unless gamma^t J gamma = J holds exactly in integer
// arithmetic.
struct SymplecticMatrix {
  int g = 0;
  IntMatrix A, B, C, D;

  static SymplecticMatrix checked(IntMatrix A, IntMatrix B, IntMatrix C, IntMatrix D);
  static SymplecticMatrix identity(int g);
  // J = (0 I; -I 0)
  static SymplecticMatrix J(int g);
  // (I B; 0 I) for symmetric integer B
  static SymplecticMatrix translation(const IntMatrix& B);
  // (U^t 0; 0 U^(-1)) for U in GL(g, Z); V must be the exact inverse of U^t's
  // transpose, i.e. U * V^t = I.  Use gl_block for the common cases.
  static SymplecticMatrix gl_block(const IntMatrix& U);

  SymplecticMatrix operator*(const SymplecticMatrix& o) const;
};

struct SiegelPoint {
  Eigen::VectorXcd z;
  PeriodMatrix tau;
};

// Symmetrizes raw within sym_tol and checks Im > 0 (positive definite).
PeriodMatrix validate_period_matrix(const Eigen::MatrixXcd& raw, double sym_tol = 1e-9);

PeriodMatrix symplectic_action(const SymplecticMatrix& gamma, const PeriodMatrix& tau);
SiegelPoint act_on_point(const SymplecticMatrix& gamma, const SiegelPoint& pt);
Characteristic act_on_characteristic(const SymplecticMatrix& gamma, const Characteristic& m);

bool is_in_gamma4(const SymplecticMatrix& gamma);
bool is_in_gamma48(const SymplecticMatrix& gamma);

// Deterministic test-point generator: tau = X + iY with X symmetric, entries
// uniform in [-spread, spread], and Y = I + M M^t, M uniform likewise.  The
// engine is mt19937_64; doubles are drawn as (next() >> 11) * 2^-53.
PeriodMatrix random_siegel(int g, std::uint64_t seed, double spread);

}  // namespace thetanull
