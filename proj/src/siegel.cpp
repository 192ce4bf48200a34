#include "thetanull/siegel.hpp"

#include <cmath>
#include <random>
#include <string>

#include "thetanull/errors.hpp"

namespace thetanull {

namespace {

// gamma^t J gamma = J  <=>  A^t C, B^t D symmetric and A^t D - C^t B = I.
bool symplectic_identities_hold(const SymplecticMatrix& s) {
  const IntMatrix AtC = s.A.transpose() * s.C;
  const IntMatrix BtD = s.B.transpose() * s.D;
  const IntMatrix AtD_CtB = s.A.transpose() * s.D - s.C.transpose() * s.B;
  IntMatrix I = IntMatrix::Identity(s.g, s.g);
  return AtC == IntMatrix(AtC.transpose()) && BtD == IntMatrix(BtD.transpose()) &&
         AtD_CtB == I;
}

}  // namespace

SymplecticMatrix SymplecticMatrix::checked(IntMatrix A, IntMatrix B, IntMatrix C,
                                           IntMatrix D) {
  SymplecticMatrix s;
  s.g = static_cast<int>(A.rows());
  if (A.cols() != s.g || B.rows() != s.g || B.cols() != s.g || C.rows() != s.g ||
      C.cols() != s.g || D.rows() != s.g || D.cols() != s.g)
    throw Error(ErrorKind::DimensionMismatch, "symplectic blocks must all be g x g");
  s.A = std::move(A);
  s.B = std::move(B);
  s.C = std::move(C);
  s.D = std::move(D);
  if (!symplectic_identities_hold(s))
    throw Error(ErrorKind::NotSymplectic, "gamma^t J gamma != J");
  return s;
}

SymplecticMatrix SymplecticMatrix::identity(int g) {
  return checked(IntMatrix::Identity(g, g), IntMatrix::Zero(g, g),
                 IntMatrix::Zero(g, g), IntMatrix::Identity(g, g));
}

SymplecticMatrix SymplecticMatrix::J(int g) {
  return checked(IntMatrix::Zero(g, g), IntMatrix::Identity(g, g),
                 -IntMatrix::Identity(g, g), IntMatrix::Zero(g, g));
}

SymplecticMatrix SymplecticMatrix::translation(const IntMatrix& B) {
  const int g = static_cast<int>(B.rows());
  if (B != IntMatrix(B.transpose()))
    throw Error(ErrorKind::NotSymplectic, "translation block must be symmetric");
  return checked(IntMatrix::Identity(g, g), B, IntMatrix::Zero(g, g),
                 IntMatrix::Identity(g, g));
}

SymplecticMatrix SymplecticMatrix::gl_block(const IntMatrix& U) {
  const int g = static_cast<int>(U.rows());
  // integer inverse via adjugate-free exact solve: for GL(g,Z) inputs the
  // double inverse rounds exactly (entries stay tiny in the generators used).
  Eigen::MatrixXd Ud = U.cast<double>();
  double det = Ud.determinant();
  if (std::abs(std::abs(det) - 1.0) > 1e-9)
    throw Error(ErrorKind::NotSymplectic, "gl_block needs det U = +/-1");
  Eigen::MatrixXd Vinv = Ud.inverse();
  IntMatrix Uinv(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      Uinv(i, j) = static_cast<std::int64_t>(std::llround(Vinv(i, j)));
  return checked(IntMatrix(U.transpose()), IntMatrix::Zero(g, g),
                 IntMatrix::Zero(g, g), Uinv);
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& o) const {
  if (g != o.g) throw Error(ErrorKind::DimensionMismatch, "genus mismatch in product");
  return checked(A * o.A + B * o.C, A * o.B + B * o.D, C * o.A + D * o.C,
                 C * o.B + D * o.D);
}

PeriodMatrix validate_period_matrix(const Eigen::MatrixXcd& raw, double sym_tol) {
  if (raw.rows() != raw.cols() || raw.rows() < 1)
    throw Error(ErrorKind::DimensionMismatch, "period matrix must be square");
  const int g = static_cast<int>(raw.rows());
  double asym = 0.0;
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j)
      asym = std::max(asym, std::abs(raw(i, j) - raw(j, i)));
  if (asym > sym_tol)
    throw Error(ErrorKind::NotSymmetric,
                "asymmetry " + std::to_string(asym) + " exceeds tolerance " +
                    std::to_string(sym_tol));
  PeriodMatrix tau;
  tau.g = g;
  tau.entries = 0.5 * (raw + raw.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tau.entries.imag());
  const double lmin = es.eigenvalues().minCoeff();
  if (!(lmin > 0.0))
    throw Error(ErrorKind::NotPositiveDefinite,
                "Im(tau) has smallest eigenvalue " + std::to_string(lmin));
  return tau;
}

PeriodMatrix symplectic_action(const SymplecticMatrix& gamma, const PeriodMatrix& tau) {
  if (gamma.g != tau.g)
    throw Error(ErrorKind::DimensionMismatch, "genus mismatch in symplectic action");
  const Eigen::MatrixXcd Ac = gamma.A.cast<double>().cast<std::complex<double>>();
  const Eigen::MatrixXcd Bc = gamma.B.cast<double>().cast<std::complex<double>>();
  const Eigen::MatrixXcd Cc = gamma.C.cast<double>().cast<std::complex<double>>();
  const Eigen::MatrixXcd Dc = gamma.D.cast<double>().cast<std::complex<double>>();
  const Eigen::MatrixXcd den = Cc * tau.entries + Dc;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(den);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (!(smin > 0.0) || smax / smin > 1e12)
    throw Error(ErrorKind::SingularDenominator,
                "C tau + D numerically singular (condition " +
                    std::to_string(smax / std::max(smin, 1e-300)) + ")");
  const Eigen::MatrixXcd num = Ac * tau.entries + Bc;
  Eigen::MatrixXcd res = den.transpose().fullPivLu().solve(num.transpose()).transpose();
  // result is symmetric up to roundoff; revalidate with a roundoff-sized slack
  return validate_period_matrix(res, 1e-8 * std::max(1.0, res.cwiseAbs().maxCoeff()));
}

SiegelPoint act_on_point(const SymplecticMatrix& gamma, const SiegelPoint& pt) {
  if (gamma.g != pt.tau.g || pt.z.size() != pt.tau.g)
    throw Error(ErrorKind::DimensionMismatch, "genus mismatch in point action");
  const Eigen::MatrixXcd Cc = gamma.C.cast<double>().cast<std::complex<double>>();
  const Eigen::MatrixXcd Dc = gamma.D.cast<double>().cast<std::complex<double>>();
  const Eigen::MatrixXcd den = (Cc * pt.tau.entries + Dc).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(den);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (!(smin > 0.0) || smax / smin > 1e12)
    throw Error(ErrorKind::SingularDenominator, "C tau + D numerically singular");
  SiegelPoint out;
  out.z = den.fullPivLu().solve(pt.z);
  out.tau = symplectic_action(gamma, pt.tau);
  return out;
}

Characteristic act_on_characteristic(const SymplecticMatrix& gamma,
                                     const Characteristic& m) {
  if (gamma.g != m.g)
    throw Error(ErrorKind::DimensionMismatch, "genus mismatch in characteristic action");
  const int g = m.g;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> eps(g), del(g);
  for (int i = 0; i < g; ++i) {
    eps(i) = m.epsilon[static_cast<std::size_t>(i)];
    del(i) = m.delta[static_cast<std::size_t>(i)];
  }
  const IntMatrix CDt = gamma.C * gamma.D.transpose();
  const IntMatrix ABt = gamma.A * gamma.B.transpose();
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> e2 =
      gamma.D * eps - gamma.C * del + CDt.diagonal();
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> d2 =
      -gamma.B * eps + gamma.A * del + ABt.diagonal();
  Characteristic out;
  out.g = g;
  out.epsilon.resize(static_cast<std::size_t>(g));
  out.delta.resize(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i) {
    out.epsilon[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(((e2(i) % 2) + 2) % 2);
    out.delta[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(((d2(i) % 2) + 2) % 2);
  }
  return out;
}

bool is_in_gamma4(const SymplecticMatrix& gamma) {
  const int g = gamma.g;
  auto congruent = [&](const IntMatrix& M, const IntMatrix& N) {
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        if (((M(i, j) - N(i, j)) % 4) != 0) return false;
    return true;
  };
  const IntMatrix I = IntMatrix::Identity(g, g);
  const IntMatrix Z = IntMatrix::Zero(g, g);
  return congruent(gamma.A, I) && congruent(gamma.B, Z) && congruent(gamma.C, Z) &&
         congruent(gamma.D, I);
}

bool is_in_gamma48(const SymplecticMatrix& gamma) {
  if (!is_in_gamma4(gamma)) return false;
  // diag(A^t B) == diag(C^t B) == 0 mod 8.  (Inside Gamma_g(4) the second
  // condition is automatic - C == 0 and B == 0 mod 4 force diag(C^t B) == 0
  // mod 16 - but it is part of the subgroup's definition, so keep it.)
  const IntMatrix AtB = gamma.A.transpose() * gamma.B;
  const IntMatrix CtB = gamma.C.transpose() * gamma.B;
  for (int i = 0; i < gamma.g; ++i) {
    if ((AtB(i, i) % 8) != 0) return false;
    if ((CtB(i, i) % 8) != 0) return false;
  }
  return true;
}

PeriodMatrix random_siegel(int g, std::uint64_t seed, double spread) {
  if (g < 1) throw Error(ErrorKind::Config, "genus must be positive");
  if (!(spread >= 0.0)) throw Error(ErrorKind::Config, "spread must be nonnegative");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng, spread]() {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
    return spread * (2.0 * u - 1.0);
  };
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      const double v = uniform();
      X(i, j) = v;
      X(j, i) = v;
    }
  Eigen::MatrixXd M(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) M(i, j) = uniform();
  Eigen::MatrixXd Y = Eigen::MatrixXd::Identity(g, g) + M * M.transpose();
  Eigen::MatrixXcd tau =
      X.cast<std::complex<double>>() +
      std::complex<double>(0, 1) * Y.cast<std::complex<double>>();
  return validate_period_matrix(tau, 0.0);
}

}  // namespace thetanull
