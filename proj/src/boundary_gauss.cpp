#include "thetanull/boundary_gauss.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "thetanull/errors.hpp"
#include "thetanull/theta_eval.hpp"

namespace thetanull {

namespace {

using cdouble = std::complex<double>;

// Local scale for the divisor-residual test: the largest |theta| over a small
// deterministic probe set near the segment from 0 to z'.
double probe_scale(const PeriodMatrix& tau_p, const Eigen::VectorXcd& z_p,
                   double target_error) {
  const Characteristic c0 = Characteristic::zero(tau_p.g);
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(tau_p.g);
  const Eigen::VectorXcd half = 0.5 * z_p;
  const Eigen::VectorXcd off =
      0.25 * z_p + Eigen::VectorXcd::Constant(tau_p.g, cdouble(0.25, 0.0));
  double scale = 0.0;
  for (const Eigen::VectorXcd& z : {zero, half, off})
    scale = std::max(scale, std::abs(eval_theta(c0, z, tau_p, target_error).value));
  return scale;
}

struct DivisorJet {
  ThetaJet jet;
  double scale = 0.0;
};

DivisorJet divisor_jet(const PeriodMatrix& tau_p, const Eigen::VectorXcd& z_p,
                       const Tolerances& tol) {
  if (z_p.size() != tau_p.g)
    throw Error(ErrorKind::DimensionMismatch, "z length does not match genus");
  DivisorJet out;
  out.scale = probe_scale(tau_p, z_p, tol.target_error);
  out.jet = eval_theta_jet(Characteristic::zero(tau_p.g), z_p, tau_p,
                           tol.target_error_jet);
  const double resid = std::abs(out.jet.value);
  if (!(resid <= tol.tol_vanish * out.scale))
    throw Error(ErrorKind::NotOnDivisor,
                "point is not on the theta divisor (residual " +
                    std::to_string(resid) + ", scale " + std::to_string(out.scale) + ")");
  return out;
}

// Unit-norm gradient with the first coordinate of modulus > 1e-10 rotated to
// be real positive: a deterministic representative of the projective point.
Eigen::VectorXcd normalize_projective(Eigen::VectorXcd v) {
  v /= v.norm();
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (std::abs(v(j)) > 1e-10) {
      v *= std::conj(v(j)) / std::abs(v(j));
      break;
    }
  }
  return v;
}

double gradient_floor(const ThetaJet& jet, double scale) {
  return std::max(10.0 * jet.gradient_error, 1e-8 * (1.0 + scale));
}

// Orthonormal basis (Hermitian inner product) of the divisor tangent space
// {u : q^t u = 0} at a smooth point, via the full SVD of the row vector q^t.
Eigen::MatrixXcd tangent_basis(const Eigen::VectorXcd& q) {
  const Eigen::Index h = q.size();
  Eigen::MatrixXcd row(1, h);
  row.row(0) = q.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(row, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(h - 1);
}

// Projects `p` back onto {theta = 0} by a scalar complex Newton iteration
// along the fixed direction `d`, and returns the order-1 data at the landing
// point.  Throws StepTooLarge when the correction exceeds max_move or the
// residual refuses to drop to the divisor tolerance.
ThetaJet newton_project(const PeriodMatrix& tau_p, Eigen::VectorXcd p,
                        const Eigen::VectorXcd& d, double qn, double scale,
                        double max_move, const Tolerances& tol) {
  const Characteristic c0 = Characteristic::zero(tau_p.g);
  double moved = 0.0;
  for (int it = 0; it < 8; ++it) {
    ThetaJet jet = eval_theta_jet(c0, p, tau_p, tol.target_error_jet);
    const double resid_ok = 100.0 * jet.value_error + 1e-12 * (1.0 + scale);
    if (std::abs(jet.value) <= resid_ok) return jet;
    const cdouble fp = (jet.gradient.transpose() * d)(0);
    if (std::abs(fp) <= 1e-3 * qn)
      throw Error(ErrorKind::StepTooLarge,
                  "divisor projection lost the gradient direction");
    const cdouble w = -jet.value / fp;
    moved += std::abs(w);
    if (moved > max_move)
      throw Error(ErrorKind::StepTooLarge,
                  "probe needed a divisor correction larger than half the "
                  "finite-difference step; decrease fd_step");
    p += w * d;
  }
  throw Error(ErrorKind::StepTooLarge,
              "divisor projection did not converge at the probe point");
}

// Gauss map at an already-projected probe, in the affine chart that divides
// by coordinate j0 and drops it.
Eigen::VectorXcd chart_coords(const Eigen::VectorXcd& grad, Eigen::Index j0) {
  const Eigen::Index h = grad.size();
  Eigen::VectorXcd out(h - 1);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < h; ++j)
    if (j != j0) out(k++) = grad(j) / grad(j0);
  return out;
}

}  // namespace

BorderedGaussMatrix bordered_gauss(const PeriodMatrix& tau_p,
                                   const Eigen::VectorXcd& z_p,
                                   const Tolerances& tol) {
  const DivisorJet dj = divisor_jet(tau_p, z_p, tol);
  const int h = tau_p.g;

  BorderedGaussMatrix out;
  out.h = h;
  out.theta_value = dj.jet.value;
  out.theta_scale = dj.scale;
  out.matrix = Eigen::MatrixXcd::Zero(h + 1, h + 1);
  out.matrix.topLeftCorner(h, h) = dj.jet.hessian;
  out.matrix.topRightCorner(h, 1) = dj.jet.gradient;
  out.matrix.bottomLeftCorner(1, h) = dj.jet.gradient.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(out.matrix);
  out.singular_values = svd.singularValues();
  const double noise_floor =
      10.0 * (h + 1) *
      (std::max(dj.jet.hessian_error, dj.jet.gradient_error) +
       1e-13 * (1.0 + out.matrix.norm()));
  out.numerical_rank = (out.singular_values(0) <= noise_floor)
                           ? 0
                           : numerical_rank(out.singular_values, tol.tol_rank);
  return out;
}

bool boundary_stratum_check(const PeriodMatrix& tau_p, const Eigen::VectorXcd& z_p,
                            int h, const Tolerances& tol) {
  try {
    return bordered_gauss(tau_p, z_p, tol).numerical_rank <= h;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotOnDivisor) return false;  // residual failed
    throw;
  }
}

Eigen::VectorXcd gauss_map(const PeriodMatrix& tau_p, const Eigen::VectorXcd& z_p,
                           const Tolerances& tol) {
  const DivisorJet dj = divisor_jet(tau_p, z_p, tol);
  const double qn = dj.jet.gradient.norm();
  if (qn <= gradient_floor(dj.jet, dj.scale))
    throw Error(ErrorKind::BasePoint,
                "gradient vanishes: the point lies in the base locus of the "
                "Gauss map (singular divisor point)");
  return normalize_projective(dj.jet.gradient);
}

int gauss_diff_rank(const PeriodMatrix& tau_p, const Eigen::VectorXcd& z_p,
                    double fd_step, const Tolerances& tol) {
  if (!(fd_step > 0.0)) throw Error(ErrorKind::Config, "fd_step must be positive");
  const int h = tau_p.g;
  const DivisorJet dj = divisor_jet(tau_p, z_p, tol);
  const double qn = dj.jet.gradient.norm();
  if (qn <= gradient_floor(dj.jet, dj.scale))
    throw Error(ErrorKind::BasePoint,
                "gradient vanishes: the Gauss map is undefined at this point");
  if (h < 2) return 0;  // zero-dimensional divisor tangent space

  const Eigen::MatrixXcd basis = tangent_basis(dj.jet.gradient);
  const Eigen::VectorXcd dir = dj.jet.gradient.conjugate() / qn;

  Eigen::Index j0 = 0;
  dj.jet.gradient.cwiseAbs().maxCoeff(&j0);

  auto chart_at = [&](const Eigen::VectorXcd& p, double max_move) {
    const ThetaJet jet = newton_project(tau_p, p, dir, qn, dj.scale, max_move, tol);
    return chart_coords(jet.gradient, j0);
  };

  // Central differences at step s and 2s, Richardson-combined to O(s^4).
  auto jacobian = [&](double s) {
    Eigen::MatrixXcd J(h - 1, h - 1);
    for (int k = 0; k < h - 1; ++k) {
      const Eigen::VectorXcd t = basis.col(k);
      const Eigen::VectorXcd gp = chart_at(z_p + s * t, 0.5 * s);
      const Eigen::VectorXcd gm = chart_at(z_p - s * t, 0.5 * s);
      J.col(k) = (gp - gm) / (2.0 * s);
    }
    return J;
  };
  const Eigen::MatrixXcd J1 = jacobian(fd_step);
  const Eigen::MatrixXcd J2 = jacobian(2.0 * fd_step);
  const Eigen::MatrixXcd J = (4.0 * J1 - J2) / 3.0;

  // Chart-coordinate noise inherited from the certified gradient bounds:
  // |g_j0| >= ||g||/sqrt(h) at the max-modulus coordinate, so each chart
  // entry carries at most ~4 h * gradient_error / ||g|| of evaluation noise,
  // which the differencing divides by the step.
  const double chart_err = 4.0 * h * dj.jet.gradient_error / qn;
  const double noise_floor = 10.0 * (h - 1) * 1.67 * chart_err / fd_step;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
  const Eigen::VectorXd sigma = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k)
    if (sigma(k) >= std::max(tol.tol_rank * sigma(0), noise_floor)) ++rank;
  return rank;
}

Eigen::VectorXcd find_divisor_point(const PeriodMatrix& tau_p, std::uint64_t seed) {
  const int h = tau_p.g;
  const Characteristic c0 = Characteristic::zero(h);
  std::mt19937_64 rng(seed);
  auto u01 = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  // Invariant modulus |theta(z)| * exp(-pi Im(z)^t Y^-1 Im(z)): removes the
  // exponential growth along imaginary directions, so "small" means the same
  // thing everywhere on the scan line.
  const Eigen::MatrixXd Y = tau_p.entries.imag();
  const Eigen::LLT<Eigen::MatrixXd> llt(Y);
  auto invariant_mod = [&](const Eigen::VectorXcd& p, const cdouble& val) {
    const Eigen::VectorXd y = p.imag();
    return std::abs(val) * std::exp(-M_PI * y.dot(llt.solve(y)));
  };
  const double scale0 =
      std::abs(eval_theta(c0, Eigen::VectorXcd::Zero(h), tau_p, 1e-10).value);

  for (int attempt = 0; attempt < 20; ++attempt) {
    Eigen::VectorXcd base(h), dir(h);
    for (int i = 0; i < h; ++i) base(i) = cdouble(u01() - 0.5, u01() - 0.5);
    for (int i = 0; i < h; ++i) dir(i) = cdouble(u01() - 0.5, u01() - 0.5);
    dir /= dir.norm();

    // Coarse scan of the invariant modulus along the line, then a complex
    // Newton iteration along the gradient from the most promising minima.
    constexpr int kSamples = 81;
    std::vector<double> mod(kSamples);
    for (int s = 0; s < kSamples; ++s) {
      const Eigen::VectorXcd p = base + (0.05 * s) * dir;
      mod[static_cast<std::size_t>(s)] =
          invariant_mod(p, eval_theta(c0, p, tau_p, 1e-10).value);
    }
    std::vector<int> minima;
    for (int s = 1; s + 1 < kSamples; ++s)
      if (mod[static_cast<std::size_t>(s)] <= mod[static_cast<std::size_t>(s - 1)] &&
          mod[static_cast<std::size_t>(s)] <= mod[static_cast<std::size_t>(s + 1)])
        minima.push_back(s);
    std::sort(minima.begin(), minima.end(), [&](int a, int b) {
      return mod[static_cast<std::size_t>(a)] < mod[static_cast<std::size_t>(b)];
    });
    if (minima.size() > 3) minima.resize(3);

    for (int s0 : minima) {
      // Work on the argument-reduced representative: the divisor is lattice
      // periodic up to a nonzero factor, and moderate Im keeps the rounding
      // noise of the evaluation far below the residual threshold.
      Eigen::VectorXcd p =
          reduce_argument(c0, base + (0.05 * s0) * dir, tau_p).first;
      bool converged = false;
      for (int it = 0; it < 30; ++it) {
        const ThetaJet jet = eval_theta_jet(c0, p, tau_p, 1e-10);
        if (std::abs(jet.value) <= 1e-9 * scale0) {
          converged = true;
          break;
        }
        const double qn = jet.gradient.norm();
        if (qn < 1e-10) break;
        const Eigen::VectorXcd d = jet.gradient.conjugate() / qn;
        const cdouble w = -jet.value / qn;  // gradient^t d = ||gradient||
        if (std::abs(w) > 1.0) break;
        p = reduce_argument(c0, p + w * d, tau_p).first;
      }
      if (!converged) continue;
      const ThetaJet jet = eval_theta_jet(c0, p, tau_p, 1e-10);
      if (jet.gradient.norm() <= std::max(1e-6, 20.0 * jet.gradient_error)) continue;
      return p;
    }
  }
  throw Error(ErrorKind::NotOnDivisor,
              "no smooth divisor point found along the sampled lines; try a "
              "different seed");
}

}  // namespace thetanull
