#include "thetanull/theta_eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "thetanull/errors.hpp"

namespace thetanull {

namespace {

constexpr double kPi = std::numbers::pi;
using cdouble = std::complex<double>;

// ---------------------------------------------------------------------------
// Lattice geometry of Im(tau): Y = U^t U with U upper triangular, so that
// ||U v||^2 = v^t Y v; rho = sqrt(lambda_min(Y)) is a lower bound for the
// minimal distance of the lattice U Z^g, which drives the ball-packing tail
// bound.
// ---------------------------------------------------------------------------
struct Geometry {
  int g = 0;
  Eigen::MatrixXd Y, U, Yinv;
  double rho = 0.0;
};

Geometry make_geometry(const PeriodMatrix& tau) {
  Geometry geom;
  geom.g = tau.g;
  geom.Y = tau.entries.imag();
  Eigen::LLT<Eigen::MatrixXd> llt(geom.Y);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::NotPositiveDefinite, "Im(tau) is not positive definite");
  geom.U = llt.matrixL().transpose();
  geom.Yinv = llt.solve(Eigen::MatrixXd::Identity(geom.g, geom.g));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(geom.Y);
  geom.rho = std::sqrt(es.eigenvalues().minCoeff());
  return geom;
}

// ---------------------------------------------------------------------------
// Ellipsoid enumeration: visits every n in Z^g with ||U(n + t)|| <= R in a
// fixed depth-first order (coordinates chosen from the last to the first,
// each ascending).  The callback receives n and r^2; returning false aborts.
// ---------------------------------------------------------------------------
template <typename F>
bool enumerate_ellipsoid(const Eigen::MatrixXd& U, const Eigen::VectorXd& t,
                         double R, F&& visit) {
  const int g = static_cast<int>(U.rows());
  std::vector<std::int64_t> n(static_cast<std::size_t>(g), 0);
  const double R2 = R * R;

  // Recursive descent, innermost coordinate i = 0.
  auto rec = [&](auto&& self, int i, double partial) -> bool {
    // carry c_i = sum_{j > i} U(i, j) (n_j + t_j)
    double carry = 0.0;
    for (int j = i + 1; j < g; ++j)
      carry += U(i, j) * (static_cast<double>(n[static_cast<std::size_t>(j)]) + t(j));
    const double rem = R2 - partial;
    if (rem < 0.0) return true;
    const double srem = std::sqrt(rem);
    const double uii = U(i, i);
    // |uii (n_i + t_i) + carry| <= srem, expanded slightly so boundary points
    // are never lost to roundoff (extra points only improve the partial sum).
    const double lo = (-srem - carry) / uii - t(i) - 1e-12;
    const double hi = (srem - carry) / uii - t(i) + 1e-12;
    for (double nd = std::ceil(lo); nd <= std::floor(hi); nd += 1.0) {
      n[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(nd);
      const double comp = uii * (nd + t(i)) + carry;
      const double now = partial + comp * comp;
      if (now > R2 * (1.0 + 1e-12) + 1e-12) continue;
      if (i == 0) {
        if (!visit(n, now)) return false;
      } else {
        if (!self(self, i - 1, now)) return false;
      }
    }
    return true;
  };
  return rec(rec, g - 1, 0.0);
}

// ---------------------------------------------------------------------------
// Upper incomplete gamma for a = (j+1)/2, j >= 0, via
//   Gamma(1/2, x) = sqrt(pi) erfc(sqrt(x)),  Gamma(1, x) = exp(-x),
//   Gamma(a+1, x) = a Gamma(a, x) + x^a exp(-x).
// ---------------------------------------------------------------------------
double upper_gamma_halfstep(int j, double x) {
  double a, G;
  if (j % 2 == 0) {
    a = 0.5;
    G = std::sqrt(kPi) * std::erfc(std::sqrt(x));
  } else {
    a = 1.0;
    G = std::exp(-x);
  }
  const double target_a = 0.5 * (j + 1);
  while (a + 0.5 < target_a + 0.25) {
    G = a * G + std::pow(x, a) * std::exp(-x);
    a += 1.0;
  }
  return G;
}

std::vector<double> poly_mul(const std::vector<double>& p, const std::vector<double>& q) {
  std::vector<double> r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

// (x + c)^k expanded in x.
std::vector<double> binomial_shift(double c, int k) {
  std::vector<double> out(static_cast<std::size_t>(k) + 1, 0.0);
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    out[static_cast<std::size_t>(j)] = binom * std::pow(c, k - j);
    binom = binom * (k - j) / (j + 1.0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ball-packing bound for the order-k tail beyond radius R:
//
//   sum_{||U(n+t)|| > R} (2 pi ||n + eps/2||)^k exp(-pi ||U(n+t)||^2)
//     <= g (2/rho)^g * Integral,
//
// uniformly in the fractional translate t.  Around each lattice point sits a
// disjoint ball of radius rho/2; bounding the summand by its ball average and
// the balls by the shell {||x|| > R - rho/2} turns the sum into the radial
// integral of (2 pi (sigma (s + rho/2) + c_w))^k E(s) s^(g-1), with
// sigma = 1/rho (from ||n + eps/2|| <= ||U(n+t)||/rho + ||w||), c_w = ||w||,
// and E(s) = exp(-pi ((s - rho/2)_+)^2).  The s >= rho/2 part becomes
// incomplete-gamma terms; the flat part below rho/2 (present only when
// R < rho) is a plain polynomial integral.
// ---------------------------------------------------------------------------
double packing_tail(const Geometry& geom, double c_w, double R, int k) {
  const int g = geom.g;
  const double rho = geom.rho;
  const double sigma = 1.0 / rho;
  const double pref = g * std::pow(2.0 / rho, g);
  const double twoPi = 2.0 * kPi;

  // Gaussian part: u = s - rho/2 from u0 = max(0, R - rho).
  const double u0 = std::max(0.0, R - rho);
  std::vector<double> Q = binomial_shift(rho / 2.0, g - 1);  // (u + rho/2)^(g-1)
  if (k > 0) {
    // (2 pi (sigma (u + rho) + c_w))^k = (A u + B)^k
    const double A = twoPi * sigma;
    const double B = twoPi * (sigma * rho + c_w);
    std::vector<double> base(static_cast<std::size_t>(k) + 1, 0.0);
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      base[static_cast<std::size_t>(j)] =
          binom * std::pow(A, j) * std::pow(B, k - j);
      binom = binom * (k - j) / (j + 1.0);
    }
    Q = poly_mul(Q, base);
  }
  double total = 0.0;
  for (std::size_t j = 0; j < Q.size(); ++j) {
    const double I =
        upper_gamma_halfstep(static_cast<int>(j), kPi * u0 * u0) /
        (2.0 * std::pow(kPi, 0.5 * (static_cast<double>(j) + 1.0)));
    total += Q[j] * I;
  }

  // Flat part: s in [max(0, R - rho/2), rho/2), with E(s) = 1.
  const double L0 = std::max(0.0, R - rho / 2.0);
  if (L0 < rho / 2.0) {
    const double A = twoPi * sigma;
    const double B1 = twoPi * (sigma * rho / 2.0 + c_w);
    std::vector<double> P(1, 1.0);
    if (k > 0) {
      std::vector<double> base(static_cast<std::size_t>(k) + 1, 0.0);
      double binom = 1.0;
      for (int j = 0; j <= k; ++j) {
        base[static_cast<std::size_t>(j)] =
            binom * std::pow(A, j) * std::pow(B1, k - j);
        binom = binom * (k - j) / (j + 1.0);
      }
      P = base;
    }
    const double top = rho / 2.0;
    for (std::size_t j = 0; j < P.size(); ++j) {
      const int mpow = static_cast<int>(j) + g - 1;
      total += P[j] *
               (std::pow(top, mpow + 1) - std::pow(L0, mpow + 1)) /
               (mpow + 1.0);
    }
  }
  return pref * total;
}

// ---------------------------------------------------------------------------
// Two-stage truncation plan.  Stage A grows an outer radius until the packing
// bound alone is below 5% of each order's target; stage B enumerates the
// outer ellipsoid exactly and moves the cut inward over the enumerated shells
// so the certified tail (enumerated shell sums + packing remainder) still
// meets every target.  The exact stage is what makes the radius shrink when
// Im(tau) grows.
// ---------------------------------------------------------------------------
struct Plan {
  double R = 0.0;                 // cut radius
  std::array<double, 3> tail{};   // certified per-order tail bounds beyond R
};

Plan plan_truncation(const Geometry& geom, const Eigen::VectorXd& t,
                     const Eigen::VectorXd& w, int kmax,
                     const std::array<double, 3>& targets) {
  const double c_w = w.norm();
  std::array<double, 3> pack{};
  double R_out = 1.0;
  for (;;) {
    bool ok = true;
    for (int k = 0; k <= kmax; ++k) {
      pack[static_cast<std::size_t>(k)] = packing_tail(geom, c_w, R_out, k);
      if (!(pack[static_cast<std::size_t>(k)] <=
            0.05 * targets[static_cast<std::size_t>(k)]))
        ok = false;
    }
    if (ok) break;
    R_out += 0.25;
    if (R_out > kRadiusCap)
      throw Error(ErrorKind::NonConvergent,
                  "truncation radius exceeds the cap of 40; tau is too close to "
                  "the boundary for the configured precision");
  }

  struct Pt {
    double r2, pn2;
  };
  std::vector<Pt> pts;
  std::int64_t count = 0;
  const int g = geom.g;
  auto collect = [&](const std::vector<std::int64_t>& n, double r2) {
    if (++count > kTermCap) return false;
    double pn2 = 0.0;
    for (int i = 0; i < g; ++i) {
      // n + eps/2 = n + t - w is the index entering the derivative factors
      const double v =
          static_cast<double>(n[static_cast<std::size_t>(i)]) + t(i) - w(i);
      pn2 += v * v;
    }
    pts.push_back({r2, pn2});
    return true;
  };
  if (!enumerate_ellipsoid(geom.U, t, R_out, collect))
    throw Error(ErrorKind::NonConvergent,
                "lattice enumeration exceeds the term cap; tau is too close to "
                "the boundary for the configured precision");
  // Outer radius below the nearest lattice point (very loose targets): widen
  // until at least one term exists so terms_used >= 1.
  while (pts.empty()) {
    R_out += 1.0;
    if (R_out > kRadiusCap)
      throw Error(ErrorKind::NonConvergent, "no lattice point within the radius cap");
    enumerate_ellipsoid(geom.U, t, R_out, collect);
  }

  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.r2 < b.r2; });
  const std::size_t N = pts.size();
  // suffix[k][i] = sum over points strictly after i of (2 pi ||p||)^k e^(-pi r^2)
  std::array<std::vector<double>, 3> suffix;
  for (int k = 0; k <= kmax; ++k)
    suffix[static_cast<std::size_t>(k)].assign(N + 1, 0.0);
  for (std::size_t i = N; i-- > 0;) {
    const double w0 = std::exp(-kPi * pts[i].r2);
    const double pn = std::sqrt(pts[i].pn2);
    for (int k = 0; k <= kmax; ++k) {
      const double fac = std::pow(2.0 * kPi * pn, k);
      suffix[static_cast<std::size_t>(k)][i] =
          suffix[static_cast<std::size_t>(k)][i + 1] + fac * w0;
    }
  }
  std::size_t idx = 0;
  for (; idx < N; ++idx) {
    bool ok = true;
    for (int k = 0; k <= kmax; ++k)
      if (!(suffix[static_cast<std::size_t>(k)][idx + 1] +
                pack[static_cast<std::size_t>(k)] <=
            targets[static_cast<std::size_t>(k)]))
        ok = false;
    if (ok) break;
  }
  if (idx == N) idx = N - 1;
  while (idx + 1 < N && pts[idx + 1].r2 <= pts[idx].r2 * (1.0 + 1e-12)) ++idx;

  Plan plan;
  plan.R = std::sqrt(pts[idx].r2);
  for (int k = 0; k <= kmax; ++k)
    plan.tail[static_cast<std::size_t>(k)] =
        suffix[static_cast<std::size_t>(k)][idx + 1] + pack[static_cast<std::size_t>(k)];
  return plan;
}

// ---------------------------------------------------------------------------
// Argument reduction bookkeeping.
// ---------------------------------------------------------------------------
struct Reduction {
  Eigen::VectorXcd z_red;
  cdouble cocycle{1.0, 0.0};
  Eigen::VectorXi a, b;
  bool trivial = true;
};

double round_half_away(double x) {
  return (x >= 0.0) ? std::floor(x + 0.5) : std::ceil(x - 0.5);
}

Reduction reduce(const Characteristic& m, const Eigen::VectorXcd& z,
                 const PeriodMatrix& tau, const Geometry& geom) {
  const int g = tau.g;
  Reduction red;
  red.a = Eigen::VectorXi::Zero(g);
  red.b = Eigen::VectorXi::Zero(g);
  Eigen::VectorXd beta = geom.Yinv * z.imag();
  for (int i = 0; i < g; ++i) red.b(i) = static_cast<int>(round_half_away(beta(i)));
  Eigen::VectorXcd taub =
      tau.entries * red.b.cast<double>().cast<cdouble>();
  Eigen::VectorXd rea = (z - taub).real();
  for (int i = 0; i < g; ++i) red.a(i) = static_cast<int>(round_half_away(rea(i)));
  red.z_red = z - red.a.cast<double>().cast<cdouble>() - taub;
  red.trivial = (red.a.isZero() && red.b.isZero());
  if (red.trivial) {
    red.z_red = z;
    red.cocycle = cdouble(1.0, 0.0);
    return red;
  }
  // exp(pi i (eps^t a - del^t b)) is exactly +/-1; compute the parity in
  // integer arithmetic.
  long par = 0;
  for (int i = 0; i < g; ++i) {
    par += static_cast<long>(m.epsilon[static_cast<std::size_t>(i)]) * red.a(i);
    par -= static_cast<long>(m.delta[static_cast<std::size_t>(i)]) * red.b(i);
  }
  const double sign = (((par % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
  const Eigen::VectorXcd bc = red.b.cast<double>().cast<cdouble>();
  const cdouble btaub = (bc.transpose() * (tau.entries * bc))(0);
  const cdouble btz = (bc.transpose() * red.z_red)(0);
  const cdouble expo = cdouble(0, -kPi) * btaub + cdouble(0, -2.0 * kPi) * btz;
  red.cocycle = sign * std::exp(expo);
  return red;
}

// ---------------------------------------------------------------------------
// Shared summation pass over the planned ellipsoid: value, gradient and the
// upper Hessian triangle in one sweep (the Hessian is mirrored afterwards, so
// it is exactly symmetric).
// ---------------------------------------------------------------------------
struct Core {
  cdouble value{0.0, 0.0};
  Eigen::VectorXcd grad;
  Eigen::MatrixXcd hess;
  std::array<double, 3> bound{};
  std::int64_t terms = 0;
  double radius = 0.0;
};

Core eval_reduced(const Characteristic& m, const Eigen::VectorXcd& z_red,
                  const PeriodMatrix& tau, const Geometry& geom, int kmax,
                  const std::array<double, 3>& targets) {
  const int g = tau.g;
  Eigen::VectorXd eps_half(g), del_half(g);
  for (int i = 0; i < g; ++i) {
    eps_half(i) = 0.5 * m.epsilon[static_cast<std::size_t>(i)];
    del_half(i) = 0.5 * m.delta[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd y = z_red.imag();
  const Eigen::VectorXd w = geom.Yinv * y;
  const double prefactor = std::exp(kPi * y.dot(w));
  const Eigen::VectorXd t = eps_half + w;

  std::array<double, 3> inner = targets;
  for (auto& v : inner) v /= prefactor;
  Plan plan = plan_truncation(geom, t, w, kmax, inner);

  Core core;
  core.grad = Eigen::VectorXcd::Zero(g);
  core.hess = Eigen::MatrixXcd::Zero(g, g);
  const Eigen::VectorXcd zshift = z_red + del_half.cast<cdouble>();
  const double Rsum = plan.R * (1.0 + 1e-12) + 1e-12;
  Eigen::VectorXd p(g);
  enumerate_ellipsoid(
      geom.U, t, Rsum, [&](const std::vector<std::int64_t>& n, double) {
        for (int i = 0; i < g; ++i)
          p(i) = static_cast<double>(n[static_cast<std::size_t>(i)]) + eps_half(i);
        const Eigen::VectorXcd pc = p.cast<cdouble>();
        const cdouble quad = (pc.transpose() * (tau.entries * pc))(0);
        const cdouble lin = (pc.transpose() * zshift)(0);
        const cdouble term =
            std::exp(cdouble(0, kPi) * quad + cdouble(0, 2.0 * kPi) * lin);
        core.value += term;
        if (kmax >= 1) {
          for (int j = 0; j < g; ++j)
            core.grad(j) += cdouble(0, 2.0 * kPi) * p(j) * term;
        }
        if (kmax >= 2) {
          const double f = -4.0 * kPi * kPi;  // (2 pi i)^2
          for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j)
              core.hess(i, j) += f * p(i) * p(j) * term;
        }
        ++core.terms;
        return true;
      });
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < i; ++j) core.hess(i, j) = core.hess(j, i);
  core.radius = plan.R;
  for (int k = 0; k <= kmax; ++k)
    core.bound[static_cast<std::size_t>(k)] =
        prefactor * plan.tail[static_cast<std::size_t>(k)];
  return core;
}

void check_dims(const Characteristic& m, const Eigen::VectorXcd& z,
                const PeriodMatrix& tau) {
  if (m.g != tau.g)
    throw Error(ErrorKind::DimensionMismatch,
                "characteristic genus does not match period matrix");
  if (z.size() != tau.g)
    throw Error(ErrorKind::DimensionMismatch, "z length does not match genus");
}

}  // namespace

double truncation_radius(const PeriodMatrix& tau, const Eigen::VectorXcd& z,
                         double target_error, int order) {
  if (!(target_error > 0.0)) throw Error(ErrorKind::Config, "target_error must be positive");
  if (order < 0 || order > 2) throw Error(ErrorKind::Config, "order must be 0, 1 or 2");
  if (z.size() != tau.g)
    throw Error(ErrorKind::DimensionMismatch, "z length does not match genus");
  const Geometry geom = make_geometry(tau);
  const Eigen::VectorXd w = geom.Yinv * z.imag();
  std::array<double, 3> targets{target_error, target_error, target_error};
  Plan plan = plan_truncation(geom, w, w, order, targets);
  return plan.R;
}

std::pair<Eigen::VectorXcd, std::complex<double>> reduce_argument(
    const Characteristic& m, const Eigen::VectorXcd& z, const PeriodMatrix& tau) {
  check_dims(m, z, tau);
  const Geometry geom = make_geometry(tau);
  Reduction red = reduce(m, z, tau, geom);
  return {red.z_red, red.cocycle};
}

ThetaEval eval_theta(const Characteristic& m, const Eigen::VectorXcd& z,
                     const PeriodMatrix& tau, double target_error) {
  check_dims(m, z, tau);
  if (!(target_error > 0.0)) throw Error(ErrorKind::Config, "target_error must be positive");
  const Geometry geom = make_geometry(tau);
  const Reduction red = reduce(m, z, tau, geom);
  const double cmag = std::abs(red.cocycle);
  std::array<double, 3> targets{target_error / cmag, 0, 0};
  Core core = eval_reduced(m, red.z_red, tau, geom, 0, targets);
  ThetaEval out;
  out.value = red.cocycle * core.value;
  out.error_bound = cmag * core.bound[0];
  out.terms_used = core.terms;
  out.radius = core.radius;
  return out;
}

ThetaJet eval_theta_jet(const Characteristic& m, const Eigen::VectorXcd& z,
                        const PeriodMatrix& tau, double target_error) {
  check_dims(m, z, tau);
  if (!(target_error > 0.0)) throw Error(ErrorKind::Config, "target_error must be positive");
  const int g = tau.g;
  const Geometry geom = make_geometry(tau);
  const Reduction red = reduce(m, z, tau, geom);
  const double cmag = std::abs(red.cocycle);
  const double f = 2.0 * kPi * static_cast<double>(
                                   red.b.cwiseAbs().maxCoeff());
  // Inner targets shrunk so that after the chain-rule recombination below
  // every order still meets target_error: the combined order-2 bound is
  // |C| (e2 + 2 f e1 + f^2 e0) <= |C| (1+f)^2 max_k e_k.
  const double shrink = cmag * (1.0 + f) * (1.0 + f);
  std::array<double, 3> targets;
  targets.fill(target_error / shrink);
  Core core = eval_reduced(m, red.z_red, tau, geom, 2, targets);

  ThetaJet out;
  out.value = red.cocycle * core.value;
  out.gradient.resize(g);
  out.hessian.resize(g, g);
  const cdouble shift = cdouble(0, -2.0 * kPi);  // -2 pi i b_j chain terms
  const Eigen::VectorXd bd = red.b.cast<double>();
  for (int j = 0; j < g; ++j)
    out.gradient(j) = red.cocycle * (core.grad(j) + shift * bd(j) * core.value);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      out.hessian(i, j) =
          red.cocycle * (core.hess(i, j) + shift * bd(i) * core.grad(j) +
                         shift * bd(j) * core.grad(i) +
                         shift * shift * bd(i) * bd(j) * core.value);
  // enforce exact symmetry of the recombined matrix
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < i; ++j) out.hessian(i, j) = out.hessian(j, i);
  out.value_error = cmag * core.bound[0];
  out.gradient_error = cmag * (core.bound[1] + f * core.bound[0]);
  out.hessian_error =
      cmag * (core.bound[2] + 2.0 * f * core.bound[1] + f * f * core.bound[0]);
  out.terms_used = core.terms;
  out.radius = core.radius;
  return out;
}

}  // namespace thetanull
