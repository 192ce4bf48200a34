#include "thetanull/schottky.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <thread>

#include "thetanull/errors.hpp"

namespace thetanull {

namespace {

// Floor below which the whole vector of theta constants is considered
// degenerate rather than "vanishing": no reduced period matrix produces a
// maximal even constant anywhere near this small.
constexpr double kConstantFloor = 1e-8;

// Underflow guard for rank decisions on an (effectively) zero matrix.
constexpr double kRankFloor = 1e-300;

int worker_count() {
  if (const char* env = std::getenv("THETA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

double max_modulus(const std::vector<std::pair<Characteristic, ThetaEval>>& constants) {
  double scale = 0.0;
  for (const auto& [m, ev] : constants) scale = std::max(scale, std::abs(ev.value));
  return scale;
}

void check_vanishing_config(double tol_vanish, double target_error, double scale) {
  if (!(tol_vanish > 0.0)) throw Error(ErrorKind::Config, "tol_vanish must be positive");
  if (scale < kConstantFloor)
    throw Error(ErrorKind::AllConstantsTiny,
                "all even theta constants are below the degeneracy floor");
  if (!(tol_vanish > 2.0 * target_error / scale))
    throw Error(ErrorKind::Config,
                "tol_vanish is below the certified evaluation error; tighten "
                "target_error or loosen tol_vanish");
}

std::vector<Characteristic> select_vanishing(
    const std::vector<std::pair<Characteristic, ThetaEval>>& constants,
    double tol_vanish, double target_error) {
  const double scale = max_modulus(constants);
  check_vanishing_config(tol_vanish, target_error, scale);
  std::vector<Characteristic> out;
  for (const auto& [m, ev] : constants)
    if (std::abs(ev.value) < tol_vanish * scale) out.push_back(m);
  return out;
}

NullCandidate make_candidate(const PeriodMatrix& tau, const Characteristic& m,
                             const Tolerances& tol, double scale) {
  if (!m.is_even())
    throw Error(ErrorKind::Config, "null candidate requires an even characteristic");
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(tau.g);
  const ThetaJet jet = eval_theta_jet(m, zero, tau, tol.target_error_jet);

  NullCandidate cand;
  cand.m = m;
  cand.theta_value = jet.value;
  cand.theta_scale = scale;
  cand.hessian = jet.hessian;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jet.hessian);
  cand.singular_values = svd.singularValues();
  // A Hessian whose largest singular value sits below the certified jet error
  // (plus rounding headroom) is indistinguishable from zero: rank 0, not
  // "rank of the noise".  Above that floor the relative tol_rank gap decides.
  const double noise_floor =
      10.0 * tau.g *
      (jet.hessian_error + 1e-13 * (1.0 + cand.hessian.norm()));
  cand.numerical_rank = (cand.singular_values(0) <= noise_floor)
                            ? 0
                            : numerical_rank(cand.singular_values, tol.tol_rank);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(jet.hessian, false);
  Eigen::VectorXcd ev = es.eigenvalues();
  std::vector<int> order(static_cast<std::size_t>(ev.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double ma = std::abs(ev(a)), mb = std::abs(ev(b));
    if (ma != mb) return ma > mb;
    if (ev(a).real() != ev(b).real()) return ev(a).real() > ev(b).real();
    return ev(a).imag() > ev(b).imag();
  });
  cand.eigenvalues.resize(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) cand.eigenvalues(i) = ev(order[static_cast<std::size_t>(i)]);
  return cand;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::NOT_IN_THETA_NULL: return "NOT_IN_THETA_NULL";
    case Verdict::IN_THETA_NULL_RANK_LE_3: return "IN_THETA_NULL_RANK_LE_3";
    case Verdict::IN_THETA_NULL_RANK_GT_3: return "IN_THETA_NULL_RANK_GT_3";
  }
  return "?";
}

std::vector<std::pair<Characteristic, ThetaEval>> theta_constants_all(
    const PeriodMatrix& tau, double target_error) {
  const std::vector<Characteristic> evens =
      enumerate_characteristics(tau.g, ParityFilter::Even);
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(tau.g);

  std::vector<std::pair<Characteristic, ThetaEval>> out(evens.size());
  std::vector<std::exception_ptr> failures(evens.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= evens.size()) return;
      try {
        out[i] = {evens[i], eval_theta(evens[i], zero, tau, target_error)};
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const int nthreads =
      std::min<int>(worker_count(), static_cast<int>(evens.size()));
  if (nthreads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  // Report the failure of lowest enumeration index so the outcome does not
  // depend on thread scheduling.
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " (characteristic " +
                                evens[i].to_string() + ")");
    }
  }
  return out;
}

std::vector<Characteristic> vanishing_nulls(const PeriodMatrix& tau,
                                            double tol_vanish,
                                            double target_error) {
  return select_vanishing(theta_constants_all(tau, target_error), tol_vanish,
                          target_error);
}

int numerical_rank(const Eigen::VectorXd& sigma, double tol_rank) {
  if (sigma.size() == 0) return 0;
  const double s1 = sigma(0);
  if (!(s1 >= kRankFloor)) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k)
    if (sigma(k) >= tol_rank * s1) ++rank;
  return rank;
}

NullCandidate null_candidate(const PeriodMatrix& tau, const Characteristic& m,
                             const Tolerances& tol) {
  const double scale = max_modulus(theta_constants_all(tau, tol.target_error));
  return make_candidate(tau, m, tol, scale);
}

std::pair<std::optional<int>, SchottkyReport> stratum(const PeriodMatrix& tau,
                                                      const Tolerances& tol) {
  SchottkyReport report;
  report.g = tau.g;
  report.tolerances = tol;
  report.constants = theta_constants_all(tau, tol.target_error);
  report.scale = max_modulus(report.constants);
  const std::vector<Characteristic> vanishing =
      select_vanishing(report.constants, tol.tol_vanish, tol.target_error);
  for (const Characteristic& m : vanishing)
    report.candidates.push_back(make_candidate(tau, m, tol, report.scale));
  if (report.candidates.empty()) {
    report.min_stratum.reset();
    report.verdict = Verdict::NOT_IN_THETA_NULL;
  } else {
    int h = report.candidates.front().numerical_rank;
    for (const NullCandidate& c : report.candidates) h = std::min(h, c.numerical_rank);
    report.min_stratum = h;
    report.verdict = (h <= 3) ? Verdict::IN_THETA_NULL_RANK_LE_3
                              : Verdict::IN_THETA_NULL_RANK_GT_3;
  }
  return {report.min_stratum, report};
}

SchottkyReport genus5_verdict(const PeriodMatrix& tau, const Tolerances& tol) {
  if (tau.g != 5)
    throw Error(ErrorKind::WrongGenus, "the weak Schottky verdict is defined for genus 5");
  return stratum(tau, tol).second;
}

}  // namespace thetanull
