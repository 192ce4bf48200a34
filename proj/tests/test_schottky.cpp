//
// Stratum machinery: theta constants over all even characteristics, the
// vanishing-null scan, Hessian numerical ranks, and the genus-5 verdict.
// The decomposable point tau = i * I_g is the main oracle here - every claim
// about its vanishing set and candidate ranks follows from the genus-1
// factorization (see oracles.hpp).  The paper-example fixture pins the
// nontrivial rank-3 case.
//
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "oracles.hpp"
#include "thetanull/characteristics.hpp"
#include "thetanull/errors.hpp"
#include "thetanull/schottky.hpp"
#include "thetanull/siegel.hpp"

using namespace thetanull;
using Complex = std::complex<double>;

namespace {

PeriodMatrix identity_tau(int g, double y = 1.0) {
  return validate_period_matrix(Eigen::MatrixXcd::Identity(g, g) * Complex(0, y));
}

}  // namespace

TEST_CASE("numerical rank from singular values") {
  Eigen::VectorXd s3(3);
  s3 << 1.0, 1e-9, 0.0;
  CHECK(numerical_rank(s3, 1e-6) == 1);
  CHECK(numerical_rank(Eigen::VectorXd::Zero(4), 1e-3) == 0);
  CHECK(numerical_rank(Eigen::VectorXd(), 1e-3) == 0);
  Eigen::VectorXd edge(2);
  edge << 1.0, 1e-3;  // sigma_k >= tol * sigma_1 counts the boundary
  CHECK(numerical_rank(edge, 1e-3) == 2);
}

TEST_CASE("verdict names") {
  CHECK(std::string(to_string(Verdict::NOT_IN_THETA_NULL)) == "NOT_IN_THETA_NULL");
  CHECK(std::string(to_string(Verdict::IN_THETA_NULL_RANK_LE_3)) ==
        "IN_THETA_NULL_RANK_LE_3");
  CHECK(std::string(to_string(Verdict::IN_THETA_NULL_RANK_GT_3)) ==
        "IN_THETA_NULL_RANK_GT_3");
}

TEST_CASE("genus 1 constants match the box oracle and are positive reals") {
  const PeriodMatrix tau = identity_tau(1);
  const auto constants = theta_constants_all(tau, 1e-12);
  REQUIRE(constants.size() == 3);
  for (const auto& [m, ev] : constants) {
    const Complex ref = oracles::box_theta(m, Eigen::VectorXcd::Zero(1), tau, 30);
    CHECK(std::abs(ev.value - ref) <= ev.error_bound + 1e-13);
    CHECK(ev.value.real() > 0.0);
    CHECK(std::abs(ev.value.imag()) < 1e-13);
  }
}

TEST_CASE("paper-example fixture: one vanishing null of rank 3") {
  const PeriodMatrix tau = oracles::fixture("tau_star.json");
  const SchottkyReport report = genus5_verdict(tau);

  CHECK(report.g == 5);
  CHECK(report.constants.size() == 528);
  CHECK(report.scale > 0.1);

  REQUIRE(report.candidates.size() == 1);
  const NullCandidate& cand = report.candidates.front();
  CHECK(cand.m.to_string() == "10010/10110");
  CHECK(std::abs(cand.theta_value) / report.scale < 1e-4);
  CHECK(cand.hessian == cand.hessian.transpose().eval());

  REQUIRE(cand.singular_values.size() == 5);
  CHECK(cand.numerical_rank == 3);
  CHECK(cand.singular_values(3) / cand.singular_values(0) < 1e-3);
  REQUIRE(report.min_stratum.has_value());
  CHECK(*report.min_stratum == 3);
  CHECK(report.verdict == Verdict::IN_THETA_NULL_RANK_LE_3);

  // the same rank from the eigenvalue-modulus gap
  int ev_rank = 0;
  for (Eigen::Index k = 0; k < cand.eigenvalues.size(); ++k)
    if (std::abs(cand.eigenvalues(k)) >= 1e-3 * std::abs(cand.eigenvalues(0)))
      ++ev_rank;
  CHECK(ev_rank == 3);
  // ... and eigenvalues arrive sorted by descending modulus
  for (Eigen::Index k = 1; k < cand.eigenvalues.size(); ++k)
    CHECK(std::abs(cand.eigenvalues(k)) <= std::abs(cand.eigenvalues(k - 1)) + 1e-12);

  // congruence invariance: rank of G^t H G for well-conditioned G
  std::mt19937_64 rng(4242);
  auto entry = [&rng]() {
    return 0.6 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 0.3;
  };
  int checked = 0;
  while (checked < 20) {
    Eigen::MatrixXd G = Eigen::MatrixXd::Identity(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) G(i, j) += entry();
    Eigen::JacobiSVD<Eigen::MatrixXd> gsvd(G);
    const double cond =
        gsvd.singularValues()(0) / gsvd.singularValues()(4);
    if (!(cond < 10.0)) continue;
    const Eigen::MatrixXcd H2 =
        G.cast<Complex>().transpose() * cand.hessian * G.cast<Complex>();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(H2);
    CHECK(numerical_rank(svd.singularValues(), 1e-3) == 3);
    ++checked;
  }

  // numerical_rank is monotone in tol_rank on the candidate spectrum, hence
  // so is the stratum (candidate selection depends only on tol_vanish)
  int prev = 6;
  for (double tol : {1e-7, 1e-5, 1e-3, 1e-1, 0.25, 0.5}) {
    const int r = numerical_rank(cand.singular_values, tol);
    CHECK(r <= prev);
    prev = r;
  }
}

TEST_CASE("stratum honors a looser rank tolerance (monotone h)") {
  const PeriodMatrix tau = oracles::fixture("tau_star.json");
  Tolerances tol;
  tol.tol_rank = 0.3;  // sigma_2/sigma_1 ~ 0.363, sigma_3/sigma_1 ~ 0.201
  const auto [h, report] = stratum(tau, tol);
  REQUIRE(h.has_value());
  CHECK(*h == 2);
  CHECK(report.verdict == Verdict::IN_THETA_NULL_RANK_LE_3);
}

TEST_CASE("decomposable point i*I_5: vanishing set and ranks from factorization") {
  const PeriodMatrix tau = identity_tau(5);
  const auto [h, report] = stratum(tau, {});

  // predicted vanishing set: even m with at least one (eps_i, del_i) = (1, 1)
  std::set<std::string> predicted;
  for (const auto& m : enumerate_characteristics(5, ParityFilter::Even))
    if (oracles::odd_pair_count(m) >= 1) predicted.insert(m.to_string());
  CHECK(predicted.size() == 285);

  std::set<std::string> found;
  for (const auto& cand : report.candidates) found.insert(cand.m.to_string());
  CHECK(found == predicted);

  // the constant for a characteristic with a genus-1 odd factor is certified zero
  for (const auto& [m, ev] : report.constants)
    if (m.to_string() == "11000/11000")
      CHECK(std::abs(ev.value) <= ev.error_bound + 1e-12);

  // candidate ranks follow the product rule: 2 for exactly two odd pairs,
  // 0 for four or more
  for (const auto& cand : report.candidates)
    CHECK(cand.numerical_rank == oracles::predicted_identity_rank(cand.m));

  REQUIRE(h.has_value());
  CHECK(*h == 0);
  CHECK(report.verdict == Verdict::IN_THETA_NULL_RANK_LE_3);
}

TEST_CASE("rank-2 candidate at i*I_5 has the predicted Hessian support") {
  const PeriodMatrix tau = identity_tau(5);
  const NullCandidate cand =
      null_candidate(tau, Characteristic::from_string("11000/11000"));
  CHECK(cand.numerical_rank == 2);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const double a = std::abs(cand.hessian(i, j));
      if ((i == 0 && j == 1) || (i == 1 && j == 0)) {
        CHECK(a > 0.1);
      } else {
        CHECK(a < 1e-6);
      }
    }
}

TEST_CASE("generic tau has no vanishing nulls") {
  const PeriodMatrix tau = oracles::fixture("random_seed2.json");
  const auto [h, report] = stratum(tau, {});
  CHECK_FALSE(h.has_value());
  CHECK(report.candidates.empty());
  CHECK(report.verdict == Verdict::NOT_IN_THETA_NULL);
  CHECK(genus5_verdict(tau).verdict == Verdict::NOT_IN_THETA_NULL);
}

TEST_CASE("constants are identical across worker-thread counts") {
  const PeriodMatrix tau = random_siegel(3, 909, 0.5);
  setenv("THETA_THREADS", "1", 1);
  const auto serial = theta_constants_all(tau, 1e-10);
  setenv("THETA_THREADS", "3", 1);
  const auto parallel = theta_constants_all(tau, 1e-10);
  unsetenv("THETA_THREADS");
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].first == parallel[i].first);
    CHECK(serial[i].second.value == parallel[i].second.value);
    CHECK(serial[i].second.error_bound == parallel[i].second.error_bound);
    CHECK(serial[i].second.terms_used == parallel[i].second.terms_used);
  }
}

TEST_CASE("configuration errors") {
  const PeriodMatrix tau = identity_tau(1);
  CHECK_THROWS_AS(vanishing_nulls(tau, 0.0), Error);
  try {
    // tol_vanish below the certified-error floor 2 * target / scale
    vanishing_nulls(tau, 1e-12, 1e-10);
    FAIL("expected Config");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
  // candidates must be even
  try {
    null_candidate(tau, Characteristic::from_string("1/1"));
    FAIL("expected Config");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
}

TEST_CASE("the genus-5 verdict refuses other genera") {
  try {
    genus5_verdict(random_siegel(2, 5, 0.5));
    FAIL("expected WrongGenus");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WrongGenus);
  }
}

TEST_CASE("non-convergent evaluation names the offending characteristic") {
  // Im(tau) = 1e-8 I: the certified radius needs ~10^4 lattice points per
  // dimension, far over the term cap, for every characteristic; the reported
  // failure must be the lowest enumeration index regardless of scheduling.
  const PeriodMatrix thin = identity_tau(2, 1e-8);
  try {
    theta_constants_all(thin, 1e-10);
    FAIL("expected NonConvergent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonConvergent);
    const std::string what = e.what();
    CHECK(what.find("characteristic 00/00") != std::string::npos);
  }
}
