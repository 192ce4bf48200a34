//
// Characteristic enumeration, parity, textual form, and the two-torsion
// embedding.  Count checks pin the even/odd split 2^(g-1)(2^g +/- 1); the
// odd-characteristic half-periods are verified to lie on the theta divisor
// within certified evaluation bounds.
//
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "oracles.hpp"
#include "thetanull/characteristics.hpp"
#include "thetanull/errors.hpp"
#include "thetanull/siegel.hpp"
#include "thetanull/theta_eval.hpp"

using namespace thetanull;

TEST_CASE("sign of a characteristic") {
  CHECK(sign(Characteristic::zero(5)) == 1);
  CHECK(sign(Characteristic::from_string("10010/10110")) == 1);
  CHECK(sign(Characteristic::from_string("1/1")) == -1);
  CHECK(Characteristic::from_string("10010/10110").is_even());
  CHECK_FALSE(Characteristic::from_string("1/1").is_even());
}

TEST_CASE("enumeration counts match 2^(g-1)(2^g +/- 1)") {
  for (int g = 1; g <= 5; ++g) {
    const auto even = enumerate_characteristics(g, ParityFilter::Even);
    const auto odd = enumerate_characteristics(g, ParityFilter::Odd);
    const auto all = enumerate_characteristics(g, ParityFilter::All);
    const long long pow_g = 1ll << g;
    const long long half = 1ll << (g - 1);
    CHECK(static_cast<long long>(even.size()) == half * (pow_g + 1));
    CHECK(static_cast<long long>(odd.size()) == half * (pow_g - 1));
    CHECK(static_cast<long long>(all.size()) == pow_g * pow_g);
    CHECK(even.size() + odd.size() == all.size());
  }
  CHECK(enumerate_characteristics(5, ParityFilter::Even).size() == 528);
  CHECK(enumerate_characteristics(5, ParityFilter::Odd).size() == 496);
  CHECK(enumerate_characteristics(4, ParityFilter::Odd).size() == 120);
}

TEST_CASE("genus 1 even characteristics are exactly the three classical ones") {
  const auto even = enumerate_characteristics(1, ParityFilter::Even);
  REQUIRE(even.size() == 3);
  CHECK(even[0].to_string() == "0/0");
  CHECK(even[1].to_string() == "0/1");
  CHECK(even[2].to_string() == "1/0");
}

TEST_CASE("enumeration is duplicate-free and lexicographic (epsilon major)") {
  for (int g : {2, 3, 5}) {
    const auto all = enumerate_characteristics(g, ParityFilter::All);
    std::set<std::string> seen;
    std::vector<std::string> keys;
    for (const auto& m : all) {
      seen.insert(m.to_string());
      keys.push_back(m.to_string());  // '/' < '0' so string order = (eps, del) order
    }
    CHECK(seen.size() == all.size());
    CHECK(std::is_sorted(keys.begin(), keys.end()));
  }
}

TEST_CASE("enumeration rejects out-of-range genus") {
  CHECK_THROWS_AS(enumerate_characteristics(0, ParityFilter::All), Error);
  try {
    enumerate_characteristics(9, ParityFilter::All);
    FAIL("expected GenusTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GenusTooLarge);
  }
}

TEST_CASE("textual round trip and parse errors") {
  for (const char* s : {"0/0", "10010/10110", "1/1", "01/11"}) {
    CHECK(Characteristic::from_string(s).to_string() == s);
  }
  CHECK_THROWS_AS(Characteristic::from_string("0101"), Error);
  CHECK_THROWS_AS(Characteristic::from_string("01/1"), Error);
  CHECK_THROWS_AS(Characteristic::from_string("/"), Error);
  CHECK_THROWS_AS(Characteristic::from_string("0a/01"), Error);
  try {
    Characteristic::from_string("000000000/000000000");  // genus 9
    FAIL("expected GenusTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GenusTooLarge);
  }
}

TEST_CASE("two-torsion points") {
  PeriodMatrix tau_i = validate_period_matrix(
      Eigen::MatrixXcd::Identity(1, 1) * std::complex<double>(0, 1));
  CHECK(two_torsion_point(Characteristic::zero(1), tau_i).norm() == 0.0);

  const auto z11 = two_torsion_point(Characteristic::from_string("1/1"), tau_i);
  CHECK(std::abs(z11(0) - std::complex<double>(0.5, 0.5)) < 1e-15);

  PeriodMatrix tau_i2 = validate_period_matrix(
      Eigen::MatrixXcd::Identity(2, 2) * std::complex<double>(0, 1));
  const auto z2 = two_torsion_point(Characteristic::from_string("10/01"), tau_i2);
  CHECK(std::abs(z2(0) - std::complex<double>(0, 0.5)) < 1e-15);
  CHECK(std::abs(z2(1) - std::complex<double>(0.5, 0)) < 1e-15);

  CHECK_THROWS_AS(two_torsion_point(Characteristic::zero(3), tau_i2), Error);
}

TEST_CASE("odd two-torsion points lie on the theta divisor") {
  // theta(z_m, tau) vanishes for odd m: evaluate the plain Riemann theta at
  // the half-period and compare against the certified bound.
  for (int g = 1; g <= 4; ++g) {
    const PeriodMatrix tau = random_siegel(g, 40 + static_cast<std::uint64_t>(g), 0.4);
    const Characteristic zero = Characteristic::zero(g);
    for (const auto& m : enumerate_characteristics(g, ParityFilter::Odd)) {
      const auto ev = eval_theta(zero, two_torsion_point(m, tau), tau, 1e-10);
      CHECK(std::abs(ev.value) <= ev.error_bound + 1e-10);
    }
  }
}
