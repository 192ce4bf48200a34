#pragma once
//
// Theta characteristics.  A characteristic is a pair m = [epsilon, delta] of
// vectors in {0,1}^g.  Its sign is e(m) = (-1)^(epsilon^t delta); m is called
// even when e(m) = +1 and odd otherwise.  Of the 4^g characteristics in genus
// g, exactly 2^(g-1)(2^g + 1) are even and 2^(g-1)(2^g - 1) are odd.  The map
// m |-> (tau*epsilon + delta)/2 identifies characteristics with the
// two-torsion points of the torus C^g / (Z^g + tau Z^g).
//
// Textual form used by the CLI and JSON reports: two rows of g bits separated
// by a slash, epsilon first, bit index running left to right, e.g.
// "10010/10110".
//
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace thetanull {

struct PeriodMatrix;  // defined in siegel.hpp

struct Characteristic {
  int g = 0;
  std::vector<std::uint8_t> epsilon;  // entries 0/1
  std::vector<std::uint8_t> delta;    // entries 0/1

  static Characteristic zero(int g);
  // Parses "bits/bits"; both rows must have equal length and only 0/1.
  static Characteristic from_string(std::string_view text);

  std::string to_string() const;
  bool is_even() const;

  bool operator==(const Characteristic& o) const {
    return g == o.g && epsilon == o.epsilon && delta == o.delta;
  }
};

// e(m) = (-1)^(epsilon^t delta), returns +1 or -1.
int sign(const Characteristic& m);

enum class ParityFilter { All, Even, Odd };

// Lexicographic enumeration (epsilon major, delta minor; leftmost bit most
// significant).  Genus is capped at 8 (65536 characteristics).
std::vector<Characteristic> enumerate_characteristics(int g, ParityFilter filter);

// z = (tau * epsilon + delta) / 2, the two-torsion point labelled by m.
Eigen::VectorXcd two_torsion_point(const Characteristic& m, const PeriodMatrix& tau);

inline constexpr int kGenusCap = 8;

}  // namespace thetanull
