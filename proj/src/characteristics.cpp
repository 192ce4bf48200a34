#include "thetanull/characteristics.hpp"

#include <stdexcept>

#include "thetanull/errors.hpp"
#include "thetanull/siegel.hpp"

namespace thetanull {

Characteristic Characteristic::zero(int g) {
  Characteristic m;
  m.g = g;
  m.epsilon.assign(static_cast<std::size_t>(g), 0);
  m.delta.assign(static_cast<std::size_t>(g), 0);
  return m;
}

Characteristic Characteristic::from_string(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    throw Error(ErrorKind::Parse, "characteristic must be 'bits/bits', got '" +
                                      std::string(text) + "'");
  std::string_view top = text.substr(0, slash);
  std::string_view bot = text.substr(slash + 1);
  if (top.empty() || top.size() != bot.size())
    throw Error(ErrorKind::Parse,
                "characteristic rows must be nonempty and of equal length");
  if (top.size() > static_cast<std::size_t>(kGenusCap))
    throw Error(ErrorKind::GenusTooLarge,
                "characteristic genus exceeds the cap of 8");
  Characteristic m;
  m.g = static_cast<int>(top.size());
  auto parse_row = [](std::string_view row, std::vector<std::uint8_t>& out) {
    out.reserve(row.size());
    for (char c : row) {
      if (c != '0' && c != '1')
        throw Error(ErrorKind::Parse,
                    std::string("characteristic bits must be 0/1, got '") + c + "'");
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
  };
  parse_row(top, m.epsilon);
  parse_row(bot, m.delta);
  return m;
}

std::string Characteristic::to_string() const {
  std::string s;
  s.reserve(static_cast<std::size_t>(2 * g + 1));
  for (auto b : epsilon) s.push_back(static_cast<char>('0' + b));
  s.push_back('/');
  for (auto b : delta) s.push_back(static_cast<char>('0' + b));
  return s;
}

int sign(const Characteristic& m) {
  int dot = 0;
  for (int i = 0; i < m.g; ++i)
    dot += m.epsilon[static_cast<std::size_t>(i)] * m.delta[static_cast<std::size_t>(i)];
  return (dot % 2 == 0) ? 1 : -1;
}

bool Characteristic::is_even() const { return sign(*this) == 1; }

std::vector<Characteristic> enumerate_characteristics(int g, ParityFilter filter) {
  if (g < 1) throw Error(ErrorKind::Config, "genus must be positive");
  if (g > kGenusCap)
    throw Error(ErrorKind::GenusTooLarge,
                "genus " + std::to_string(g) + " exceeds the enumeration cap of 8");
  const std::uint32_t count = 1u << g;
  auto bits_of = [g](std::uint32_t k) {
    std::vector<std::uint8_t> v(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i)  // leftmost bit most significant
      v[static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>((k >> (g - 1 - i)) & 1u);
    return v;
  };
  std::vector<Characteristic> out;
  for (std::uint32_t e = 0; e < count; ++e) {
    auto eps = bits_of(e);
    for (std::uint32_t d = 0; d < count; ++d) {
      Characteristic m;
      m.g = g;
      m.epsilon = eps;
      m.delta = bits_of(d);
      const bool even = m.is_even();
      if (filter == ParityFilter::Even && !even) continue;
      if (filter == ParityFilter::Odd && even) continue;
      out.push_back(std::move(m));
    }
  }
  return out;
}

Eigen::VectorXcd two_torsion_point(const Characteristic& m, const PeriodMatrix& tau) {
  if (m.g != tau.g)
    throw Error(ErrorKind::DimensionMismatch,
                "characteristic genus " + std::to_string(m.g) +
                    " does not match period matrix genus " + std::to_string(tau.g));
  Eigen::VectorXd eps(m.g), del(m.g);
  for (int i = 0; i < m.g; ++i) {
    eps(i) = m.epsilon[static_cast<std::size_t>(i)];
    del(i) = m.delta[static_cast<std::size_t>(i)];
  }
  return 0.5 * (tau.entries * eps.cast<std::complex<double>>() +
                del.cast<std::complex<double>>());
}

}  // namespace thetanull
