#include <cmath>
#include <functional>

#include "doctest.h"
#include "flatline/error.hpp"
#include "flatline/fitting.hpp"
#include "flatline/iet.hpp"
#include "flatline/lyapunov.hpp"
#include "flatline/ostrowski.hpp"
#include "flatline/spectral_measure.hpp"
#include "flatline/veech.hpp"

using namespace flatline;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

std::vector<double> dyadic(int n) {
  std::vector<double> T;
  for (int k = 0; k < n; ++k) T.push_back(std::ldexp(1.0, k));
  return T;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("power law fits recover exponents") {
  const auto T = dyadic(16);
  std::vector<double> m;
  for (double t : T) m.push_back(3.0 * std::pow(t, 0.7));
  const auto a = decay_exponent(T, m);
  CHECK(a.value == doctest::Approx(0.3).epsilon(1e-9));
  const auto nu = deviation_exponent(T, m, true);
  CHECK(nu.value == doctest::Approx(0.7).epsilon(1e-9));
  std::vector<double> lin(T.begin(), T.end());
  CHECK(decay_exponent(T, lin).value == doctest::Approx(0.0));
}

TEST_CASE("bootstrap is seeded and brackets the estimate") {
  const auto T = dyadic(16);
  std::vector<double> m;
  for (std::size_t i = 0; i < T.size(); ++i) m.push_back(std::pow(T[i], 0.5) * (1.0 + 0.2 * std::sin(3.0 * i)));
  const auto a = decay_exponent(T, m), b = decay_exponent(T, m);
  CHECK(a.ci_low == b.ci_low);
  CHECK(a.ci_low <= a.value);
  CHECK(a.value <= a.ci_high);
}

TEST_CASE("fitting errors") {
  CHECK(code_of([] { decay_exponent(dyadic(5), std::vector<double>(5, 1.0)); }) == ErrorCode::InsufficientSamples);
  CHECK(code_of([] { deviation_exponent(dyadic(16), std::vector<double>(16, 1.0), false); }) ==
        ErrorCode::ZeroMeanRequired);
}

TEST_CASE("Ostrowski over Fibonacci scales") {
  const std::vector<double> fib = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
  const auto d = ostrowski_decompose(100, fib);
  CHECK(d.reconstruct() == doctest::Approx(100.0));
  CHECK(d.m[9] == 1);
  CHECK(d.m[4] == 1);
  CHECK(d.m[2] == 1);
  CHECK(d.top == 9);
  CHECK(d.satisfies_constraint());
  CHECK(code_of([&] { ostrowski_decompose(10, {1, 3, 2}); }) == ErrorCode::InvalidScales);
}

TEST_CASE("Veech orbit at integer frequency sits on the lattice") {
  auto iet = make_iet(Permutation::reversal(4), random_simplex_lengths(4, 9));
  const auto r = veech_orbit(iet, Frequency::parse("2"), 50);
  for (const auto& s : r.states) CHECK(s.dist == 0.0);
  CHECK(r.lattice_attracted);
}

TEST_CASE("Veech orbit of the golden rotation converges") {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  auto iet = make_iet(Permutation::parse("2 1"), {g, 1.0 - g});
  const auto r = veech_orbit(iet, Frequency::parse("golden"), 30);
  CHECK(r.states.back().dist < 1e-3);
}

TEST_CASE("Veech orbit at a generic frequency stays away") {
  const auto r = veech_orbit_random(Permutation::reversal(4), Frequency::parse("0.37"), 4000, 1);
  CHECK_FALSE(r.lattice_attracted);
}

TEST_CASE("frequency parsing") {
  CHECK(Frequency::parse("3/4").exact.has_value());
  CHECK(Frequency::parse("0.37").exact.has_value());
  CHECK_FALSE(Frequency::parse("golden").exact.has_value());
}

TEST_CASE("torus spectral measure has a single atom") {
  const auto t = square_torus();
  std::vector<double> grid;
  for (int i = -40; i <= 40; ++i) grid.push_back(0.05 * i);
  const auto sm = spectral_measure_estimate(t, 0.0, Observable::parse("exp(-2pi i x)"), grid, {50, 100, 200},
                                            {0, {0.3, 0.4}});
  REQUIRE(sm.candidates.size() == 1);
  CHECK(grid[static_cast<std::size_t>(sm.candidates[0])] == doctest::Approx(1.0));
  CHECK(code_of([&] {
          spectral_measure_estimate(t, 0.0, Observable::parse("1"), grid, {50}, {0, {0.3, 0.4}});
        }) == ErrorCode::ZeroMeanRequired);
}

}  // TEST_SUITE
