#include <cmath>
#include <random>

#include "doctest.h"
#include "flatline/error.hpp"
#include "flatline/first_return.hpp"
#include "flatline/flow.hpp"
#include "flatline/recurrence.hpp"
#include "flatline/systole.hpp"

using namespace flatline;

TEST_SUITE("flow") {

TEST_CASE("horizontal torus orbit closes up") {
  const auto t = square_torus();
  const auto seg = trace_orbit(t, 0.0, {0, {0.1, 0.5}}, 3.0);
  CHECK_FALSE(seg.hit_singularity);
  CHECK(seg.end.pos.x == doctest::Approx(0.1));
  CHECK(seg.end.pos.y == doctest::Approx(0.5));
  CHECK(seg.crossings.size() == 3);
  CHECK(seg.duration == doctest::Approx(3.0));
}

TEST_CASE("starting on a vertex is rejected") {
  const auto t = square_torus();
  CHECK_THROWS_AS(trace_orbit(t, 0.3, {0, {0.0, 0.0}}, 1.0), Error);
}

TEST_CASE("twisted integral at the torus eigenfrequency grows linearly") {
  const auto t = square_torus();
  const auto f = Observable::parse("exp(-2pi i x)");
  const double x0 = 0.2;
  const auto I = twisted_integral(t, 0.0, f, 1.0, {0, {x0, 0.4}}, 10.0);
  const Complex expected = 10.0 * std::exp(Complex(0, -2 * M_PI * x0));
  CHECK(std::abs(I - expected) < 1e-9);
  const auto J = twisted_integral(t, 0.0, f, 0.5, {0, {x0, 0.4}}, 10.0);
  CHECK(std::abs(J) < 1.0);
}

TEST_CASE("Birkhoff integral of a zero-mean observable stays bounded on the torus") {
  const auto t = square_torus();
  const auto f = Observable::parse("cos(2pi x)");
  CHECK(f.has_zero_mean(t));
  const double theta = std::atan((std::sqrt(5.0) - 1.0) / 2.0);
  for (double T : {10.0, 100.0, 1000.0}) CHECK(std::abs(birkhoff_integral(t, theta, f, {0, {0.31, 0.17}}, T)) < 2.0);
}

TEST_CASE("constant observable integrates to T on the octagon") {
  const auto s = regular_octagon_surface();
  const auto one = Observable::parse("1");
  CHECK(birkhoff_integral(s, 0.7, one, {0, {0.05, 0.3}}, 50.0) == doctest::Approx(50.0));
}

TEST_CASE("integral series matches separate integrals") {
  const auto s = regular_octagon_surface();
  const auto f = Observable::parse("cos(2pi x) + sin(2pi y)");
  const SurfacePoint p{0, {0.05, 0.3}};
  const auto series = twisted_integral_series(s, 0.9, f, 0.37, p, {4.0, 16.0, 64.0});
  REQUIRE(series.values.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto I = twisted_integral(s, 0.9, f, 0.37, p, series.times[i]);
    CHECK(std::abs(series.values[i] - I) < 1e-9 * std::max(1.0, std::abs(I)));
    CHECK(series.sup_abs[i] >= std::abs(series.values[i]) - 1e-12);
  }
}

TEST_CASE("torus flux is the direction vector") {
  const auto t = square_torus();
  const auto basis = homology_basis(t);
  const double theta = 0.61;
  const auto flux = flux_estimate(t, theta, {0, {0.3, 0.4}}, 2000.0, basis);
  const auto periods = period_map(t, basis);
  // pairing of the flux with dx and dy recovers the unit direction
  Complex hol = 0;
  for (Eigen::Index i = 0; i < flux.size(); ++i) hol += flux[i] * periods[static_cast<std::size_t>(i)];
  CHECK(hol.real() == doctest::Approx(std::cos(theta)).epsilon(1e-3));
  CHECK(hol.imag() == doctest::Approx(std::sin(theta)).epsilon(1e-3));
}

TEST_CASE("systoles") {
  CHECK(systole(square_torus(), 4.0) == doctest::Approx(1.0));
  const auto oct = regular_octagon_surface();
  const double side = oct.polygon(0).edge(0).norm();
  CHECK(systole(oct, 4.0) <= side + 1e-9);
}

TEST_CASE("torus systole shrinks along the contracted direction") {
  const auto series = recurrence_series(square_torus(), 0.0, 2.0, 0.5);
  REQUIRE(series.size() == 5);
  for (const auto& r : series) CHECK(r.systole == doctest::Approx(std::exp(-r.t)));
  // e^-2 < 0.2 at the last sample
  CHECK(visit_frequency(series, 0.2) == doctest::Approx(0.8));
}

TEST_CASE("first return on the octagon has the minimal number of intervals") {
  const auto s = regular_octagon_surface();
  const double theta = 0.4321;
  const auto fr = first_return_iet(s, theta, separatrix_transversal(s, theta));
  CHECK(fr.iet.perm.size() == 4);
  for (double r : fr.return_times) CHECK(r > 0.0);
}

TEST_CASE("random points are interior and reproducible") {
  const auto s = regular_octagon_surface();
  std::mt19937_64 a(7), b(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_point(s, [&] { return u(a); });
    const auto q = random_point(s, [&] { return u(b); });
    CHECK(p.polygon == q.polygon);
    CHECK(p.pos.x == q.pos.x);
  }
}

}  // TEST_SUITE
