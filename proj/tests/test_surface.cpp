#include <cmath>
#include <functional>
#include <sstream>
#include <numeric>

#include "doctest.h"
#include "flatline/billiard.hpp"
#include "flatline/error.hpp"
#include "flatline/homology.hpp"
#include "flatline/surface.hpp"
#include "flatline/surface_io.hpp"

using namespace flatline;

namespace {

int kappa_sum(const TranslationSurface& s) {
  const auto& k = s.stratum().kappa;
  return std::accumulate(k.begin(), k.end(), 0);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Io;
}

}  // namespace

TEST_SUITE("surface") {

TEST_CASE("square torus") {
  const auto t = square_torus();
  CHECK(t.genus() == 1);
  CHECK(t.stratum().kappa.empty());
  CHECK(t.area() == doctest::Approx(1.0));
  CHECK(t.num_vertices() == 1);
  CHECK(t.cone_points()[0].angle_multiple == 1);
}

TEST_CASE("regular octagon is H(2)") {
  const auto s = regular_octagon_surface();
  CHECK(s.genus() == 2);
  CHECK(s.stratum() == Stratum{{2}});
  CHECK(s.stratum().str() == "H(2)");
  CHECK(s.cone_points()[0].total_angle == doctest::Approx(6 * M_PI));
  CHECK(s.area() == doctest::Approx(1.0));
}

TEST_CASE("intersection form is unimodular and antisymmetric") {
  for (const auto& s : {square_torus(), regular_octagon_surface()}) {
    const auto b = homology_basis(s);
    CHECK(b.cycles.size() == static_cast<std::size_t>(2 * s.genus()));
    const Eigen::MatrixXi J = b.intersection;
    CHECK((J + J.transpose()).isZero());
    CHECK(std::abs(J.cast<double>().determinant()) == doctest::Approx(1.0));
  }
}

TEST_CASE("torus periods") {
  const auto s = square_torus();
  const auto b = homology_basis(s);
  const auto p = period_map(s, b);
  REQUIRE(p.size() == 2);
  // one horizontal and one vertical unit cycle, up to sign
  CHECK(std::abs(p[0]) == doctest::Approx(1.0));
  CHECK(std::abs(p[1]) == doctest::Approx(1.0));
  CHECK(std::abs((p[0] * std::conj(p[1])).real()) == doctest::Approx(0.0));
}

TEST_CASE("billiard genus formula") {
  CHECK(billiard_genus({Rational(1, 3), Rational(1, 3), Rational(1, 3)}) == 1);
  CHECK(billiard_genus({Rational(1, 2), Rational(1, 4), Rational(1, 4)}) == 1);
  CHECK(billiard_genus({Rational(1, 5), Rational(1, 5), Rational(3, 5)}) == 2);
  CHECK(billiard_genus({Rational(1, 5), Rational(2, 5), Rational(2, 5)}) == 2);
}

TEST_CASE("unfolding agrees with the genus formula") {
  const std::vector<std::vector<Rational>> tables = {
      {Rational(1, 3), Rational(1, 3), Rational(1, 3)}, {Rational(1, 2), Rational(1, 3), Rational(1, 6)},
      {Rational(1, 5), Rational(1, 5), Rational(3, 5)}, {Rational(1, 7), Rational(2, 7), Rational(4, 7)},
      {Rational(1, 8), Rational(3, 8), Rational(1, 2)}, {Rational(2, 9), Rational(1, 3), Rational(4, 9)}};
  for (const auto& a : tables) {
    const auto s = unfold_billiard(a);
    CHECK(s.genus() == billiard_genus(a));
    CHECK(kappa_sum(s) == 2 * s.genus() - 2);
  }
}

TEST_CASE("rational angles from vertices") {
  const PlanarPolygon tri{"P", {{0, 0}, {1, 0}, {0, 1}}};
  const auto a = rational_angles(tri);
  REQUIRE(a.size() == 3);
  CHECK(a[0] == Rational(1, 2));
  CHECK(a[1] == Rational(1, 4));
  CHECK(a[2] == Rational(1, 4));
  CHECK(code_of([] { rational_angles(PlanarPolygon{"P", {{0, 0}, {1, 0}, {0.3, std::sqrt(2.0)}}}, 50); }) ==
        ErrorCode::IrrationalAngle);
}

TEST_CASE("gluing errors") {
  const PlanarPolygon sq{"P", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  CHECK(code_of([&] { TranslationSurface::build({sq}, {{{0, 0}, {0, 1}}, {{0, 2}, {0, 3}}}); }) ==
        ErrorCode::NonTranslationGluing);
  CHECK(code_of([&] { TranslationSurface::build({sq}, {{{0, 0}, {0, 2}}}); }) == ErrorCode::UnmatchedEdge);
  const PlanarPolygon flat{"Q", {{0, 0}, {1, 0}, {2, 0}}};
  CHECK(code_of([&] { TranslationSurface::build({flat}, {}); }) == ErrorCode::DegeneratePolygon);
}

TEST_CASE("spec round trip") {
  const auto s = regular_octagon_surface();
  std::ostringstream out;
  write_surface_spec(out, s, "oct");
  const auto spec = parse_surface_spec_string(out.str());
  CHECK(spec.name == "oct");
  const auto back = surface_from_spec(spec);
  CHECK(back.genus() == 2);
  CHECK(back.area() == doctest::Approx(s.area()));
}

TEST_CASE("spec parse errors carry ConfigParse") {
  CHECK(code_of([] { parse_surface_spec_string("polygon P {\n vertices = [(0,0)\n}\n"); }) == ErrorCode::ConfigParse);
  CHECK(code_of([] { parse_surface_spec_string("name = x\n"); }) == ErrorCode::ConfigParse);
}

TEST_CASE("GL2 action preserves area for SL2") {
  const auto s = regular_octagon_surface();
  const Mat2 A{2.0, 1.0, 1.0, 1.0};
  const auto t = apply_gl2(A, s);
  CHECK(t.area() == doctest::Approx(s.area()));
  CHECK(t.genus() == 2);
}

TEST_CASE("rational arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational::parse("3/9") == Rational(1, 3));
  CHECK(rationalize(0.4, 100) == Rational(2, 5));
  CHECK(lcm64(4, 6) == 12);
}

}  // TEST_SUITE
