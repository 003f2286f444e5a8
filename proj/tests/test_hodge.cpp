#include <cmath>
#include <random>

#include "doctest.h"
#include "flatline/error.hpp"
#include "flatline/hodge.hpp"
#include "flatline/mesh.hpp"
#include "flatline/twisted.hpp"

using namespace flatline;

TEST_SUITE("hodge") {

TEST_CASE("mesh Euler characteristic and area") {
  for (const auto& s : {square_torus(), regular_octagon_surface()}) {
    for (int level = 0; level <= 2; ++level) {
      const auto m = FlatMesh::build(s, level);
      CHECK(m.num_vertices() - m.num_edges() + m.num_triangles() == 2 - 2 * s.genus());
      CHECK(m.total_area() == doctest::Approx(s.area()));
    }
  }
}

TEST_CASE("graded octagon mesh keeps angles bounded and the cone angle") {
  const auto m = FlatMesh::build(regular_octagon_surface(), 2);
  CHECK(m.min_angle_deg() > 15.0);
  CHECK(m.vertex_angle(0) == doctest::Approx(6 * M_PI));
}

TEST_CASE("edge cochains are closed") {
  const auto m = FlatMesh::build(regular_octagon_surface(), 1);
  const Eigen::VectorXd periods = Eigen::VectorXd::LinSpaced(4, 0.3, 1.7);
  const auto c = m.edge_cochain(periods);
  for (const auto& t : m.triangles()) {
    double sum = 0.0;
    for (int k = 0; k < 3; ++k) sum += t.sign[static_cast<std::size_t>(k)] * c[t.e[static_cast<std::size_t>(k)]];
    CHECK(std::abs(sum) < 1e-12);
  }
}

TEST_CASE("torus Hodge norms and B form") {
  const auto m = FlatMesh::build(square_torus(), 1);
  const HodgeSolver solver(m);
  const Eigen::VectorXd dx = m.re_h(), dy = m.im_h();
  CHECK(solver.hodge_norm(dx) == doctest::Approx(1.0));
  CHECK(solver.hodge_norm(3 * dx + 4 * dy) == doctest::Approx(5.0));
  CHECK(solver.b_form(dx).real() == doctest::Approx(1.0));
  CHECK(solver.b_form(dy).real() == doctest::Approx(-1.0));
  CHECK_THROWS_AS(lambda_max(solver), Error);
}

TEST_CASE("torus first variation is 2") {
  const auto m = FlatMesh::build(square_torus(), 1);
  const auto fv = first_variation_check(m, m.re_h());
  CHECK(fv.finite_difference == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(fv.two_re_b == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("octagon: |B| bounded by the norm, wedge equals cup") {
  const auto m = FlatMesh::build(regular_octagon_surface(), 1);
  const HodgeSolver solver(m);
  std::mt19937_64 rng(42);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    Eigen::VectorXd c(4);
    for (int k = 0; k < 4; ++k) c[k] = n(rng);
    const double norm2 = std::pow(solver.hodge_norm(c), 2);
    CHECK(std::abs(solver.b_form(c)) <= norm2 + 1e-6);
  }
  const auto a = solver.harmonic_representative(m.re_h());
  const auto b = solver.harmonic_representative(m.im_h());
  CHECK(wedge_pairing(m, a, b) == doctest::Approx(cohomology_pairing(m.basis(), m.re_h(), m.im_h())));
}

TEST_CASE("octagon Lambda is below 1") {
  const HodgeSolver solver(FlatMesh::build(regular_octagon_surface(), 1));
  const auto r = lambda_max(solver);
  CHECK(r.value >= 0.0);
  CHECK(r.value < 1.0 - 1e-3);
}

TEST_CASE("twisted ranks on the torus") {
  const auto m = FlatMesh::build(square_torus(), 1);
  CHECK(twisted_rank(m, m.re_h()).rank == 2);
  CHECK(twisted_rank(m, 0.37 * m.re_h()).rank == 0);
}

TEST_CASE("twisted ranks and Lambda# on the octagon") {
  const auto m = FlatMesh::build(regular_octagon_surface(), 1);
  const Eigen::VectorXd integer = (Eigen::VectorXd(4) << 1, 0, -2, 1).finished();
  CHECK(twisted_rank(m, integer).rank == 4);
  CHECK(twisted_rank(m, 0.5 * m.re_h()).rank == 2);
  CHECK(lambda_sharp(m, integer).value == doctest::Approx(1.0).epsilon(0.02));
  CHECK(lambda_sharp(m, 0.5 * m.re_h()).value < 0.99);
}

}  // TEST_SUITE
