#include <cmath>

#include "doctest.h"
#include "flatline/error.hpp"
#include "flatline/iet.hpp"
#include "flatline/lyapunov.hpp"
#include "flatline/pseudo_anosov.hpp"

using namespace flatline;

TEST_SUITE("renorm") {

TEST_CASE("permutation parsing") {
  const auto p = Permutation::parse("4 3 2 1");
  CHECK(p == Permutation::reversal(4));
  CHECK(p.irreducible());
  CHECK_THROWS_AS(Permutation::parse("1 2"), Error);
  CHECK(Permutation::parse(p.str()) == p);
}

TEST_CASE("Rauzy classes") {
  CHECK(rauzy_class(Permutation::reversal(3)).size() == 3);
  CHECK(rauzy_class(Permutation::reversal(4)).size() == 7);
}

TEST_CASE("one Rauzy step: old lengths are the matrix times the new ones") {
  auto iet = make_iet(Permutation::reversal(4), {0.1, 0.2, 0.3, 0.4});
  const auto before = iet.lengths;
  const auto move = rauzy_step(iet);
  // the step renormalizes, so compare directions only
  Eigen::VectorXd after(4), old(4);
  for (int i = 0; i < 4; ++i) {
    after[i] = iet.lengths[static_cast<std::size_t>(i)];
    old[i] = before[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd image = move.matrix.cast<double>() * after;
  CHECK((image / image.sum() - old / old.sum()).norm() < 1e-12);
  CHECK(std::abs(move.matrix.cast<double>().determinant()) == doctest::Approx(1.0));
}

TEST_CASE("Zorich batches have unimodular matrices") {
  auto iet = make_iet(Permutation::reversal(4), random_simplex_lengths(4, 11));
  for (int i = 0; i < 20; ++i) {
    const auto batch = zorich_step(iet);
    CHECK(batch.moves >= 1);
    CHECK(std::abs(batch.matrix().cast<double>().determinant()) == doctest::Approx(1.0));
  }
}

TEST_CASE("Keane tie is reported") {
  auto iet = make_iet(Permutation::parse("2 1"), {0.5, 0.5});
  CHECK_THROWS_AS(rauzy_step(iet), Error);
}

TEST_CASE("Lyapunov spectrum of the rotation class") {
  const auto r = lyapunov_spectrum(Permutation::reversal(2), 2, 20000, 5);
  CHECK(r.exponents[0] == doctest::Approx(1.0));
  CHECK(r.exponents[1] == doctest::Approx(-1.0).epsilon(0.02));
}

TEST_CASE("short H(2) run is symmetric and reproducible") {
  const auto a = lyapunov_spectrum(Permutation::reversal(4), 4, 200000, 3);
  const auto b = lyapunov_spectrum(Permutation::reversal(4), 4, 200000, 3);
  CHECK(a.exponents == b.exponents);
  CHECK(a.exponents[0] == doctest::Approx(1.0));
  CHECK(a.exponents[1] + a.exponents[2] == doctest::Approx(0.0).epsilon(0.05));
  CHECK(a.exponents[1] == doctest::Approx(1.0 / 3.0).epsilon(0.1));
}

TEST_CASE("replicas match single runs") {
  const auto reps = lyapunov_replicas(Permutation::reversal(4), 2, 20000, {1, 2}, 2);
  REQUIRE(reps.size() == 2);
  CHECK(reps[1].exponents == lyapunov_spectrum(Permutation::reversal(4), 2, 20000, 2).exponents);
}

TEST_CASE("cat map dilation") {
  Eigen::MatrixXi m(2, 2);
  m << 2, 1, 1, 1;
  const auto pa = pseudo_anosov_from_matrix(m);
  CHECK(pa.dilation == doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
  CHECK(pa.dilation_simple);
}

TEST_CASE("searched H(2) loop has an effective exponent in (0, 1)") {
  const auto pa = find_periodic_loop(Permutation::reversal(4), 10);
  CHECK(pa.dilation > 1.0);
  CHECK(pa.effective_exponent_raw > 0.0);
  CHECK(pa.effective_exponent_raw < 1.0);
  CHECK((pa.length_eigenvector.array() > 0).all());
  CHECK(word_string(parse_word(word_string(pa.loop))) == word_string(pa.loop));
}

TEST_CASE("non-loops are rejected") {
  CHECK_THROWS_AS(pseudo_anosov_from_loop(Permutation::reversal(4), parse_word("T")), Error);
}

}  // TEST_SUITE
