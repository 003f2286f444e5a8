#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatline/iet.hpp"
#include "flatline/rational.hpp"

namespace flatline {

// Frequency lambda. Rational values are tracked exactly modulo their
// denominator; others in 64-bit fixed point, which stays meaningful only
// until the heights outgrow 2^64 (the precision horizon).
struct Frequency {
  std::optional<Rational> exact;
  long double value = 0.0L;
  long double error = 0.0L;   // bound on |value - lambda|

  static Frequency rational(const Rational& q);
  static Frequency real(long double x, long double error = 0.0L);
  // Decimal or p/q text is exact; "golden" is (1 + sqrt 5) / 2.
  static Frequency parse(const std::string& text);
  std::string str() const;
};

struct VeechState {
  long step = 0;
  double t = 0.0;       // renormalization time
  double dist = 0.0;    // sup norm of the reduced vector
  bool reliable = true;
};

struct VeechOptions {
  double delta_lattice = 1e-3;
  double terminal_fraction = 0.1;  // tail of reliable samples inspected
  double attracted_share = 0.9;    // share of that tail below delta_lattice
  double max_error = 1e-6;         // fixed-point error that ends reliability
};

struct VeechResult {
  std::vector<VeechState> states;   // states[0] is the initial vector
  long horizon = -1;                // first unreliable step, -1 if none
  bool lattice_attracted = false;
};

// Orbit of lambda * heights (all ones by default) under the transposed
// Zorich matrices of `iet`, reduced mod Z^d.
VeechResult veech_orbit(Iet iet, const Frequency& lambda, long n_steps, std::vector<std::int64_t> heights = {},
                        const VeechOptions& options = {});

// Same on random normalized lengths for `perm`, reseeding on Keane ties.
VeechResult veech_orbit_random(const Permutation& perm, const Frequency& lambda, long n_steps, std::uint64_t seed,
                               const VeechOptions& options = {}, int max_retries = 5);

}  // namespace flatline
