#include "flatline/veech.hpp"

#include <cfloat>
#include <cmath>
#include <random>
#include <sstream>

#include "flatline/error.hpp"
#include "flatline/lyapunov.hpp"

namespace flatline {

Frequency Frequency::rational(const Rational& q) {
  Frequency f;
  f.exact = q;
  f.value = static_cast<long double>(q.num()) / static_cast<long double>(q.den());
  return f;
}

Frequency Frequency::real(long double x, long double error) {
  if (!std::isfinite(static_cast<double>(x))) throw Error(ErrorCode::InvalidArgument, "frequency must be finite");
  Frequency f;
  f.value = x;
  f.error = std::max(error, std::abs(x) * LDBL_EPSILON);
  return f;
}

Frequency Frequency::parse(const std::string& text) {
  if (text == "golden") return real((1.0L + std::sqrt(5.0L)) / 2.0L);
  try {
    return rational(Rational::parse(text));
  } catch (const Error&) {
  }
  std::size_t used = 0;
  long double x = 0.0L;
  try {
    x = std::stold(text, &used);
  } catch (...) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(ErrorCode::ConfigParse, "bad frequency '" + text + "'");
  return real(x, std::abs(x) * DBL_EPSILON);
}

std::string Frequency::str() const {
  if (exact) return exact->str();
  std::ostringstream out;
  out.precision(19);
  out << value;
  return out.str();
}

namespace {

__extension__ using UWide = unsigned __int128;

// Residues modulo `modulus`, or modulo 2^64 when modulus is 0.
struct Torus {
  std::uint64_t modulus = 0;

  std::uint64_t reduce(UWide x) const { return modulus ? static_cast<std::uint64_t>(x % modulus) : static_cast<std::uint64_t>(x); }
  std::uint64_t add_mul(std::uint64_t a, std::uint64_t c, std::uint64_t b) const {
    return reduce(static_cast<UWide>(a) + static_cast<UWide>(reduce(c)) * b);
  }
  double centered(std::uint64_t r) const {
    const long double m = modulus ? static_cast<long double>(modulus) : std::ldexp(1.0L, 64);
    long double x = static_cast<long double>(r) / m;
    if (x >= 0.5L) x -= 1.0L;
    return static_cast<double>(x);
  }
};

std::uint64_t residue_of_int(std::int64_t h, const Torus& T) {
  if (T.modulus == 0) return static_cast<std::uint64_t>(h);
  const auto m = static_cast<std::int64_t>(T.modulus);
  return static_cast<std::uint64_t>(((h % m) + m) % m);
}

}  // namespace

VeechResult veech_orbit(Iet iet, const Frequency& lambda, long n_steps, std::vector<std::int64_t> heights,
                        const VeechOptions& options) {
  const int d = iet.size();
  if (n_steps < 0) throw Error(ErrorCode::InvalidArgument, "n_steps must be nonnegative");
  if (heights.empty()) heights.assign(static_cast<std::size_t>(d), 1);
  if (static_cast<int>(heights.size()) != d) throw Error(ErrorCode::InvalidArgument, "height vector does not match the IET");

  Torus T;
  std::uint64_t lam = 0;
  if (lambda.exact) {
    T.modulus = static_cast<std::uint64_t>(lambda.exact->den());
    lam = residue_of_int(lambda.exact->num(), T);
  } else {
    const long double frac = lambda.value - std::floor(lambda.value);
    const long double scaled = std::ldexp(frac, 64);
    lam = scaled >= std::ldexp(1.0L, 64) ? 0 : static_cast<std::uint64_t>(scaled);
  }
  std::vector<std::uint64_t> v(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] = T.add_mul(0, residue_of_int(heights[static_cast<std::size_t>(i)], T), lam);

  // Heights in floating point with a log scale, for the error bound only.
  std::vector<double> h(heights.begin(), heights.end());
  double log_h = 0.0;
  const long double unit_err = lambda.exact ? 0.0L : lambda.error + std::ldexp(1.0L, -64);

  VeechResult out;
  auto record = [&](long step) {
    VeechState st;
    st.step = step;
    st.t = iet.log_scale;
    for (auto r : v) st.dist = std::max(st.dist, std::abs(T.centered(r)));
    if (!lambda.exact) {
      double hmax = 0.0;
      for (double x : h) hmax = std::max(hmax, std::abs(x));
      const long double err = unit_err * std::exp(static_cast<long double>(log_h)) * hmax;
      st.reliable = err <= options.max_error;
      if (!st.reliable && out.horizon < 0) out.horizon = step;
    }
    out.states.push_back(st);
  };
  record(0);
  for (long n = 1; n <= n_steps; ++n) {
    const RauzyBatch b = zorich_step(iet);
    const auto w = static_cast<std::size_t>(b.winner);
    for (int l = 0; l < d; ++l) {
      const auto c = b.loser_counts[l];
      if (c == 0 || l == b.winner) continue;
      v[static_cast<std::size_t>(l)] = T.add_mul(v[static_cast<std::size_t>(l)], static_cast<std::uint64_t>(c), v[w]);
      h[static_cast<std::size_t>(l)] += static_cast<double>(c) * h[w];
    }
    double hmax = 0.0;
    for (double x : h) hmax = std::max(hmax, std::abs(x));
    if (hmax > 1e100) {
      for (double& x : h) x /= hmax;
      log_h += std::log(hmax);
    }
    record(n);
  }

  std::vector<const VeechState*> good;
  for (const auto& s : out.states)
    if (s.reliable) good.push_back(&s);
  const auto tail = static_cast<std::size_t>(std::ceil(options.terminal_fraction * static_cast<double>(good.size())));
  if (tail > 0) {
    std::size_t below = 0;
    for (std::size_t i = good.size() - tail; i < good.size(); ++i)
      if (good[i]->dist < options.delta_lattice) ++below;
    out.lattice_attracted = static_cast<double>(below) >= options.attracted_share * static_cast<double>(tail);
  }
  return out;
}

VeechResult veech_orbit_random(const Permutation& perm, const Frequency& lambda, long n_steps, std::uint64_t seed,
                               const VeechOptions& options, int max_retries) {
  std::uint64_t s = seed;
  for (int attempt = 0;; ++attempt) {
    try {
      return veech_orbit(make_iet(perm, random_simplex_lengths(perm.size(), s)), lambda, n_steps, {}, options);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::KeaneViolation || attempt >= max_retries) throw;
      s = std::mt19937_64(s)();
    }
  }
}

}  // namespace flatline
