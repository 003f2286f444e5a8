#pragma once

#include <cstdint>
#include <vector>

#include "flatline/iet.hpp"

namespace flatline {

struct LyapunovOptions {
  int reorth_every = 10;          // Zorich steps between QR re-orthonormalizations
  int blocks = 10;                // batch-means blocks for the convergence diagnostic
  double stderr_threshold = 0.02; // largest tolerated block standard error
  double zero_tol = 0.01;
  int max_retries = 5;            // fresh lengths after a Keane tie
};

struct LyapunovResult {
  std::uint64_t seed = 0;         // seed actually used (after retries)
  long steps = 0;
  std::vector<double> raw;        // per Zorich step
  std::vector<double> exponents;  // raw / raw[0]
  std::vector<double> kz;         // exponents with the zero_count smallest |values| removed
  int zero_count = 0;
  std::vector<double> block_stderr;
  bool converged = false;
};

// Lyapunov exponents of the transposed Zorich cocycle along a random IET with
// uniform-simplex lengths drawn from std::mt19937_64(seed).
LyapunovResult lyapunov_spectrum(const Permutation& perm, int k, long n_steps, std::uint64_t seed,
                                 const LyapunovOptions& options = {});

// Independent replicas for each seed on up to `threads` worker threads.
std::vector<LyapunovResult> lyapunov_replicas(const Permutation& perm, int k, long n_steps,
                                              const std::vector<std::uint64_t>& seeds, int threads,
                                              const LyapunovOptions& options = {});

// Uniform point of the open simplex, from normalized exponentials.
std::vector<double> random_simplex_lengths(int d, std::uint64_t seed);

}  // namespace flatline
