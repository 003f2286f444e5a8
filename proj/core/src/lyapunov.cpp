#include "flatline/lyapunov.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include <Eigen/QR>

#include "flatline/error.hpp"

namespace flatline {

std::vector<double> random_simplex_lengths(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> out(static_cast<std::size_t>(d));
  double sum = 0.0;
  for (double& x : out) {
    x = expo(rng);
    sum += x;
  }
  for (double& x : out) x /= sum;
  return out;
}

namespace {

LyapunovResult run_once(const Permutation& perm, int k, long n_steps, std::uint64_t seed, const LyapunovOptions& opt) {
  const int d = perm.size();
  Iet iet = make_iet(perm, random_simplex_lengths(d, seed));
  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(d, k);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(d, k);
  Eigen::VectorXd logs = Eigen::VectorXd::Zero(k);
  const int nblocks = std::max(1, opt.blocks);
  const long block_len = std::max(1L, n_steps / nblocks);
  std::vector<Eigen::VectorXd> block_logs;
  Eigen::VectorXd block_start = Eigen::VectorXd::Zero(k);

  auto reorthonormalize = [&] {
    qr.compute(Q);
    const auto& R = qr.matrixQR();
    Eigen::MatrixXd thin = qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
    for (int j = 0; j < k; ++j) {
      logs[j] += std::log(std::abs(R(j, j)));
      if (R(j, j) < 0.0) thin.col(j) = -thin.col(j);
    }
    Q = thin;
  };

  // Bound on the condition growth since the last QR; a long Zorich run can
  // collapse the frame long before the cadence is due.
  double growth = 1.0;
  for (long step = 1; step <= n_steps; ++step) {
    const RauzyBatch b = zorich_step(iet);
    const double step_growth = 1.0 + static_cast<double>(b.loser_counts.sum());
    if (growth > 1.0 && growth * step_growth > 1e6) {
      reorthonormalize();
      growth = 1.0;
    }
    // Q <- B^T Q with B = I + e_w c^T.
    for (int l = 0; l < d; ++l)
      if (b.loser_counts[l] != 0) Q.row(l) += static_cast<double>(b.loser_counts[l]) * Q.row(b.winner);
    growth *= step_growth;
    if (step % opt.reorth_every == 0 || step == n_steps) {
      reorthonormalize();
      growth = 1.0;
    }
    if (step % block_len == 0 && static_cast<int>(block_logs.size()) < nblocks) {
      if (growth != 1.0) reorthonormalize();
      growth = 1.0;
      block_logs.push_back((logs - block_start) / static_cast<double>(block_len));
      block_start = logs;
    }
  }

  LyapunovResult r;
  r.seed = seed;
  r.steps = n_steps;
  for (int j = 0; j < k; ++j) r.raw.push_back(logs[j] / static_cast<double>(n_steps));
  for (double x : r.raw) r.exponents.push_back(x / r.raw[0]);

  r.block_stderr.assign(static_cast<std::size_t>(k), 0.0);
  if (block_logs.size() >= 2) {
    const double nb = static_cast<double>(block_logs.size());
    for (int j = 0; j < k; ++j) {
      double mean = 0.0, var = 0.0;
      for (const auto& bl : block_logs) mean += bl[j] / bl[0];
      mean /= nb;
      for (const auto& bl : block_logs) var += (bl[j] / bl[0] - mean) * (bl[j] / bl[0] - mean);
      r.block_stderr[static_cast<std::size_t>(j)] = std::sqrt(var / (nb - 1.0) / nb);
    }
  }
  const double worst = r.block_stderr.empty() ? 0.0 : *std::max_element(r.block_stderr.begin(), r.block_stderr.end());
  r.converged = n_steps >= 100000 && block_logs.size() >= 2 && worst <= opt.stderr_threshold;

  std::vector<double> sorted = r.exponents;
  for (double x : sorted)
    if (std::abs(x) < opt.zero_tol) ++r.zero_count;
  std::vector<std::size_t> idx(sorted.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return std::abs(sorted[a]) < std::abs(sorted[b]); });
  std::vector<char> drop(sorted.size(), 0);
  for (int z = 0; z < r.zero_count; ++z) drop[idx[static_cast<std::size_t>(z)]] = 1;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (!drop[i]) r.kz.push_back(sorted[i]);
  return r;
}

}  // namespace

LyapunovResult lyapunov_spectrum(const Permutation& perm, int k, long n_steps, std::uint64_t seed,
                                 const LyapunovOptions& options) {
  if (k < 1 || k > perm.size()) throw Error(ErrorCode::InvalidArgument, "k must be between 1 and d");
  if (n_steps < 1) throw Error(ErrorCode::InvalidArgument, "n_steps must be positive");
  if (options.reorth_every < 1) throw Error(ErrorCode::InvalidArgument, "reorth_every must be positive");
  std::uint64_t s = seed;
  for (int attempt = 0;; ++attempt) {
    try {
      return run_once(perm, k, n_steps, s, options);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::KeaneViolation || attempt >= options.max_retries) throw;
      s = std::mt19937_64(s)();
    }
  }
}

std::vector<LyapunovResult> lyapunov_replicas(const Permutation& perm, int k, long n_steps,
                                              const std::vector<std::uint64_t>& seeds, int threads,
                                              const LyapunovOptions& options) {
  std::vector<LyapunovResult> out(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        out[i] = lyapunov_spectrum(perm, k, n_steps, seeds[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(seeds.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace flatline
