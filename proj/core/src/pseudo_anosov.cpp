#include "flatline/pseudo_anosov.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "flatline/error.hpp"

namespace flatline {

std::vector<MoveType> parse_word(const std::string& word) {
  std::vector<MoveType> out;
  for (char c : word) {
    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (u == 'T')
      out.push_back(MoveType::Top);
    else if (u == 'B')
      out.push_back(MoveType::Bottom);
    else if (!std::isspace(static_cast<unsigned char>(c)) && c != ',' && c != '-')
      throw Error(ErrorCode::ConfigParse, std::string("bad move '") + c + "' in word");
  }
  if (out.empty()) throw Error(ErrorCode::ConfigParse, "empty move word");
  return out;
}

std::string word_string(const std::vector<MoveType>& loop) {
  std::string s;
  for (MoveType m : loop) s += m == MoveType::Top ? 'T' : 'B';
  return s;
}

namespace {

bool is_primitive(const Eigen::MatrixXi& m) {
  const auto d = m.rows();
  const Eigen::MatrixXi pattern = (m.array() > 0).cast<int>();
  Eigen::MatrixXi p = pattern;
  const long bound = (d - 1) * (d - 1) + 1;
  for (long k = 1; k <= bound; ++k) {
    if ((p.array() > 0).all()) return true;
    p = ((p * pattern).array() > 0).cast<int>();
  }
  return (p.array() > 0).all();
}

Eigen::MatrixXi loop_matrix(Permutation p, const std::vector<MoveType>& loop, Permutation* end) {
  const int d = p.size();
  Eigen::MatrixXi m = Eigen::MatrixXi::Identity(d, d);
  for (MoveType t : loop) {
    const int winner = t == MoveType::Top ? p.top.back() : p.bottom.back();
    const int loser = t == MoveType::Top ? p.bottom.back() : p.top.back();
    Eigen::MatrixXi b = Eigen::MatrixXi::Identity(d, d);
    b(winner, loser) = 1;
    m = m * b;
    p = rauzy_move_permutation(p, t);
  }
  if (end) *end = p;
  return m;
}

}  // namespace

PseudoAnosov pseudo_anosov_from_matrix(const Eigen::MatrixXi& m) {
  if (m.rows() != m.cols() || m.rows() < 2) throw Error(ErrorCode::InvalidArgument, "action must be square");
  if ((m.array() < 0).any() || !is_primitive(m)) throw Error(ErrorCode::NotPerron, "matrix has no strictly positive power");
  PseudoAnosov pa;
  pa.action = m.cast<double>();
  Eigen::EigenSolver<Eigen::MatrixXd> es(pa.action);
  const Eigen::VectorXcd ev = es.eigenvalues();
  Eigen::Index top = 0;
  for (Eigen::Index i = 1; i < ev.size(); ++i)
    if (std::abs(ev[i]) > std::abs(ev[top])) top = i;
  pa.dilation = ev[top].real();
  int near_top = 0, near_inverse = 0;
  pa.rho = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i] - pa.dilation) < 1e-8 * pa.dilation) ++near_top;
    if (std::abs(ev[i] - 1.0 / pa.dilation) < 1e-8) ++near_inverse;
    if (i != top) pa.rho = std::max(pa.rho, std::abs(ev[i]));
  }
  pa.dilation_simple = near_top == 1;
  pa.inverse_simple = near_inverse == 1;
  pa.effective_exponent_raw = 1.0 - std::log(pa.rho) / std::log(pa.dilation);
  pa.effective_exponent = std::min(pa.effective_exponent_raw, 1.0);
  Eigen::VectorXd v = es.eigenvectors().col(top).real();
  if (v.sum() < 0.0) v = -v;
  pa.length_eigenvector = v / v.sum();
  return pa;
}

PseudoAnosov pseudo_anosov_from_loop(const Permutation& perm, const std::vector<MoveType>& loop) {
  if (loop.empty()) throw Error(ErrorCode::NotPeriodicLoop, "empty loop");
  Permutation end;
  const Eigen::MatrixXi m = loop_matrix(perm, loop, &end);
  if (!(end == perm)) throw Error(ErrorCode::NotPeriodicLoop, "word does not return to the starting permutation");
  PseudoAnosov pa = pseudo_anosov_from_matrix(m);
  pa.perm = perm;
  pa.loop = loop;
  return pa;
}

PseudoAnosov find_periodic_loop(const Permutation& perm, int max_len) {
  for (int len = 1; len <= max_len; ++len)
    for (unsigned long bits = 0; bits < (1UL << len); ++bits) {
      std::vector<MoveType> w;
      for (int i = len - 1; i >= 0; --i) w.push_back((bits >> i) & 1UL ? MoveType::Bottom : MoveType::Top);
      Permutation end;
      const Eigen::MatrixXi m = loop_matrix(perm, w, &end);
      if (!(end == perm) || !is_primitive(m)) continue;
      return pseudo_anosov_from_loop(perm, w);
    }
  throw Error(ErrorCode::NotPeriodicLoop, "no Perron loop up to the length bound");
}

}  // namespace flatline
