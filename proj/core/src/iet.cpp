#include "flatline/iet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "flatline/error.hpp"

namespace flatline {

bool Permutation::irreducible() const {
  const int d = size();
  std::vector<char> seen_top(static_cast<std::size_t>(d), 0), seen_bottom(static_cast<std::size_t>(d), 0);
  int common = 0;
  for (int k = 0; k + 1 < d; ++k) {
    const int a = top[static_cast<std::size_t>(k)], b = bottom[static_cast<std::size_t>(k)];
    if (seen_bottom[static_cast<std::size_t>(a)]) ++common;
    seen_top[static_cast<std::size_t>(a)] = 1;
    if (seen_top[static_cast<std::size_t>(b)]) ++common;
    seen_bottom[static_cast<std::size_t>(b)] = 1;
    if (common == k + 1) return false;
  }
  return true;
}

Permutation Permutation::parse(const std::string& text) {
  auto read_row = [&](const std::string& part) {
    std::vector<int> row;
    std::stringstream ss(part);
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stoi(tok, &used) - 1);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (...) {
        throw Error(ErrorCode::ConfigParse, "bad permutation entry '" + tok + "'");
      }
    }
    return row;
  };
  Permutation p;
  if (const auto bar = text.find('|'); bar != std::string::npos) {
    p.top = read_row(text.substr(0, bar));
    p.bottom = read_row(text.substr(bar + 1));
  } else {
    p.bottom = read_row(text);
    p.top.resize(p.bottom.size());
    std::iota(p.top.begin(), p.top.end(), 0);
  }
  const int d = p.size();
  auto check = [&](std::vector<int> row) {
    std::sort(row.begin(), row.end());
    for (int k = 0; k < d; ++k)
      if (row[static_cast<std::size_t>(k)] != k) return false;
    return true;
  };
  if (d < 2 || static_cast<int>(p.bottom.size()) != d || !check(p.top) || !check(p.bottom))
    throw Error(ErrorCode::ConfigParse, "permutation rows must both list 1..d");
  if (!p.irreducible()) throw Error(ErrorCode::InvalidArgument, "permutation is reducible");
  return p;
}

Permutation Permutation::reversal(int d) {
  Permutation p;
  for (int k = 0; k < d; ++k) {
    p.top.push_back(k);
    p.bottom.push_back(d - 1 - k);
  }
  return p;
}

std::string Permutation::str() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < top.size(); ++k) out << (k ? " " : "") << top[k] + 1;
  out << " |";
  for (int b : bottom) out << " " << b + 1;
  return out.str();
}

const char* to_string(MoveType t) { return t == MoveType::Top ? "top" : "bottom"; }

Eigen::MatrixXi RauzyBatch::matrix() const {
  const auto d = loser_counts.size();
  Eigen::MatrixXi m = Eigen::MatrixXi::Identity(d, d);
  m.row(winner) += loser_counts.transpose();
  return m;
}

double Iet::total() const { return std::accumulate(lengths.begin(), lengths.end(), 0.0); }

void Iet::normalize() {
  const double t = total();
  for (double& l : lengths) l /= t;
  log_scale -= std::log(t);
}

Iet make_iet(const Permutation& perm, std::vector<double> lengths) {
  if (static_cast<int>(lengths.size()) != perm.size())
    throw Error(ErrorCode::InvalidArgument, "length vector does not match the permutation");
  if (!perm.irreducible()) throw Error(ErrorCode::InvalidArgument, "permutation is reducible");
  for (double l : lengths)
    if (!(l > 0.0)) throw Error(ErrorCode::InvalidArgument, "IET lengths must be positive");
  Iet iet{std::move(lengths), perm, 0.0};
  iet.normalize();
  iet.log_scale = 0.0;
  return iet;
}

namespace {

bool is_tie(double a, double b) { return std::abs(a - b) <= kKeaneTol * std::max(a, b); }

// Moves the last label of `row` to just after `anchor`.
void rotate_after(std::vector<int>& row, int anchor) {
  const int last = row.back();
  row.pop_back();
  const auto pos = std::find(row.begin(), row.end(), anchor);
  row.insert(pos + 1, last);
}

}  // namespace

Permutation rauzy_move_permutation(const Permutation& p, MoveType type) {
  Permutation q = p;
  if (type == MoveType::Top)
    rotate_after(q.bottom, q.top.back());
  else
    rotate_after(q.top, q.bottom.back());
  return q;
}

RauzyMove rauzy_step(Iet& iet) {
  auto& L = iet.lengths;
  const int t = iet.perm.top.back(), b = iet.perm.bottom.back();
  const double lt = L[static_cast<std::size_t>(t)], lb = L[static_cast<std::size_t>(b)];
  if (is_tie(lt, lb)) throw Error(ErrorCode::KeaneViolation, "last top and bottom intervals have equal length");
  RauzyMove mv;
  mv.type = lt > lb ? MoveType::Top : MoveType::Bottom;
  mv.winner = lt > lb ? t : b;
  mv.loser = lt > lb ? b : t;
  L[static_cast<std::size_t>(mv.winner)] -= L[static_cast<std::size_t>(mv.loser)];
  iet.perm = rauzy_move_permutation(iet.perm, mv.type);
  const int d = iet.size();
  mv.matrix = Eigen::MatrixXi::Identity(d, d);
  mv.matrix(mv.winner, mv.loser) += 1;
  return mv;
}

RauzyBatch zorich_step(Iet& iet) {
  auto& L = iet.lengths;
  const int d = iet.size();
  const int t = iet.perm.top.back(), b = iet.perm.bottom.back();
  const double lt = L[static_cast<std::size_t>(t)], lb = L[static_cast<std::size_t>(b)];
  if (is_tie(lt, lb)) throw Error(ErrorCode::KeaneViolation, "last top and bottom intervals have equal length");

  RauzyBatch batch;
  batch.type = lt > lb ? MoveType::Top : MoveType::Bottom;
  batch.winner = lt > lb ? t : b;
  batch.loser_counts = Eigen::VectorXi::Zero(d);
  // The winner stays last in its row; the losers cycle through the block
  // after the winner in the other row.
  std::vector<int>& other = batch.type == MoveType::Top ? iet.perm.bottom : iet.perm.top;
  const auto wpos = std::find(other.begin(), other.end(), batch.winner) - other.begin();
  const std::vector<int> block(other.begin() + wpos + 1, other.end());
  double& lw = L[static_cast<std::size_t>(batch.winner)];

  double block_sum = 0.0;
  for (int l : block) block_sum += L[static_cast<std::size_t>(l)];
  const double cycles = std::floor(lw / block_sum) - 1.0;
  if (cycles >= 1.0) {
    if (cycles > 1e9) throw Error(ErrorCode::KeaneViolation, "Zorich run too long (near-rational lengths)");
    const int c = static_cast<int>(cycles);
    lw -= cycles * block_sum;
    for (int l : block) batch.loser_counts[l] += c;
    batch.moves += c * static_cast<int>(block.size());
  }
  while (true) {
    const int loser = other.back();
    const double ll = L[static_cast<std::size_t>(loser)];
    if (is_tie(lw, ll) || lw < ll) break;
    lw -= ll;
    rotate_after(other, batch.winner);
    batch.loser_counts[loser] += 1;
    ++batch.moves;
  }
  if (batch.moves == 0) throw Error(ErrorCode::KeaneViolation, "empty Zorich run");
  iet.normalize();
  return batch;
}

std::vector<Permutation> rauzy_class(const Permutation& p) {
  std::vector<Permutation> out{p};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (MoveType mt : {MoveType::Top, MoveType::Bottom}) {
      Permutation q = rauzy_move_permutation(out[i], mt);
      if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
  return out;
}

}  // namespace flatline
