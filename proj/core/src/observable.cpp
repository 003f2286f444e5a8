#include "flatline/observable.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <tuple>

#include "flatline/error.hpp"

namespace flatline {

namespace {

constexpr double kCoeffDrop = 1e-15;
constexpr int kQuadOrder = 24;

struct GaussLegendre {
  std::array<double, kQuadOrder> x{};
  std::array<double, kQuadOrder> w{};
  GaussLegendre() {
    const int n = kQuadOrder;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[static_cast<std::size_t>(i)] = 0.5 * (1.0 - z);  // mapped to [0, 1]
      w[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

const GaussLegendre& gauss() {
  static const GaussLegendre g;
  return g;
}

// Integral of s^m exp(i omega s) over [0, len] for m = 0..max_m.
std::vector<Complex> moment_integrals(double omega, double len, int max_m) {
  std::vector<Complex> out(static_cast<std::size_t>(max_m + 1));
  const double wl = omega * len;
  if (std::abs(wl) < std::max(1.0, static_cast<double>(max_m))) {
    for (int m = 0; m <= max_m; ++m) {
      Complex sum{0.0, 0.0};
      Complex term{std::pow(len, m + 1), 0.0};  // (i omega)^n / n! * len^(m+n+1)
      for (int n = 0; n < 200; ++n) {
        const Complex add = term / static_cast<double>(m + n + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum) && n > 2) break;
        term *= Complex(0.0, wl) / static_cast<double>(n + 1);
      }
      out[static_cast<std::size_t>(m)] = sum;
    }
    return out;
  }
  const Complex iw(0.0, omega);
  const Complex e = std::exp(Complex(0.0, wl));
  out[0] = (e - 1.0) / iw;
  for (int m = 1; m <= max_m; ++m)
    out[static_cast<std::size_t>(m)] = (std::pow(len, m) * e - static_cast<double>(m) * out[static_cast<std::size_t>(m - 1)]) / iw;
  return out;
}

// Coefficients of (a + b s)^n in powers of s.
std::vector<double> binomial_expand(double a, double b, int n) {
  std::vector<double> c(static_cast<std::size_t>(n + 1), 0.0);
  c[0] = 1.0;
  for (int k = 0; k < n; ++k)
    for (int j = k + 1; j >= 0; --j)
      c[static_cast<std::size_t>(j)] = a * c[static_cast<std::size_t>(j)] + (j > 0 ? b * c[static_cast<std::size_t>(j - 1)] : 0.0);
  return c;
}

// ---- expression parser ----

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Observable parse() {
    Observable v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ConfigParse, "observable '" + std::string(text_) + "': " + msg);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool starts_primary() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '.';
  }

  Observable expr() {
    Observable v = term();
    while (true) {
      if (accept('+'))
        v = v + term();
      else if (accept('-'))
        v = v + term() * Complex(-1.0, 0.0);
      else
        return v;
    }
  }

  Observable term() {
    Observable v = unary();
    while (true) {
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        const Observable d = unary();
        const auto& t = d.terms();
        if (t.size() != 1 || t[0].px || t[0].py || t[0].wx != 0.0 || t[0].wy != 0.0 || std::abs(t[0].coeff) == 0.0)
          fail("division only by nonzero constants");
        v = v * (1.0 / t[0].coeff);
      } else if (starts_primary()) {
        v = v * unary();
      } else {
        return v;
      }
    }
  }

  Observable unary() {
    if (accept('-')) return unary() * Complex(-1.0, 0.0);
    if (accept('+')) return unary();
    return power();
  }

  Observable power() {
    Observable base = primary();
    if (!accept('^')) return base;
    skip_ws();
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(std::string(text_.substr(pos_)), &used);
    } catch (...) {
      fail("exponent must be a nonnegative integer");
    }
    if (n < 0 || n > 16) fail("exponent must be in 0..16");
    pos_ += used;
    Observable out = Observable::constant(1.0);
    for (int k = 0; k < n; ++k) out = out * base;
    return out;
  }

  Observable primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Observable v = expr();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      const double v = std::stod(std::string(text_.substr(pos_)), &used);
      pos_ += used;
      return Observable::constant(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
      const std::string name(text_.substr(pos_, end - pos_));
      pos_ = end;
      if (name == "x") return Observable({ObservableTerm{{1.0, 0.0}, 1, 0, 0.0, 0.0}});
      if (name == "y") return Observable({ObservableTerm{{1.0, 0.0}, 0, 1, 0.0, 0.0}});
      if (name == "pi") return Observable::constant(M_PI);
      if (name == "i") return Observable::constant(Complex(0.0, 1.0));
      if (name == "cos" || name == "sin" || name == "exp") {
        if (!accept('(')) fail("expected '(' after " + name);
        const Observable arg = expr();
        if (!accept(')')) fail("missing ')'");
        return apply(name, arg);
      }
      fail("unknown identifier '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  // Affine argument c0 + cx x + cy y.
  std::array<Complex, 3> affine(const Observable& arg) const {
    std::array<Complex, 3> a{};
    for (const auto& t : arg.terms()) {
      if (t.wx != 0.0 || t.wy != 0.0 || t.px + t.py > 1) fail("function argument must be affine in x, y");
      a[static_cast<std::size_t>(t.px ? 1 : t.py ? 2 : 0)] += t.coeff;
    }
    return a;
  }

  Observable apply(const std::string& name, const Observable& arg) const {
    const auto a = affine(arg);
    if (name == "exp") {
      if (std::abs(a[1].real()) > 1e-14 || std::abs(a[2].real()) > 1e-14)
        fail("exp argument must be imaginary in x, y");
      return Observable({ObservableTerm{std::exp(a[0]), 0, 0, a[1].imag(), a[2].imag()}});
    }
    for (const auto& z : a)
      if (std::abs(z.imag()) > 1e-14) fail(name + " argument must be real");
    const double c0 = a[0].real(), cx = a[1].real(), cy = a[2].real();
    const Complex ep = std::exp(Complex(0.0, c0)), em = std::exp(Complex(0.0, -c0));
    if (name == "cos")
      return Observable({ObservableTerm{0.5 * ep, 0, 0, cx, cy}, ObservableTerm{0.5 * em, 0, 0, -cx, -cy}});
    return Observable({ObservableTerm{ep / Complex(0.0, 2.0), 0, 0, cx, cy}, ObservableTerm{-em / Complex(0.0, 2.0), 0, 0, -cx, -cy}});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Observable::Observable(std::vector<ObservableTerm> terms, std::string text) : terms_(std::move(terms)), text_(std::move(text)) {
  simplify();
}

Observable Observable::parse(std::string_view text) {
  Observable v = Parser(text).parse();
  v.text_ = std::string(text);
  return v;
}

Observable Observable::constant(Complex c) { return Observable({ObservableTerm{c, 0, 0, 0.0, 0.0}}); }

void Observable::simplify() {
  std::map<std::tuple<int, int, double, double>, Complex> acc;
  for (const auto& t : terms_) acc[{t.px, t.py, t.wx, t.wy}] += t.coeff;
  terms_.clear();
  for (const auto& [k, c] : acc)
    if (std::abs(c) > kCoeffDrop) terms_.push_back({c, std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k)});
}

bool Observable::is_real() const {
  // A real function has every wave paired with its conjugate.
  for (const auto& t : terms_) {
    bool paired = false;
    for (const auto& u : terms_)
      if (u.px == t.px && u.py == t.py && u.wx == -t.wx && u.wy == -t.wy && std::abs(u.coeff - std::conj(t.coeff)) < 1e-12)
        paired = true;
    if (!paired) return false;
  }
  return true;
}

Complex Observable::evaluate(Vec2 p) const {
  Complex sum{0.0, 0.0};
  for (const auto& t : terms_)
    sum += t.coeff * std::pow(p.x, t.px) * std::pow(p.y, t.py) * std::exp(Complex(0.0, t.wx * p.x + t.wy * p.y));
  return sum;
}

Complex Observable::segment_integral(Vec2 p, Vec2 u, double len, double omega) const {
  Complex sum{0.0, 0.0};
  for (const auto& t : terms_) {
    const auto cx = binomial_expand(p.x, u.x, t.px);
    const auto cy = binomial_expand(p.y, u.y, t.py);
    const int deg = t.px + t.py;
    const double freq = omega + t.wx * u.x + t.wy * u.y;
    const auto moments = moment_integrals(freq, len, deg);
    Complex poly{0.0, 0.0};
    for (int a = 0; a <= t.px; ++a)
      for (int b = 0; b <= t.py; ++b)
        poly += cx[static_cast<std::size_t>(a)] * cy[static_cast<std::size_t>(b)] * moments[static_cast<std::size_t>(a + b)];
    sum += t.coeff * std::exp(Complex(0.0, t.wx * p.x + t.wy * p.y)) * poly;
  }
  return sum;
}

namespace {

template <class F>
Complex surface_quadrature(const TranslationSurface& s, F&& f) {
  const auto& g = gauss();
  Complex total{0.0, 0.0};
  for (const auto& poly : s.polygons()) {
    const Vec2 p0 = poly.vertex(0);
    for (std::size_t j = 1; j + 1 < poly.size(); ++j) {
      const Vec2 e1 = poly.vertex(j) - p0, e2 = poly.vertex(j + 1) - p0;
      const double jac = cross(e1, e2);
      // Collapsed square (u, v) -> (u, u v) on the reference triangle.
      for (int a = 0; a < kQuadOrder; ++a)
        for (int b = 0; b < kQuadOrder; ++b) {
          const double u = g.x[static_cast<std::size_t>(a)], v = g.x[static_cast<std::size_t>(b)];
          const double w = g.w[static_cast<std::size_t>(a)] * g.w[static_cast<std::size_t>(b)] * u;
          const Vec2 q = p0 + e1 * (u * (1.0 - v)) + e2 * (u * v);
          total += w * jac * f(q);
        }
    }
  }
  return total;
}

}  // namespace

Complex Observable::mean(const TranslationSurface& s) const {
  return surface_quadrature(s, [&](Vec2 q) { return evaluate(q); }) / s.area();
}

double Observable::l2_norm_squared(const TranslationSurface& s) const {
  return surface_quadrature(s, [&](Vec2 q) { return Complex(std::norm(evaluate(q)), 0.0); }).real() / s.area();
}

Observable Observable::centered(const TranslationSurface& s) const {
  Observable out = *this + constant(-mean(s));
  out.text_ = text_.empty() ? std::string{} : "(" + text_ + ") - mean";
  out.zero_mean_ = true;
  return out;
}

bool Observable::has_zero_mean(const TranslationSurface& s, double tol) const {
  double scale = 0.0;
  for (const auto& t : terms_) scale = std::max(scale, std::abs(t.coeff));
  return std::abs(mean(s)) <= tol * std::max(1.0, scale);
}

Observable Observable::operator+(const Observable& o) const {
  std::vector<ObservableTerm> t = terms_;
  t.insert(t.end(), o.terms_.begin(), o.terms_.end());
  return Observable(std::move(t));
}

Observable Observable::operator*(const Observable& o) const {
  std::vector<ObservableTerm> t;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) t.push_back({a.coeff * b.coeff, a.px + b.px, a.py + b.py, a.wx + b.wx, a.wy + b.wy});
  return Observable(std::move(t));
}

Observable Observable::operator*(Complex c) const {
  std::vector<ObservableTerm> t = terms_;
  for (auto& a : t) a.coeff *= c;
  return Observable(std::move(t));
}

}  // namespace flatline
