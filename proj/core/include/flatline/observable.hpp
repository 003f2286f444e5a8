#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flatline/geometry.hpp"
#include "flatline/surface.hpp"

namespace flatline {

// coeff * x^px * y^py * exp(i (wx x + wy y)) in polygon chart coordinates.
struct ObservableTerm {
  Complex coeff{1.0, 0.0};
  int px = 0;
  int py = 0;
  double wx = 0.0;
  double wy = 0.0;
};

// Finite sum of chart monomials times plane waves. Each polygon is its own
// chart, so the function is smooth inside polygons and may jump across edges.
class Observable {
 public:
  Observable() = default;
  explicit Observable(std::vector<ObservableTerm> terms, std::string text = {});

  // Expression grammar: numbers, x, y, pi, i, + - * / ^ (integer powers),
  // parentheses, cos(), sin(), exp(). Trigonometric and exponential arguments
  // must be affine in x and y (purely imaginary inside exp, up to a constant).
  static Observable parse(std::string_view text);
  static Observable constant(Complex c);

  const std::vector<ObservableTerm>& terms() const { return terms_; }
  const std::string& text() const { return text_; }
  bool is_real() const;

  Complex evaluate(Vec2 p) const;
  // Integral of exp(i omega s) f(p + s u) over s in [0, len].
  Complex segment_integral(Vec2 p, Vec2 u, double len, double omega) const;

  // Surface integral over s divided by its area.
  Complex mean(const TranslationSurface& s) const;
  double l2_norm_squared(const TranslationSurface& s) const;
  // Same function minus its mean; flagged zero-mean.
  Observable centered(const TranslationSurface& s) const;
  bool zero_mean() const { return zero_mean_; }
  // True if |mean| is below `tol` on s.
  bool has_zero_mean(const TranslationSurface& s, double tol = 1e-10) const;

  Observable operator+(const Observable& o) const;
  Observable operator*(const Observable& o) const;
  Observable operator*(Complex c) const;

 private:
  void simplify();

  std::vector<ObservableTerm> terms_;
  std::string text_;
  bool zero_mean_ = false;
};

}  // namespace flatline
