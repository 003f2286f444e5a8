#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace flatline {

// Exact fraction with 64-bit parts, always stored in lowest terms with a
// positive denominator. Used for file input and billiard angle data.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  // Accepts "p/q", integers and finite decimals ("0.25").
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const = default;
  bool operator<(const Rational& o) const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

// Best rational approximation with denominator at most `max_den`
// (continued-fraction convergents and semiconvergents).
Rational rationalize(double value, std::int64_t max_den);

}  // namespace flatline
