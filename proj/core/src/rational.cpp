#include "flatline/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "flatline/error.hpp"

namespace flatline {

__extension__ using Wide = __int128;

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return std::abs(a / gcd64(a, b) * b);
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = gcd64(num, den);
  num_ = g ? num / g : 0;
  den_ = g ? den / g : 1;
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw Error(ErrorCode::ConfigParse, "empty number");

  auto parse_int = [&](std::string_view s) -> std::int64_t {
    s = trim(s);
    std::string buf(s);
    char* end = nullptr;
    const long long v = std::strtoll(buf.c_str(), &end, 10);
    if (buf.empty() || end != buf.c_str() + buf.size())
      throw Error(ErrorCode::ConfigParse, "not an integer: '" + buf + "'");
    return v;
  };

  if (const auto slash = text.find('/'); slash != std::string_view::npos)
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));

  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 15) throw Error(ErrorCode::ConfigParse, "too many decimals: " + std::string(text));
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::string digits(text.substr(0, dot));
    const bool negative = !digits.empty() && digits.front() == '-';
    const std::int64_t ip = (digits.empty() || digits == "-" || digits == "+") ? 0 : parse_int(digits);
    const std::int64_t fp = frac.empty() ? 0 : parse_int(frac);
    if (fp < 0) throw Error(ErrorCode::ConfigParse, "bad decimal: " + std::string(text));
    const std::int64_t num = std::abs(ip) * den + fp;
    return Rational(negative ? -num : num, den);
  }
  return Rational(parse_int(text));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
  const std::int64_t l = lcm64(den_, o.den_);
  return Rational(num_ * (l / den_) + o.num_ * (l / o.den_), l);
}
Rational Rational::operator-(const Rational& o) const { return *this + Rational(-o.num_, o.den_); }
Rational Rational::operator*(const Rational& o) const {
  const std::int64_t g1 = gcd64(num_, o.den_) ? gcd64(num_, o.den_) : 1;
  const std::int64_t g2 = gcd64(o.num_, den_) ? gcd64(o.num_, den_) : 1;
  return Rational((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
}
Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
  return *this * Rational(o.den_, o.num_);
}
bool Rational::operator<(const Rational& o) const {
  return static_cast<Wide>(num_) * o.den_ < static_cast<Wide>(o.num_) * den_;
}

Rational rationalize(double value, std::int64_t max_den) {
  // Stern-Brocot style search over convergents.
  const double sign = value < 0 ? -1.0 : 1.0;
  double x = std::abs(value);
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(r);
    if (a_d > 1e15) break;
    const auto a = static_cast<std::int64_t>(a_d);
    const std::int64_t q2 = a * q1 + q0;
    if (q2 > max_den) {
      // Best semiconvergent within the bound.
      const std::int64_t k = (max_den - q0) / q1;
      const std::int64_t ps = k * p1 + p0, qs = k * q1 + q0;
      if (k > 0 && std::abs(x - static_cast<double>(ps) / qs) < std::abs(x - static_cast<double>(p1) / q1)) {
        p1 = ps;
        q1 = qs;
      }
      break;
    }
    const std::int64_t p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = r - a_d;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return Rational(static_cast<std::int64_t>(sign) * p1, q1);
}

}  // namespace flatline
